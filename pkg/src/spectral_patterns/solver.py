"""Solve ``phi_i(x) = tau_i`` for ``x1..x8`` as rational functions of ``tau0..tau7``.

The elimination is triangular: every step takes one unused equation that is
linear in some unsolved variable (with a coefficient that is not identically
zero), solves for it and substitutes the result everywhere.  Candidates are
tried in a fixed order and the search backtracks out of dead ends, i.e.
states where an unused equation no longer involves any unsolved variable.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .charpoly import MonicPoly, char_poly
from .errors import NotTriangular, Unrealizable, WrongArity
from .exactalg import TAU_CONTEXT, MultiPoly, RationalFunction, VariableContext, divides, lcm
from .exactalg.ratfunc import substitute_poly
from .exactalg.scalars import is_exact
from .pattern_s import (
    SymbolicPhi,
    XParams,
    build_X,
    phi_symbolic,
    scale_realization,
    witness_all_ones_spectrum,
    witness_nilpotent,
)

log = logging.getLogger(__name__)

__all__ = [
    "SolutionMap",
    "PiPolynomial",
    "ELIM_CONTEXT",
    "TAU_WEIGHTS",
    "solve_symbolic",
    "back_substitute",
    "build_pi",
    "solution",
    "pi_polynomial",
    "realize_coeffs",
    "signed_elementary",
    "vieta_coeffs",
    "psi",
    "realize_spectrum_S",
]

X_NAMES = tuple(f"x{i}" for i in range(1, 9))
TAU_NAMES = tuple(f"tau{i}" for i in range(8))
ELIM_CONTEXT = VariableContext(X_NAMES + TAU_NAMES)
# weight 8 - i on tau_i: s_k has degree k in the spectrum
TAU_WEIGHTS = {f"tau{i}": 8 - i for i in range(8)}
FLOAT_REL_TOL = 1e-9


@dataclass(frozen=True)
class SolutionMap:
    """``x_k = values[k-1]`` over ``tau0..tau7``; ``trace`` lists ``(equation, variable)`` steps."""

    values: tuple[RationalFunction, ...]
    trace: tuple[tuple[int, str], ...]

    def __getitem__(self, name: str) -> RationalFunction:
        return self.values[X_NAMES.index(name)]

    def items(self):
        return zip(X_NAMES, self.values)

    def contributing(self) -> list[MultiPoly]:
        """The 16 numerators and denominators, x1 numerator first."""
        out = []
        for rf in self.values:
            out.extend((rf.num, rf.den))
        return out


@dataclass(frozen=True)
class PiPolynomial:
    pi: MultiPoly
    provenance: tuple[MultiPoly, ...] = field(repr=False)

    def weighted_degree(self, weights=None) -> int:
        return self.pi.weighted_degree(TAU_WEIGHTS if weights is None else weights)


def _lift_phi(phi: SymbolicPhi) -> list[MultiPoly]:
    taus = [MultiPoly.var(ELIM_CONTEXT, n) for n in TAU_NAMES]
    return [phi[i].to_context(ELIM_CONTEXT) - taus[i] for i in range(8)]


def _unsolved_vars(p: MultiPoly, solved) -> list[str]:
    return [v for v in p.variables() if v.startswith("x") and v not in solved]


def solve_symbolic(phi: SymbolicPhi | None = None) -> SolutionMap:
    """Triangular elimination of ``phi_i = tau_i``; raises :class:`NotTriangular` on failure."""
    phi = phi or phi_symbolic()
    eqs = {i: e for i, e in enumerate(_lift_phi(phi))}
    result = _search(eqs, {}, ())
    if result is None:
        raise NotTriangular("no triangular elimination order exists for phi_i = tau_i")
    sol, trace = result
    values = tuple(sol[v].to_context(TAU_CONTEXT) for v in X_NAMES)
    return SolutionMap(values, trace)


def _candidates(eqs: dict[int, MultiPoly], solved) -> list[tuple[int, str]] | None:
    found = []
    for i in sorted(eqs, reverse=True):
        e = eqs[i]
        free = _unsolved_vars(e, solved)
        if not free:
            if not e.is_zero():
                return None  # a relation among the tau alone: dead end
            continue
        for v in X_NAMES:
            if v in free and e.degree(v) == 1:
                found.append((len(free), 7 - i, X_NAMES.index(v), i, v))
    found.sort()
    return [(i, v) for *_, i, v in found]


def _search(eqs, sol, trace):
    if len(sol) == 8:
        return sol, trace
    cands = _candidates(eqs, sol)
    if not cands:
        return None
    for i, v in cands:
        coeffs = eqs[i].coefficients_in(v)
        a = coeffs.get(1)
        if a is None or a.is_zero():
            continue
        b = coeffs.get(0, MultiPoly.zero(ELIM_CONTEXT))
        value = RationalFunction(-b, a)
        new_sol = {k: rf.substitute(v, value) for k, rf in sol.items()}
        new_sol[v] = value
        new_eqs = {j: substitute_poly(e, v, value).num for j, e in eqs.items() if j != i}
        log.debug("eliminate %s from phi%d", v, i)
        found = _search(new_eqs, new_sol, trace + ((i, v),))
        if found is not None:
            return found
        log.debug("backtrack from %s via phi%d", v, i)
    return None


def back_substitute(sm: SolutionMap, phi: SymbolicPhi | None = None) -> list[RationalFunction]:
    """``phi_i`` with the solution plugged in; each entry should equal ``tau_i``."""
    phi = phi or phi_symbolic()
    lifted = [sm[v].to_context(ELIM_CONTEXT) for v in X_NAMES]
    out = []
    for i in range(8):
        rf = RationalFunction.from_poly(phi[i].to_context(ELIM_CONTEXT))
        for name, value in zip(X_NAMES, lifted):
            rf = rf.substitute(name, value)
        out.append(rf.to_context(TAU_CONTEXT))
    return out


def build_pi(sm: SolutionMap) -> PiPolynomial:
    """LCM of all numerators and denominators of the solution, leading coefficient 1."""
    parts = tuple(sm.contributing())
    nonconst = [p for p in parts if not p.is_constant()]
    # the largest inputs go first so the others are mostly absorbed by trial division
    nonconst.sort(key=len, reverse=True)
    pi = lcm(nonconst) if nonconst else MultiPoly.constant(TAU_CONTEXT, 1)
    for p in parts:
        assert divides(p, pi)
    return PiPolynomial(pi, parts)


_lock = threading.Lock()
_solution: SolutionMap | None = None
_pi: PiPolynomial | None = None


def solution() -> SolutionMap:
    global _solution
    if _solution is None:
        with _lock:
            if _solution is None:
                _solution = solve_symbolic()
    return _solution


def pi_polynomial() -> PiPolynomial:
    global _pi
    if _pi is None:
        sm = solution()
        with _lock:
            if _pi is None:
                _pi = build_pi(sm)
    return _pi


def _magnitude(p: MultiPoly, point: Sequence) -> float:
    mags = [abs(complex(v)) for v in point]
    total = 0.0
    for e, c in p.raw.items():
        term = abs(float(c))
        for m, k in zip(mags, e):
            if k:
                term *= m ** k
        total += term
    return total


def _vanishes(p: MultiPoly, value, point) -> bool:
    if is_exact(value):
        return value == 0
    return abs(value) < FLOAT_REL_TOL * max(_magnitude(p, point), 1e-300)


def _as_point(tau) -> list:
    if isinstance(tau, MonicPoly):
        tau = tau.coeffs
    tau = list(tau)
    if len(tau) != 8:
        raise WrongArity(f"expected 8 coefficients tau0..tau7, got {len(tau)}")
    return [Fraction(v) if isinstance(v, int) else v for v in tau]


def realize_coeffs(tau, *, verify: bool = True) -> XParams:
    """Parameters with ``char_poly(X) = t^8 + tau7 t^7 + ... + tau0``.

    Raises :class:`Unrealizable` naming the first numerator or denominator
    that vanishes at ``tau``.
    """
    point = _as_point(tau)
    sm = solution()
    values = []
    for name, rf in sm.items():
        d = rf.den.evaluate(point)
        if _vanishes(rf.den, d, point):
            raise Unrealizable(f"denominator of {name} vanishes")
        n = rf.num.evaluate(point)
        if _vanishes(rf.num, n, point):
            raise Unrealizable(f"numerator of {name} vanishes ({name} = 0)")
        values.append(n / d)
    params = XParams(tuple(values))
    if verify:
        got = char_poly(build_X(params))
        target = MonicPoly(tuple(point))
        if not got.matches(target, FLOAT_REL_TOL):
            raise Unrealizable("round-trip characteristic polynomial mismatch")
    return params


def signed_elementary(sigma: Sequence) -> list:
    """``[s_1, ..., s_n]`` with ``s_k = (-1)^k e_k(sigma)``."""
    e = [Fraction(1)] + [0] * len(sigma)
    for z in sigma:
        for k in range(len(sigma), 0, -1):
            e[k] = e[k] + e[k - 1] * z
    return [(-1) ** k * e[k] for k in range(1, len(sigma) + 1)]


def vieta_coeffs(sigma: Sequence) -> list:
    """``tau0..tau7`` of ``prod (t - sigma_j)``: ``tau_{8-k} = s_k``."""
    if len(sigma) != 8:
        raise WrongArity(f"expected 8 values, got {len(sigma)}")
    s = signed_elementary(sigma)
    return [s[8 - i - 1] for i in range(8)]


def psi(sigma: Sequence):
    """``pi(s_8, s_7, ..., s_1)``: nonzero means ``sigma`` is a spectrum of some ``X``."""
    return pi_polynomial().pi.evaluate(vieta_coeffs(list(sigma)))


def realize_spectrum_S(sigma: Sequence) -> XParams:
    """Parameters whose matrix ``X`` has spectrum ``sigma`` (8 values, with multiplicity)."""
    sigma = list(sigma)
    if len(sigma) != 8:
        raise WrongArity(f"expected 8 values, got {len(sigma)}")
    tau = vieta_coeffs(sigma)
    try:
        return realize_coeffs(tau)
    except Unrealizable as exc:
        c = sigma[0]
        if any(z != c for z in sigma):
            raise
        if c == 0:
            params = witness_nilpotent()
        else:
            params = scale_realization(witness_all_ones_spectrum(), c)
        log.debug("constant spectrum %s realized by the scaled witness (%s)", c, exc.reason)
    if not char_poly(build_X(params)).matches(MonicPoly(tuple(tau)), FLOAT_REL_TOL):
        raise Unrealizable("scaled witness failed verification")
    return params
