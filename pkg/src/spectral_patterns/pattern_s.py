"""The 8x8 zero pattern S with 15 nonzero positions and its normal form X.

Every matrix with pattern S is diagonally similar to ``X(x1, ..., x8)``::

    x1  1   0   0   0   0   0   0
    x7  x2  1   0   0   0   0   0
    0   x3  0   1   0   0   0   0
    0   0   0   0   1   0   0   0
    0   0   0   0   0   1   0   0
    0   x8  0   0   0   0   1   0
    0   0   0   0   0   0   0   1
    x6  0   0   x5  0   x4  0   0
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .charpoly import MonicPoly, SquareMatrix, char_poly
from .errors import (
    CertificateFailed,
    NotDivisible,
    WrongPattern,
    ZeroChainEntry,
    ZeroParameter,
    ZeroScale,
)
from .exactalg import X_CONTEXT, MultiPoly, exact_div

__all__ = [
    "XParams",
    "ZeroPattern",
    "SymbolicPhi",
    "PATTERN_S",
    "PARAM_POSITIONS",
    "CHAIN_POSITIONS",
    "build_X",
    "build_X_symbolic",
    "phi_symbolic",
    "obstruction_certificate",
    "witness_nilpotent",
    "witness_all_ones_spectrum",
    "normalize_to_X",
    "normalize_with_diagonal",
    "scale_realization",
]

# 1-based (row, col) of each parameter, in order x1..x8
PARAM_POSITIONS: tuple[tuple[int, int], ...] = (
    (1, 1), (2, 2), (3, 2), (8, 6), (8, 4), (8, 1), (2, 1), (6, 2),
)
CHAIN_POSITIONS: tuple[tuple[int, int], ...] = tuple((i, i + 1) for i in range(1, 8))


@dataclass(frozen=True)
class ZeroPattern:
    """Support set of an ``n x n`` zero pattern, stored 0-based."""

    n: int
    support: frozenset

    def __post_init__(self):
        support = frozenset((int(r), int(c)) for r, c in self.support)
        for r, c in support:
            if not (0 <= r < self.n and 0 <= c < self.n):
                raise ValueError(f"position {(r + 1, c + 1)} outside a {self.n}x{self.n} pattern")
        object.__setattr__(self, "support", support)

    @classmethod
    def from_one_based(cls, n: int, positions: Iterable[Sequence[int]]) -> ZeroPattern:
        return cls(n, frozenset((r - 1, c - 1) for r, c in positions))

    @classmethod
    def full_blocks(cls, m: int) -> ZeroPattern:
        """``D_{2m}``: ``m`` full 2x2 blocks along the diagonal."""
        return cls(
            2 * m,
            frozenset((2 * k + i, 2 * k + j) for k in range(m) for i in (0, 1) for j in (0, 1)),
        )

    def __len__(self) -> int:
        return len(self.support)

    def one_based(self) -> list[list[int]]:
        return [[r + 1, c + 1] for r, c in sorted(self.support)]

    def matches(self, m: SquareMatrix) -> bool:
        return m.n == self.n and m.support() == self.support

    def blocks(self) -> list[tuple[int, int]]:
        """Finest splitting into consecutive diagonal blocks ``[start, stop)``."""
        reach = list(range(self.n))
        for r, c in self.support:
            lo, hi = min(r, c), max(r, c)
            reach[lo] = max(reach[lo], hi)
        out = []
        start, far = 0, 0
        for i in range(self.n):
            far = max(far, reach[i])
            if far == i:
                out.append((start, i + 1))
                start = i + 1
                far = i + 1
        return out

    def __str__(self) -> str:
        return "\n".join(
            " ".join("*" if (i, j) in self.support else "0" for j in range(self.n))
            for i in range(self.n)
        )


def block_diag_pattern(patterns: Sequence[ZeroPattern]) -> ZeroPattern:
    support = set()
    offset = 0
    for p in patterns:
        support.update((r + offset, c + offset) for r, c in p.support)
        offset += p.n
    return ZeroPattern(offset, frozenset(support))


PATTERN_S = ZeroPattern.from_one_based(8, PARAM_POSITIONS + CHAIN_POSITIONS)


@dataclass(frozen=True)
class XParams:
    """Values of ``x1..x8``; all must be nonzero."""

    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != 8:
            raise ValueError(f"expected 8 parameters, got {len(values)}")
        for i, v in enumerate(values, start=1):
            if v == 0:
                raise ZeroParameter(i)
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, *values) -> XParams:
        return cls(tuple(Fraction(v) if isinstance(v, (int, str)) else v for v in values))

    def __getitem__(self, i: int):
        """1-based access: ``p[1]`` is ``x1``."""
        return self.values[i - 1]

    def __iter__(self):
        return iter(self.values)

    def as_dict(self) -> dict:
        return {f"x{i}": v for i, v in enumerate(self.values, start=1)}


def build_X(p: XParams | Sequence) -> SquareMatrix:
    if not isinstance(p, XParams):
        p = XParams(tuple(p))
    rows = [[0] * 8 for _ in range(8)]
    for (r, c) in CHAIN_POSITIONS:
        rows[r - 1][c - 1] = 1
    for (r, c), v in zip(PARAM_POSITIONS, p.values):
        rows[r - 1][c - 1] = v
    return SquareMatrix(rows)


def build_X_symbolic() -> SquareMatrix:
    return build_X(XParams(tuple(X_CONTEXT.gens())))


@dataclass(frozen=True)
class SymbolicPhi:
    """Coefficients of ``det(tI - X) = t^8 + phi7 t^7 + ... + phi0`` in Q[x1..x8]."""

    coeffs: tuple[MultiPoly, ...]

    def __getitem__(self, i: int) -> MultiPoly:
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def evaluate(self, p: XParams | Sequence) -> MonicPoly:
        values = list(p)
        return MonicPoly(tuple(c.evaluate(values) for c in self.coeffs))


_phi_lock = threading.Lock()
_phi_cache: SymbolicPhi | None = None


def phi_symbolic() -> SymbolicPhi:
    """Symbolic characteristic polynomial coefficients, computed once."""
    global _phi_cache
    if _phi_cache is None:
        with _phi_lock:
            if _phi_cache is None:
                cp = char_poly(build_X_symbolic())
                _phi_cache = SymbolicPhi(
                    tuple(c if isinstance(c, MultiPoly) else MultiPoly.constant(X_CONTEXT, c) for c in cp.coeffs)
                )
    return _phi_cache


def obstruction_certificate() -> MultiPoly:
    """Return ``q`` with ``phi4 = q * phi7``: S cannot realize ``phi7 = 0`` with ``phi4 != 0``."""
    phi = phi_symbolic()
    if phi[7].is_zero():
        raise CertificateFailed("phi7 vanishes identically")
    try:
        q = exact_div(phi[4], phi[7])
    except NotDivisible as exc:
        raise CertificateFailed("phi7 does not divide phi4") from exc
    if q.is_zero() or q * phi[7] != phi[4]:
        raise CertificateFailed("quotient failed re-multiplication")
    return q


def witness_nilpotent() -> XParams:
    return XParams.of(1, -1, 1, 1, -1, 1, -2, 1)


def witness_all_ones_spectrum() -> XParams:
    """Parameters realizing ``(t - 1)^8``."""
    return XParams.of(
        "1737/848",
        "5047/848",
        "-4452/193",
        "35/4",
        "2/7",
        "25/2",
        "1007374319/138787072",
        "-1325/7",
    )


def normalize_with_diagonal(m: SquareMatrix) -> tuple[XParams, tuple]:
    """Return ``(params, d)`` with ``diag(d) M diag(d)^-1 = build_X(params)`` and ``d[0] = 1``."""
    if m.n != 8:
        raise WrongPattern(f"expected an 8x8 matrix, got {m.n}x{m.n}")
    support = m.support()
    if support != PATTERN_S.support:
        for r, c in CHAIN_POSITIONS:
            if m[r - 1, c - 1] == 0:
                raise ZeroChainEntry(f"chain entry ({r}, {c}) is zero")
        extra = sorted((r + 1, c + 1) for r, c in support - PATTERN_S.support)
        missing = sorted((r + 1, c + 1) for r, c in PATTERN_S.support - support)
        raise WrongPattern(f"support differs from S: extra {extra}, missing {missing}")
    d = [Fraction(1) if _exact(m[0, 0]) else 1.0]
    for r, c in CHAIN_POSITIONS:
        d.append(d[-1] * m[r - 1, c - 1])
    conj = m.diagonal_conjugate(d)
    params = XParams(tuple(conj[r - 1, c - 1] for r, c in PARAM_POSITIONS))
    return params, tuple(d)


def _exact(v) -> bool:
    return not isinstance(v, (float, complex))


def normalize_to_X(m: SquareMatrix) -> XParams:
    return normalize_with_diagonal(m)[0]


def scale_realization(p: XParams, c) -> XParams:
    """Parameters of the normal form of ``c * X(p)``; realizes ``c^8 f(t/c)`` if ``X(p)`` realizes ``f``."""
    if c == 0:
        raise ZeroScale("scale factor must be nonzero")
    if c == 1:
        return p
    return normalize_to_X(build_X(p).scale(c))
