"""Assemble ``diag(M, M')`` with pattern ``diag(S, D_2m)`` and a prescribed spectrum.

An 8-element subfamily of the spectrum goes onto S, the remaining ``2m``
values onto full 2x2 blocks.  With at least 102 distinct values some 8-subset
of them avoids the zero set of psi (a polynomial of total degree 94), so a
direct search succeeds; with fewer distinct values and ``|U| >= 708`` some
value repeats at least 8 times and ``(t - c)^8`` is realized on S instead.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .blocks import canonical_key, realize_D
from .charpoly import MonicPoly, SquareMatrix, block_diag, char_poly, poly_product
from .errors import BadCardinality, DimensionMismatch, SelectionFailed, Unrealizable, WrongArity
from .pattern_s import PATTERN_S, XParams, ZeroPattern, block_diag_pattern, build_X
from .solver import FLOAT_REL_TOL, realize_spectrum_S

log = logging.getLogger(__name__)

__all__ = [
    "GENERIC",
    "REPEATED",
    "DISTINCT_THRESHOLD",
    "SubsetSelection",
    "RealizationReport",
    "select_subset",
    "realize_full",
    "verify",
    "full_pattern",
]

GENERIC = "GenericSubset"
REPEATED = "RepeatedValue"
# total degree of psi plus the number of its arguments
DISTINCT_THRESHOLD = 94 + 8
DEFAULT_RETRIES = 10_000
WHOLE_MATRIX_MAX_N = 32


@dataclass(frozen=True)
class SubsetSelection:
    branch: str
    sigma: tuple
    remainder: tuple
    tried: int
    params: XParams = field(repr=False)


@dataclass(frozen=True)
class RealizationReport:
    matrix: SquareMatrix = field(repr=False)
    pattern: ZeroPattern = field(repr=False)
    pattern_ok: bool
    nonzero_count: int
    expected_nonzero: int
    block_polys: tuple = field(repr=False)
    assembled: MonicPoly = field(repr=False)
    target: MonicPoly = field(repr=False)
    poly_ok: bool
    whole_matrix_ok: bool | None = None
    selection: SubsetSelection | None = field(default=None, repr=False)
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (
            self.pattern_ok
            and self.nonzero_count == self.expected_nonzero
            and self.poly_ok
            and self.whole_matrix_ok is not False
        )


def _remove_once(values: Sequence, taken: Sequence) -> tuple:
    pending = Counter(taken)
    out = []
    for v in values:
        if pending[v]:
            pending[v] -= 1
        else:
            out.append(v)
    return tuple(out)


def _try(sigma: Sequence) -> XParams | None:
    try:
        return realize_spectrum_S(sigma)
    except Unrealizable:
        return None


def select_subset(
    U: Sequence,
    distinct_threshold: int = DISTINCT_THRESHOLD,
    *,
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
) -> SubsetSelection:
    """Choose the 8 eigenvalues that go onto S."""
    U = list(U)
    if len(U) < 8:
        raise WrongArity(f"need at least 8 values, got {len(U)}")
    counts = Counter(U)
    distinct = sorted(counts, key=canonical_key)
    repeated = [v for v in distinct if counts[v] >= 8]

    def repeated_branch(tried: int) -> SubsetSelection:
        c = repeated[0]
        sigma = (c,) * 8
        params = realize_spectrum_S(sigma)
        return SubsetSelection(REPEATED, sigma, _remove_once(U, sigma), tried, params)

    if len(distinct) < distinct_threshold and repeated:
        return repeated_branch(0)

    tried = 0
    if len(distinct) >= 8:
        greedy = sorted(distinct, key=lambda v: (-counts[v], canonical_key(v)))[:8]
        candidates = [sorted(greedy, key=canonical_key)]
        rng = random.Random(seed)
        while tried < retries:
            if not candidates:
                candidates.append(sorted(rng.sample(distinct, 8), key=canonical_key))
            sigma = tuple(candidates.pop())
            tried += 1
            params = _try(sigma)
            if params is not None:
                return SubsetSelection(GENERIC, sigma, _remove_once(U, sigma), tried, params)
    if repeated:
        return repeated_branch(tried)
    if len(distinct) >= distinct_threshold and len(U) >= 708:
        log.error("selection failed on an input covered by the existence argument")
        raise SelectionFailed(tried, "contradicts the degree-94 existence argument")
    raise SelectionFailed(tried, f"{len(distinct)} distinct values and no value repeated 8 times")


def full_pattern(m: int) -> ZeroPattern:
    """``diag(S, D_2m)``."""
    if m == 0:
        return PATTERN_S
    return block_diag_pattern([PATTERN_S, ZeroPattern.full_blocks(m)])


def realize_full(
    U: Sequence,
    *,
    seed: int = 0,
    retries: int = DEFAULT_RETRIES,
    distinct_threshold: int = DISTINCT_THRESHOLD,
) -> RealizationReport:
    """Matrix with pattern ``diag(S, D_2m)`` and spectrum ``U``, verified."""
    U = list(U)
    if len(U) < 8 or (len(U) - 8) % 2:
        raise BadCardinality(f"|U| must be 8 + 2m, got {len(U)}")
    sel = select_subset(U, distinct_threshold, seed=seed, retries=retries)
    blocks = [build_X(sel.params)]
    if sel.remainder:
        blocks.append(realize_D(sel.remainder))
    matrix = block_diag(blocks)
    report = verify(matrix, full_pattern(len(sel.remainder) // 2), MonicPoly.from_roots(U))
    return RealizationReport(**{**report.__dict__, "selection": sel})


def verify(
    M: SquareMatrix,
    pattern: ZeroPattern,
    target: MonicPoly,
    rel_tol: float = FLOAT_REL_TOL,
) -> RealizationReport:
    """Independently re-check a claimed realization of ``target`` on ``pattern``.

    The characteristic polynomial is computed block by block along the
    diagonal blocks of ``M``'s own support; for ``n <= 32`` the whole-matrix
    polynomial is computed as well and must agree.
    """
    if M.n != pattern.n or target.degree != M.n:
        raise DimensionMismatch(
            f"matrix {M.n}x{M.n}, pattern {pattern.n}x{pattern.n}, target degree {target.degree}"
        )
    support = M.support()
    failures = []
    pattern_ok = support == pattern.support
    if not pattern_ok:
        extra = len(support - pattern.support)
        missing = len(pattern.support - support)
        failures.append(f"pattern violation: {missing} missing, {extra} extra positions")
    spans = ZeroPattern(M.n, support).blocks()
    block_polys = tuple(char_poly(M.submatrix(a, b)) for a, b in spans)
    assembled = poly_product(block_polys)
    whole_ok = None
    if M.n <= WHOLE_MATRIX_MAX_N:
        whole_ok = char_poly(M).matches(assembled, rel_tol)
        if not whole_ok:
            failures.append("blockwise and whole-matrix characteristic polynomials differ")
    poly_ok = assembled.matches(target, rel_tol)
    if not poly_ok:
        failures.append("polynomial mismatch: characteristic polynomial differs from target")
    nonzero = len(support)
    if nonzero != len(pattern):
        failures.append(f"nonzero count {nonzero} != {len(pattern)}")
    return RealizationReport(
        matrix=M,
        pattern=pattern,
        pattern_ok=pattern_ok,
        nonzero_count=nonzero,
        expected_nonzero=len(pattern),
        block_polys=block_polys,
        assembled=assembled,
        target=target,
        poly_ok=poly_ok,
        whole_matrix_ok=whole_ok,
        failures=tuple(failures),
    )
