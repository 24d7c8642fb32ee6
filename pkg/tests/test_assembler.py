"""Subset selection and assembly of diag(S, D_2m)."""

from collections import Counter
from fractions import Fraction

import pytest

from spectral_patterns.assembler import (
    GENERIC,
    REPEATED,
    full_pattern,
    realize_full,
    select_subset,
    verify,
)
from spectral_patterns.charpoly import MonicPoly, SquareMatrix, char_poly
from spectral_patterns.errors import BadCardinality, DimensionMismatch, SelectionFailed
from spectral_patterns.exactalg import I
from spectral_patterns.solver import psi


def spread_101():
    # 708 = 101 * 7 + 1, so value 0 appears 8 times
    return [Fraction(k) for k in range(101) for _ in range(7)] + [Fraction(0)]


def test_small_instance():
    U = [Fraction(k) for k in range(1, 11)]
    report = realize_full(U)
    assert report.passed
    assert report.matrix.n == 10
    assert report.nonzero_count == 19
    assert report.whole_matrix_ok is True
    assert char_poly(report.matrix) == MonicPoly.from_roots(U)
    assert report.selection.branch == GENERIC


def test_selection_conservation_and_psi():
    U = [Fraction(k) for k in range(1, 21)]
    sel = select_subset(U)
    assert Counter(sel.sigma) + Counter(sel.remainder) == Counter(U)
    assert psi(sel.sigma) != 0


def test_selection_deterministic():
    U = [Fraction(k, 3) for k in range(-15, 15)]
    assert select_subset(U, seed=4) == select_subset(U, seed=4)


def test_repeated_branch_for_one_value():
    sel = select_subset([Fraction(5)] * 708)
    assert sel.branch == REPEATED
    assert sel.sigma == (5,) * 8


def test_pigeonhole_arithmetic():
    U = spread_101()
    counts = Counter(U)
    assert len(U) == 708 and len(counts) == 101
    assert max(counts.values()) >= -(-708 // 101) == 8
    sel = select_subset(U)
    assert sel.branch == REPEATED
    assert sel.sigma == (0,) * 8


def test_repeated_tie_broken_by_canonical_order():
    U = [Fraction(3)] * 8 + [Fraction(-2)] * 8 + [Fraction(1), Fraction(2)]
    assert select_subset(U).sigma == (-2,) * 8


def test_selection_failure_below_threshold():
    # i, -i pairs: every 8-subset of the distinct values is too small
    with pytest.raises(SelectionFailed):
        select_subset([I, -I] * 4, retries=5)


def test_bad_cardinality():
    with pytest.raises(BadCardinality):
        realize_full([Fraction(k) for k in range(9)])
    with pytest.raises(BadCardinality):
        realize_full([Fraction(1)] * 6)


def test_zero_spectrum():
    report = realize_full([Fraction(0)] * 20)
    assert report.passed
    assert report.selection.branch == REPEATED
    assert report.assembled == MonicPoly((0,) * 20)


def test_gaussian_spectrum():
    U = [Fraction(k) + k * I for k in range(1, 11)] + [I, -I]
    report = realize_full(U)
    assert report.passed


def test_float_spectrum():
    U = [float(k) + 0.5j for k in range(1, 13)]
    report = realize_full(U)
    assert report.passed


@pytest.mark.slow
def test_full_scale_copies_of_five():
    report = realize_full([Fraction(5)] * 708)
    assert report.passed
    assert report.selection.branch == REPEATED
    assert report.nonzero_count == 1415


@pytest.mark.slow
def test_full_scale_spread_over_101_values():
    report = realize_full(spread_101())
    assert report.passed
    assert report.selection.branch == REPEATED


def test_verify_negative_controls():
    U = [Fraction(k) for k in range(1, 13)]
    report = realize_full(U)
    m = report.matrix
    pattern = full_pattern(2)
    target = MonicPoly.from_roots(U)
    assert verify(m, pattern, target).passed

    r, c, _ = m.nonzero_entries()[0]
    rows = [list(row) for row in m.rows]
    rows[r][c] = 0
    broken = verify(SquareMatrix(rows), pattern, target)
    assert not broken.passed and not broken.pattern_ok
    assert any("pattern violation" in f for f in broken.failures)

    wrong = verify(m, pattern, MonicPoly.from_roots([1] + U[1:-1] + [1]))
    assert not wrong.passed and not wrong.poly_ok
    assert any("polynomial mismatch" in f for f in wrong.failures)

    with pytest.raises(DimensionMismatch):
        verify(m, full_pattern(1), target)


def test_blockwise_and_whole_matrix_agree():
    report = realize_full([Fraction(k, 2) for k in range(-10, 10)])
    assert report.whole_matrix_ok is True
    assert char_poly(report.matrix) == report.assembled
