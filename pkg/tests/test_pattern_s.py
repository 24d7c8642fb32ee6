"""The pattern S, its normal form X and the symbolic coefficients phi."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_patterns.charpoly import MonicPoly, char_poly
from spectral_patterns.errors import WrongPattern, ZeroChainEntry, ZeroParameter, ZeroScale
from spectral_patterns.exactalg import X_CONTEXT, MultiPoly
from spectral_patterns.pattern_s import (
    PATTERN_S,
    XParams,
    build_X,
    build_X_symbolic,
    normalize_to_X,
    normalize_with_diagonal,
    obstruction_certificate,
    phi_symbolic,
    scale_realization,
    witness_all_ones_spectrum,
    witness_nilpotent,
)

from strategies import nonzero_frac, nonzero_gaussian

params = st.lists(nonzero_frac, min_size=8, max_size=8).map(lambda v: XParams(tuple(v)))
ONES_8 = MonicPoly.from_roots([1] * 8)

EXPECTED_SUPPORT = {
    (1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 4), (4, 5),
    (5, 6), (6, 2), (6, 7), (7, 8), (8, 1), (8, 4), (8, 6),
}


def test_support_of_S():
    assert len(PATTERN_S) == 15
    assert {tuple(rc) for rc in PATTERN_S.one_based()} == EXPECTED_SUPPORT
    assert build_X(XParams.of(*[1] * 8)).support() == PATTERN_S.support


def test_zero_parameter_rejected():
    with pytest.raises(ZeroParameter) as info:
        XParams.of(1, 2, 0, 4, 5, 6, 7, 8)
    assert info.value.index == 3


@settings(max_examples=100, deadline=None)
@given(params)
def test_support_matches_for_every_valid_parameter_tuple(p):
    m = build_X(p)
    assert m.support() == PATTERN_S.support
    assert m.nonzero_count() == 15


def test_phi7_is_negative_trace():
    x1, x2 = MultiPoly.var(X_CONTEXT, "x1"), MultiPoly.var(X_CONTEXT, "x2")
    assert phi_symbolic()[7] == -(x1 + x2)


def test_symbolic_matrix_feeds_char_poly():
    cp = char_poly(build_X_symbolic())
    assert cp.degree == 8
    assert all(isinstance(c, MultiPoly) for c in cp.coeffs[4:])


def test_phi_vanishes_at_nilpotent_witness():
    assert all(c == 0 for c in phi_symbolic().evaluate(witness_nilpotent()).coeffs)


def test_phi_at_all_ones_witness_gives_binomials():
    got = phi_symbolic().evaluate(witness_all_ones_spectrum())
    assert list(got.coeffs) == [comb(8, i) * (-1) ** (8 - i) for i in range(8)]


@settings(max_examples=500, deadline=None)
@given(params)
def test_symbolic_and_numeric_coefficients_agree(p):
    assert char_poly(build_X(p)) == phi_symbolic().evaluate(p)


@settings(max_examples=50, deadline=None)
@given(st.lists(nonzero_gaussian, min_size=8, max_size=8))
def test_symbolic_and_numeric_agree_over_gaussian_rationals(values):
    p = XParams(tuple(values))
    assert char_poly(build_X(p)) == phi_symbolic().evaluate(p)


def test_obstruction_certificate():
    q = obstruction_certificate()
    phi = phi_symbolic()
    assert not q.is_zero()
    assert q * phi[7] - phi[4] == MultiPoly.zero(X_CONTEXT)
    assert not phi[7].is_zero()


@settings(max_examples=100, deadline=None)
@given(st.lists(nonzero_frac, min_size=7, max_size=7))
def test_phi4_vanishes_when_trace_vanishes(v):
    x = [v[0], -v[0]] + v[1:]
    assert phi_symbolic()[7].evaluate(x) == 0
    assert phi_symbolic()[4].evaluate(x) == 0


def test_witnesses():
    nil = witness_nilpotent()
    assert tuple(nil) == (1, -1, 1, 1, -1, 1, -2, 1)
    assert char_poly(build_X(nil)) == MonicPoly((0,) * 8)
    ones = witness_all_ones_spectrum()
    assert tuple(ones) == tuple(
        Fraction(s) for s in (
            "1737/848", "5047/848", "-4452/193", "35/4", "2/7", "25/2",
            "1007374319/138787072", "-1325/7",
        )
    )
    assert char_poly(build_X(ones)).full() == [1, -8, 28, -56, 70, -56, 28, -8, 1]
    assert ones != nil


def test_normalize_identity_on_X():
    p = witness_all_ones_spectrum()
    got, d = normalize_with_diagonal(build_X(p))
    assert got == p
    assert d == (1,) * 8


def test_normalize_after_fixed_conjugation():
    p = witness_all_ones_spectrum()
    m = build_X(p).diagonal_conjugate([1, 2, 3, 4, 5, 6, 7, 8])
    assert m != build_X(p)
    assert normalize_to_X(m) == p


@settings(max_examples=200, deadline=None)
@given(params, st.lists(nonzero_frac, min_size=8, max_size=8))
def test_normalize_inverts_diagonal_conjugation(p, d):
    m = build_X(p).diagonal_conjugate(d)
    back = normalize_to_X(m)
    assert back == p
    assert char_poly(build_X(back)) == char_poly(m)


def test_normalize_rejects_wrong_pattern():
    m = build_X(witness_nilpotent())
    rows = [list(r) for r in m.rows]
    rows[0][4] = 1
    with pytest.raises(WrongPattern):
        normalize_to_X(type(m)(rows))
    rows = [list(r) for r in m.rows]
    rows[2][3] = 0
    with pytest.raises(ZeroChainEntry):
        normalize_to_X(type(m)(rows))


def test_doubled_witness_realizes_t_minus_2():
    p = normalize_to_X(build_X(witness_all_ones_spectrum()).scale(2))
    assert char_poly(build_X(p)) == MonicPoly.from_roots([2] * 8)


def test_scale_realization_examples():
    w = witness_all_ones_spectrum()
    assert scale_realization(w, 1) is w
    assert char_poly(build_X(scale_realization(w, 2))) == MonicPoly.from_roots([2] * 8)
    with pytest.raises(ZeroScale):
        scale_realization(w, 0)


@settings(max_examples=100, deadline=None)
@given(params, nonzero_frac, nonzero_frac)
def test_scale_composition(p, a, b):
    assert scale_realization(scale_realization(p, a), b) == scale_realization(p, a * b)


@settings(max_examples=100, deadline=None)
@given(params, nonzero_frac)
def test_scaled_parameters_realize_scaled_polynomial(p, c):
    base = char_poly(build_X(p))
    scaled = char_poly(build_X(scale_realization(p, c)))
    assert all(scaled.coeffs[k] == c ** (8 - k) * base.coeffs[k] for k in range(8))
