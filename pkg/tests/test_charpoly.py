"""Characteristic polynomials: Faddeev-LeVerrier against cofactor expansion."""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_patterns.charpoly import (
    MonicPoly,
    SquareMatrix,
    block_diag,
    char_poly,
    det_bruteforce,
    det_leibniz,
    poly_product,
)
from spectral_patterns.errors import DimensionTooLarge, EmptyList
from spectral_patterns.exactalg import MultiPoly, VariableContext
from spectral_patterns.pattern_s import build_X, build_X_symbolic, phi_symbolic, witness_nilpotent

from strategies import gaussian, nonzero_frac, small_frac

T = VariableContext(["t"])


def matrices(n_min=1, n_max=5, entries=small_frac):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(SquareMatrix)


def cofactor_char_poly(m: SquareMatrix) -> MonicPoly:
    """det(tI - M) expanded over Q[t] by cofactors."""
    t = MultiPoly.var(T, "t")
    rows = [[(t if i == j else 0) - m[i, j] for j in range(m.n)] for i in range(m.n)]
    det = det_bruteforce(SquareMatrix(rows))
    det = det if isinstance(det, MultiPoly) else MultiPoly.constant(T, det)
    coeffs = det.coefficients_in("t")
    return MonicPoly.from_full([coeffs.get(k, MultiPoly.zero(T)).constant_value() for k in range(m.n + 1)])


def test_nilpotent_jordan_block():
    assert char_poly(SquareMatrix([[0, 1], [0, 0]])) == MonicPoly((0, 0))


def test_nilpotent_witness():
    assert char_poly(build_X(witness_nilpotent())) == MonicPoly((0,) * 8)


def test_fixed_4x4_against_cofactor():
    m = SquareMatrix([[1, Fraction(1, 2), 0, 3], [2, -1, 4, 0], [0, 5, Fraction(-2, 3), 1], [7, 0, 1, 1]])
    assert char_poly(m) == cofactor_char_poly(m)


@settings(max_examples=250, deadline=None)
@given(matrices())
def test_char_poly_matches_cofactor_oracle(m):
    assert char_poly(m) == cofactor_char_poly(m)


@settings(max_examples=60, deadline=None)
@given(matrices(1, 3, gaussian))
def test_char_poly_gaussian_entries(m):
    assert char_poly(m) == cofactor_char_poly_generic(m)


def cofactor_char_poly_generic(m):
    # coefficient k of det(tI - M) by sampling t at n + 1 points and Lagrange solving
    n = m.n
    pts = list(range(n + 1))
    vals = [det_bruteforce(m.scale(-1).add_scalar_diagonal(x)) for x in pts]
    coeffs = [0] * (n + 1)
    for i, xi in enumerate(pts):
        basis = [1]
        denom = 1
        for j, xj in enumerate(pts):
            if j == i:
                continue
            basis = [0] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n + 1):
            coeffs[k] = coeffs[k] + vals[i] * Fraction(basis[k], denom)
    return MonicPoly.from_full(coeffs)


@settings(max_examples=150, deadline=None)
@given(matrices(1, 6))
def test_trace_and_determinant_coefficients(m):
    cp = char_poly(m)
    assert cp.coeffs[m.n - 1] == -m.trace()
    assert cp.coeffs[0] == (-1) ** m.n * det_bruteforce(m)


@settings(max_examples=100, deadline=None)
@given(matrices(1, 4))
def test_two_determinant_oracles_agree(m):
    assert det_bruteforce(m) == det_leibniz(m)


@settings(max_examples=150, deadline=None)
@given(matrices(1, 5), st.data())
def test_diagonal_similarity_invariance(m, data):
    d = data.draw(st.lists(nonzero_frac, min_size=m.n, max_size=m.n))
    assert char_poly(m.diagonal_conjugate(d)) == char_poly(m)


@settings(max_examples=100, deadline=None)
@given(matrices(1, 4), matrices(1, 4))
def test_block_rule(a, b):
    assert char_poly(block_diag([a, b])) == char_poly(a) * char_poly(b)


@settings(max_examples=150, deadline=None)
@given(matrices(1, 5), nonzero_frac)
def test_scaling_rule(m, c):
    base, scaled = char_poly(m), char_poly(m.scale(c))
    for k in range(m.n):
        assert scaled.coeffs[k] == c ** (m.n - k) * base.coeffs[k]


def test_det_identity_and_symbolic_2x2():
    assert det_bruteforce(SquareMatrix.identity(3)) == 1
    a, b, c, d = VariableContext(["a", "b", "c", "d"]).gens()
    assert det_bruteforce(SquareMatrix([[a, b], [c, d]])) == a * d - b * c


def test_det_bruteforce_size_limit():
    with pytest.raises(DimensionTooLarge):
        det_bruteforce(SquareMatrix.identity(10))


def test_symbolic_cofactor_matches_phi():
    ctx = VariableContext([f"x{i}" for i in range(1, 9)] + ["t"])
    t = MultiPoly.var(ctx, "t")
    X = build_X_symbolic().map(lambda v: v.to_context(ctx) if isinstance(v, MultiPoly) else v)
    rows = [[(t if i == j else 0) - X[i, j] for j in range(8)] for i in range(8)]
    det = det_bruteforce(SquareMatrix(rows))
    coeffs = det.coefficients_in("t")
    phi = phi_symbolic()
    assert coeffs[8] == MultiPoly.constant(ctx, 1)
    for i in range(8):
        assert coeffs.get(i, MultiPoly.zero(ctx)) == phi[i].to_context(ctx)


def test_poly_product_examples():
    assert poly_product([MonicPoly((-1,)), MonicPoly((1,))]) == MonicPoly((-1, 0))
    c = Fraction(3, 2)
    got = poly_product([MonicPoly((-c,))] * 8)
    assert got.full() == [comb(8, k) * (-c) ** (8 - k) for k in range(9)]
    with pytest.raises(EmptyList):
        poly_product([])


@settings(max_examples=100, deadline=None)
@given(st.lists(small_frac, min_size=1, max_size=10))
def test_from_roots_vanishes_at_roots(roots):
    p = MonicPoly.from_roots(roots)
    assert p.degree == len(roots)
    assert all(p(r) == 0 for r in roots)


def test_matrix_power_of_nilpotent_witness():
    assert build_X(witness_nilpotent()).power(8).is_zero()
    assert not build_X(witness_nilpotent()).power(7).is_zero()
