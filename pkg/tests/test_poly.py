from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spectral_patterns.errors import ContextMismatch, MissingAssignment, ZeroPolynomial
from spectral_patterns.exactalg import TAU_CONTEXT, GaussianRational, MultiPoly, VariableContext

from strategies import CTX3, gaussian, polys, small_frac

a, b, c = CTX3.gens()


def naive_evaluate(p, point):
    """Term-by-term summation, independent of the Horner evaluator."""
    total = 0
    for exps, coeff in p.raw.items():
        term = Fraction(coeff)
        for value, k in zip(point, exps):
            for _ in range(k):
                term = term * value
        total = total + term
    return total


def test_context_rejects_duplicates():
    with pytest.raises(ValueError):
        VariableContext(["x", "x"])


def test_zero_coefficients_dropped():
    p = MultiPoly(CTX3, {(1, 0, 0): 0, (0, 1, 0): Fraction(2, 2)})
    assert len(p) == 1 and p.raw[(0, 1, 0)] == 1


def test_grlex_order():
    p = a * b + c**3 + a**2
    assert [e for e, _ in p.terms()] == [(0, 0, 3), (2, 0, 0), (1, 1, 0)]
    assert p.leading_term() == ((0, 0, 3), 1)


def test_str():
    assert str(a**2 - Fraction(1, 2) * b + 3) == "a^2 - 1/2*b + 3"


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        a + MultiPoly.var(TAU_CONTEXT, "tau0")


@settings(max_examples=1000)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == 0


@settings(max_examples=300)
@given(polys(), st.tuples(small_frac, small_frac, small_frac))
def test_evaluate_matches_naive(p, point):
    assert p.evaluate(list(point)) == naive_evaluate(p, point)


@settings(max_examples=300)
@given(polys(), polys(), st.tuples(gaussian, gaussian, gaussian))
def test_evaluate_is_homomorphism(p, q, point):
    point = list(point)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


def test_evaluate_constant():
    assert MultiPoly.constant(CTX3, 5).evaluate({"a": 1, "b": 2, "c": 3}) == 5


def test_evaluate_missing_assignment():
    with pytest.raises(MissingAssignment):
        (a + b).evaluate({"a": 1})


def test_evaluate_floating_and_mapping():
    val = (a * b + c).evaluate({"a": 0.5, "b": 2.0, "c": 1j})
    assert val == pytest.approx(1 + 1j)
    assert isinstance((a + 1).evaluate([GaussianRational(0, 1), 0, 0]), GaussianRational)


def test_weighted_degree_examples():
    tau = {n: MultiPoly.var(TAU_CONTEXT, n) for n in TAU_CONTEXT}
    w = {f"tau{i}": 8 - i for i in range(8)}
    assert tau["tau0"].weighted_degree(w) == 8
    assert (tau["tau7"] ** 3).weighted_degree(w) == 3
    assert (tau["tau0"] * tau["tau7"] + tau["tau1"] ** 2).weighted_degree(w) == 14


def test_weighted_degree_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        MultiPoly.zero(CTX3).weighted_degree([1, 1, 1])


def test_substitute_and_to_context():
    p = a**2 + b
    assert p.substitute({"a": b + 1}) == b**2 + 3 * b + 1
    wide = VariableContext(["z", "b", "a", "c"])
    moved = p.to_context(wide)
    assert moved.evaluate({"z": 9, "a": 2, "b": 3, "c": 0}) == 7


def test_coefficients_in():
    p = a**2 * b + a * c + 4
    cs = p.coefficients_in("a")
    assert cs == {2: b, 1: c, 0: MultiPoly.constant(CTX3, 4)}
