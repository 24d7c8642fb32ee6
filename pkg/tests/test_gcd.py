import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from spectral_patterns.errors import EmptyList, NotDivisible, ZeroDivisor, ZeroInput
from spectral_patterns.exactalg import (
    MultiPoly,
    RationalFunction,
    VariableContext,
    divides,
    exact_div,
    gcd,
    lcm,
)

from strategies import CTX3, nonzero_polys, polys

X2 = VariableContext(["x1", "x2"])
x1, x2 = X2.gens()
a, b, c = CTX3.gens()


def to_sympy(p):
    syms = sympy.symbols(list(p.context.names))
    return sympy.Poly(
        sum(sympy.Rational(co.numerator, co.denominator) * sympy.prod([s**k for s, k in zip(syms, e)])
            for e, co in ((e, Fraction(co)) for e, co in p.raw.items())) or 0,
        *syms,
    )


def from_sympy(sp, ctx):
    return MultiPoly(ctx, {e: Fraction(int(co.p), int(co.q)) for e, co in sp.terms()})


def test_exact_div_examples():
    assert exact_div(x1**2 - 1, x1 - 1) == x1 + 1
    with pytest.raises(NotDivisible):
        exact_div(x1 + 1, x2)
    with pytest.raises(ZeroDivisor):
        exact_div(x1, MultiPoly.zero(X2))


@settings(max_examples=300)
@given(polys(), nonzero_polys)
def test_exact_div_recovers_factor(p, q):
    assert exact_div(p * q, q) == p


@settings(max_examples=200)
@given(nonzero_polys, nonzero_polys)
def test_not_divisible_is_definite(p, q):
    try:
        r = exact_div(p, q)
    except NotDivisible:
        assert not sympy.div(to_sympy(p), to_sympy(q))[1].is_zero
    else:
        assert q * r == p


def test_gcd_examples():
    assert gcd(x1**2 - x2**2, x1 - x2) == x1 - x2
    p = 3 * x1 * x2 + 6
    assert gcd(p, MultiPoly.zero(X2)) == x1 * x2 + 2
    with pytest.raises(ZeroInput):
        gcd(MultiPoly.zero(X2), MultiPoly.zero(X2))


def test_gcd_is_monic_and_coprime_gives_one():
    assert gcd(2 * a + 4, 3 * b) == 1
    assert gcd(6 * a * b**2, 4 * a**2 * b).leading_coefficient() == 1
    assert gcd(6 * a * b**2, 4 * a**2 * b) == a * b


@settings(max_examples=150, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_of_common_multiple(p, q, r):
    """gcd(p r, q r) = gcd(p, q) r up to a unit; cross-checked against sympy and by divisibility."""
    g = gcd(p * r, q * r)
    assert divides(g, p * r) and divides(g, q * r)
    expected = from_sympy(sympy.gcd(to_sympy(p * r), to_sympy(q * r)), CTX3).monic()
    assert g == expected
    assert g == (gcd(p, q) * r).monic()


def test_gcd_random_coprime_factors():
    rng = random.Random(7)
    ctx = VariableContext([f"y{i}" for i in range(5)])
    ys = ctx.gens()

    def rand_poly():
        p = MultiPoly.zero(ctx)
        for _ in range(rng.randint(2, 4)):
            term = MultiPoly.constant(ctx, rng.randint(-5, 5))
            for y in rng.sample(ys, 2):
                term = term * y ** rng.randint(0, 2)
            p = p + term
        return p

    for _ in range(40):
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        if not p or not q or not r:
            continue
        if sympy.gcd(to_sympy(p), to_sympy(q)).total_degree() > 0:
            continue
        g = gcd(p * r, q * r)
        assert g == r.monic()
        exact_div(p * r, g)
        exact_div(q * r, g)


def test_lcm_examples():
    assert lcm([x1, x1**2]) == x1**2
    assert lcm([x1 - 1, x2]) == (x1 - 1) * x2
    with pytest.raises(EmptyList):
        lcm([])
    with pytest.raises(ZeroInput):
        lcm([x1, MultiPoly.zero(X2)])


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_lcm_properties(p, q, r):
    m = lcm([p, q, r])
    for f in (p, q, r):
        assert divides(f, m)
    assert divides(m, p * q * r)
    assert m.leading_coefficient() == 1


def test_rational_function_reduces():
    rf = RationalFunction(x1**2 - 1, 2 * x1 - 2)
    assert rf.num == Fraction(1, 2) * x1 + Fraction(1, 2)
    assert rf.den == 1
    with pytest.raises(ZeroDivisor):
        RationalFunction(x1, MultiPoly.zero(X2))


@settings(max_examples=150, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_rational_function_reduction_idempotent(p, q, r):
    rf = RationalFunction(p * r, q * r)
    assert rf.reduce() == rf
    assert rf.den.leading_coefficient() == 1
    assert gcd(rf.num, rf.den).is_constant() if rf.num else True


@settings(max_examples=100, deadline=None)
@given(nonzero_polys, nonzero_polys, nonzero_polys, nonzero_polys)
def test_rational_function_field_ops(p, q, r, s):
    f, g = RationalFunction(p, q), RationalFunction(r, s)
    assert (f + g) - g == f
    assert (f * g) / g == f
    assert f * f.inverse() == 1
