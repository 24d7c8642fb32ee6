"""Reduced quotients of multivariate polynomials."""

from __future__ import annotations

from numbers import Rational

from ..errors import ContextMismatch, ZeroDivisor
from .gcd import exact_div, gcd
from .poly import MultiPoly, VariableContext

__all__ = ["RationalFunction"]


class RationalFunction:
    """``num / den`` with ``gcd(num, den) = 1`` and ``den`` of leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduced: bool = False):
        if den is None:
            den = MultiPoly.constant(num.context, 1)
        if num.context != den.context:
            raise ContextMismatch(f"{num.context} vs {den.context}")
        if den.is_zero():
            raise ZeroDivisor("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @property
    def context(self) -> VariableContext:
        return self.num.context

    @classmethod
    def from_poly(cls, p: MultiPoly) -> RationalFunction:
        return cls(p, MultiPoly.constant(p.context, 1), reduced=True)

    def reduce(self) -> RationalFunction:
        return RationalFunction(self.num, self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.context != self.context:
                raise ContextMismatch(f"{self.context} vs {other.context}")
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction.from_poly(self.num._lift(other))
        if isinstance(other, (int, Rational)):
            return RationalFunction.from_poly(MultiPoly.constant(self.context, other))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = gcd(self.den, other.den)
        a = exact_div(self.den, g)
        b = exact_div(other.den, g)
        return RationalFunction(self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        # cross-cancel first to keep the products small
        g1 = gcd(self.num, other.den) if self.num and other.num else None
        g2 = gcd(other.num, self.den) if self.num and other.num else None
        if g1 is None:
            return RationalFunction.from_poly(MultiPoly.zero(self.context))
        n1, d2 = exact_div(self.num, g1), exact_div(other.den, g1)
        n2, d1 = exact_div(other.num, g2), exact_div(self.den, g2)
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.num.is_zero():
            raise ZeroDivisor("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, reduced=True)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, point):
        """Evaluate at a point; raises :class:`ZeroDivisor` if the denominator vanishes."""
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisor("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def substitute(self, name: str, value: RationalFunction) -> RationalFunction:
        """Replace variable ``name`` by a rational function of the same context."""
        return substitute_poly(self.num, name, value) / substitute_poly(self.den, name, value)

    def to_context(self, context: VariableContext) -> RationalFunction:
        return RationalFunction(self.num.to_context(context), self.den.to_context(context), reduced=True)

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def substitute_poly(p: MultiPoly, name: str, value: RationalFunction) -> RationalFunction:
    """``p`` with ``name`` replaced by ``N/D``: ``sum c_k N^k D^(n-k) / D^n``."""
    coeffs = p.coefficients_in(name)
    if not coeffs or list(coeffs) == [0]:
        return RationalFunction.from_poly(p)
    n = max(coeffs)
    num_pows = [MultiPoly.constant(p.context, 1)]
    den_pows = [MultiPoly.constant(p.context, 1)]
    for _ in range(n):
        num_pows.append(num_pows[-1] * value.num)
        den_pows.append(den_pows[-1] * value.den)
    total = MultiPoly.zero(p.context)
    for k, c in coeffs.items():
        total = total + c * num_pows[k] * den_pows[n - k]
    return RationalFunction(total, den_pows[n])


def _reduce(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    if num.is_zero():
        return num, MultiPoly.constant(num.context, 1)
    if not den.is_constant() and not num.is_constant():
        g = gcd(num, den)
        if not g.is_constant():
            num, den = exact_div(num, g), exact_div(den, g)
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return num, den
