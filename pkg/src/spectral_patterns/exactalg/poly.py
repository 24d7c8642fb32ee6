"""Sparse multivariate polynomials with rational coefficients.

A polynomial is a mapping from exponent tuples (one entry per variable of its
:class:`VariableContext`) to nonzero coefficients.  Coefficients are ``int``
whenever integral and :class:`fractions.Fraction` otherwise, so integer-heavy
workloads stay on the fast path.

Terms are ordered graded-lexicographically with the context's declared
variable order: ``x1 > x2 > ... > xn`` and higher total degree first.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

from ..errors import ContextMismatch, MissingAssignment, ZeroPolynomial
from .scalars import GaussianRational, as_fraction, format_fraction

__all__ = ["VariableContext", "MultiPoly", "grlex_key", "X_CONTEXT", "XT_CONTEXT", "TAU_CONTEXT"]

Exponent = tuple[int, ...]
Raw = dict  # Exponent -> int | Fraction


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


def norm_coeff(c):
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"polynomial coefficients must be rational, got {type(c).__name__}")


class VariableContext:
    """Ordered, duplicate-free tuple of variable names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __setattr__(self, name, value):
        raise AttributeError("VariableContext is immutable")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"variable {name!r} not in context {self.names}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VariableContext({list(self.names)!r})"

    def gens(self) -> list[MultiPoly]:
        return [MultiPoly.var(self, n) for n in self.names]

    def zero_exponent(self) -> Exponent:
        return (0,) * len(self.names)


X_CONTEXT = VariableContext([f"x{i}" for i in range(1, 9)])
XT_CONTEXT = VariableContext([f"x{i}" for i in range(1, 9)] + ["t"])
TAU_CONTEXT = VariableContext([f"tau{i}" for i in range(8)])


# raw dict kernels -----------------------------------------------------------

def raw_add(a: Raw, b: Raw, sign: int = 1) -> Raw:
    if len(a) < len(b) and sign == 1:
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + (c if sign == 1 else -c)
        if v:
            out[e] = norm_coeff(v)
        else:
            out.pop(e, None)
    return out


def raw_mul(a: Raw, b: Raw) -> Raw:
    if len(a) < len(b):
        a, b = b, a
    out: Raw = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(int.__add__, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: norm_coeff(c) for e, c in out.items() if c}


def raw_scale(a: Raw, c) -> Raw:
    if not c:
        return {}
    return {e: norm_coeff(v * c) for e, v in a.items()}


def raw_shift(a: Raw, mono: Exponent) -> Raw:
    return {tuple(map(int.__add__, e, mono)): c for e, c in a.items()}


def raw_degree(a: Raw, v: int) -> int:
    return max((e[v] for e in a), default=-1)


def raw_coeffs(a: Raw, v: int) -> dict[int, Raw]:
    """Split ``a`` by powers of variable ``v``; coefficients have ``e[v] = 0``."""
    out: dict[int, Raw] = {}
    for e, c in a.items():
        k = e[v]
        if k:
            e = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[e] = c
    return out


def raw_leading(a: Raw) -> tuple[Exponent, object]:
    e = max(a, key=grlex_key)
    return e, a[e]


def raw_variables(a: Raw) -> set[int]:
    found: set[int] = set()
    for e in a:
        for i, k in enumerate(e):
            if k:
                found.add(i)
    return found


def raw_pow(a: Raw, n: int, nvars: int) -> Raw:
    result: Raw = {(0,) * nvars: 1}
    base = a
    while n:
        if n & 1:
            result = raw_mul(result, base)
        n >>= 1
        if n:
            base = raw_mul(base, base)
    return result


class MultiPoly:
    """Immutable sparse polynomial over a :class:`VariableContext`.

    >>> x1, x2 = VariableContext(["x1", "x2"]).gens()
    >>> (x1 - x2) * (x1 + x2)
    MultiPoly('x1^2 - x2^2')
    """

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: VariableContext, terms: Mapping[Exponent, object] | None = None):
        n = len(context)
        clean: Raw = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent {e} for {n} variables")
            c = norm_coeff(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _from_raw(cls, context: VariableContext, raw: Raw) -> MultiPoly:
        # trusted constructor: raw must already be canonical
        p = object.__new__(cls)
        object.__setattr__(p, "context", context)
        object.__setattr__(p, "_terms", raw)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # constructors
    @classmethod
    def zero(cls, context: VariableContext) -> MultiPoly:
        return cls._from_raw(context, {})

    @classmethod
    def constant(cls, context: VariableContext, value) -> MultiPoly:
        value = norm_coeff(as_fraction(value))
        return cls._from_raw(context, {context.zero_exponent(): value} if value else {})

    @classmethod
    def var(cls, context: VariableContext, name: str) -> MultiPoly:
        e = [0] * len(context)
        e[context.index(name)] = 1
        return cls._from_raw(context, {tuple(e): 1})

    # structure
    @property
    def raw(self) -> Raw:
        return self._terms

    def terms(self) -> list[tuple[Exponent, object]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self._terms.get(self.context.zero_exponent(), 0))

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e, c = raw_leading(self._terms)
        return e, Fraction(c)

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> MultiPoly:
        if not self._terms:
            return self
        lc = self.leading_coefficient()
        return self if lc == 1 else self._from_raw(self.context, raw_scale(self._terms, 1 / lc))

    def variables(self) -> list[str]:
        return [self.context.names[i] for i in sorted(raw_variables(self._terms))]

    def degree(self, name: str) -> int:
        """Degree in one variable; ``-1`` for the zero polynomial."""
        return raw_degree(self._terms, self.context.index(name))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degree(self, weights: Mapping[str, int] | Sequence[int]) -> int:
        """Maximum over terms of ``sum(exponent * weight)``."""
        if not self._terms:
            raise ZeroPolynomial("weighted degree of the zero polynomial")
        if isinstance(weights, Mapping):
            w = [int(weights.get(n, 0)) for n in self.context.names]
        else:
            w = [int(k) for k in weights]
            if len(w) != len(self.context):
                raise ValueError("one weight per context variable required")
        if any(k < 0 for k in w):
            raise ValueError("weights must be non-negative")
        return max(sum(a * b for a, b in zip(e, w)) for e in self._terms)

    def coefficients_in(self, name: str) -> dict[int, MultiPoly]:
        """Coefficients with respect to one variable, as polynomials free of it."""
        parts = raw_coeffs(self._terms, self.context.index(name))
        return {k: self._from_raw(self.context, r) for k, r in parts.items()}

    # arithmetic
    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.context != self.context:
                raise ContextMismatch(f"{self.context} vs {other.context}")
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.constant(self.context, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._from_raw(self.context, raw_add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return self._from_raw(self.context, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> MultiPoly:
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._from_raw(self.context, raw_add(self._terms, other._terms, -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, MultiPoly):
            return self._from_raw(self.context, raw_scale(self._terms, norm_coeff(other)))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._from_raw(self.context, raw_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; polynomial division lives in exact_div
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self._from_raw(self.context, raw_scale(self._terms, 1 / Fraction(other)))
        if isinstance(other, MultiPoly) and other.is_constant() and other:
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, n: int) -> MultiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        return self._from_raw(self.context, raw_pow(self._terms, n, len(self.context)))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.context, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # evaluation and change of context
    def evaluate(self, point):
        """Evaluate at ``point`` (a mapping name -> value or a sequence in context order).

        Exact for ``Fraction``/``GaussianRational``/``MultiPoly`` values, ordinary
        floating semantics for ``float``/``complex``.  Uses a Horner scheme over
        the variables in context order.
        """
        values = self._point_values(point)
        if all(type(v) in (int, Fraction) for v in values):
            return _eval_rational(self._terms, values)
        return _horner(self._terms, values, 0, _zero_like(values))

    def _point_values(self, point) -> list:
        names = self.context.names
        if isinstance(point, Mapping):
            used = raw_variables(self._terms)
            missing = [names[i] for i in sorted(used) if names[i] not in point]
            if missing:
                raise MissingAssignment(f"no value for {', '.join(missing)}")
            return [point.get(n, 0) for n in names]
        values = list(point)
        if len(values) != len(names):
            raise MissingAssignment(f"expected {len(names)} values, got {len(values)}")
        return values

    def substitute(self, assignments: Mapping[str, object]) -> MultiPoly:
        """Replace some variables by polynomials (same context) or scalars."""
        result = MultiPoly.zero(self.context)
        idx = {self.context.index(n): v for n, v in assignments.items()}
        cache: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self._terms.items():
            kept = tuple(0 if i in idx else k for i, k in enumerate(e))
            term = MultiPoly._from_raw(self.context, {kept: c})
            for i, v in idx.items():
                if e[i]:
                    key = (i, e[i])
                    if key not in cache:
                        base = v if isinstance(v, MultiPoly) else MultiPoly.constant(self.context, v)
                        cache[key] = base ** e[i]
                    term = term * cache[key]
            result = result + term
        return result

    def to_context(self, context: VariableContext) -> MultiPoly:
        """Re-express in another context containing every variable that occurs."""
        names = self.context.names
        present = raw_variables(self._terms)
        target = [context.index(names[i]) for i in sorted(present)] if present else []
        mapping = dict(zip(sorted(present), target))
        n = len(context)
        out: Raw = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[mapping[i]] = k
            out[tuple(ne)] = c
        return MultiPoly._from_raw(context, out)

    # display
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(self.context.names, e) if k
            )
            c = Fraction(c)
            mag = abs(c)
            if not mono:
                body = format_fraction(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_fraction(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def _zero_like(values: list):
    for v in values:
        if isinstance(v, MultiPoly):
            return MultiPoly.zero(v.context)
        if isinstance(v, GaussianRational):
            return GaussianRational(0)
        if isinstance(v, (float, complex)):
            return 0.0
    return Fraction(0)


def _eval_rational(terms: Raw, values: list) -> Fraction:
    # x_i = n_i / d_i; scale every term by prod d_i^deg_i and sum in integers
    if not terms:
        return Fraction(0)
    nums = [v.numerator if type(v) is Fraction else v for v in values]
    dens = [v.denominator if type(v) is Fraction else 1 for v in values]
    degs = [max(e[i] for e in terms) for i in range(len(values))]
    tables = []
    for n, d, m in zip(nums, dens, degs):
        npow = [1] * (m + 1)
        dpow = [1] * (m + 1)
        for k in range(1, m + 1):
            npow[k] = npow[k - 1] * n
            dpow[k] = dpow[k - 1] * d
        tables.append([npow[k] * dpow[m - k] for k in range(m + 1)])
    total_int = 0
    total_frac = Fraction(0)
    for e, c in terms.items():
        t = 1
        for table, k in zip(tables, e):
            t *= table[k]
        if type(c) is int:
            total_int += c * t
        else:
            total_frac += c * t
    scale = 1
    for d, m in zip(dens, degs):
        scale *= d ** m
    return (total_frac + total_int) / scale


def _horner(terms: Raw, values: list, v: int, zero):
    if not terms:
        return zero
    if v == len(values):
        (c,) = terms.values()
        return zero + c
    groups = raw_coeffs(terms, v)
    x = values[v]
    acc = zero
    for k in range(max(groups), -1, -1):
        acc = acc * x
        if k in groups:
            acc = acc + _horner(groups[k], values, v + 1, zero)
    return acc
