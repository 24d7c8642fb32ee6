"""Realizing spectra on D_2m, the pattern of m full 2x2 diagonal blocks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charpoly import MonicPoly, SquareMatrix, block_diag
from .errors import BadCardinality, OddCardinality
from .exactalg.scalars import GaussianRational, is_exact

__all__ = ["PairRealization", "realize_pair", "realize_D", "canonical_key", "canonical_pairs"]

_FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class PairRealization:
    """The block ``[[a, b], [c, d]]``; every entry nonzero."""

    a: object
    b: object
    c: object
    d: object

    def matrix(self) -> SquareMatrix:
        return SquareMatrix([[self.a, self.b], [self.c, self.d]])

    def char_poly(self) -> MonicPoly:
        return MonicPoly((self.a * self.d - self.b * self.c, -(self.a + self.d)))


def _nonzero(v) -> bool:
    if is_exact(v):
        return v != 0
    return abs(v) > _FLOAT_TOL * max(1.0, abs(v))


def _differs(u, v) -> bool:
    if is_exact(u) and is_exact(v):
        return u != v
    return abs(u - v) > _FLOAT_TOL * max(1.0, abs(u), abs(v))


def realize_pair(lam, mu) -> PairRealization:
    """A full 2x2 block with eigenvalues ``lam`` and ``mu``.

    ``a`` is the first positive integer with ``a != 0``, ``a != s`` and
    ``a (s - a) != p`` (``s = lam + mu``, ``p = lam * mu``); then ``d = s - a``,
    ``b = 1`` and ``c = a d - p``.
    """
    s, p = lam + mu, lam * mu
    a = 1
    while not (_differs(a, s) and _differs(a * (s - a), p)):
        a += 1
    d = s - a
    if isinstance(d, Fraction) and d.denominator == 1:
        d = d.numerator
    c = a * d - p
    return PairRealization(a, 1, c, d)


def canonical_key(v):
    """Total order on scalars: by real part, then imaginary part."""
    if isinstance(v, GaussianRational):
        return v.sort_key()
    if isinstance(v, complex):
        return (v.real, v.imag)
    if isinstance(v, float):
        return (v, 0.0)
    return (Fraction(v), Fraction(0))


def canonical_pairs(values: Sequence) -> list[tuple]:
    ordered = sorted(values, key=canonical_key)
    return [(ordered[i], ordered[i + 1]) for i in range(0, len(ordered), 2)]


def realize_D(spectrum: Sequence) -> SquareMatrix:
    """Block-diagonal matrix with pattern ``D_2m`` and the given spectrum."""
    spectrum = list(spectrum)
    if len(spectrum) % 2:
        raise OddCardinality(f"D_2m needs an even number of eigenvalues, got {len(spectrum)}")
    if not spectrum:
        raise BadCardinality("empty spectrum")
    return block_diag([realize_pair(l, m).matrix() for l, m in canonical_pairs(spectrum)])
