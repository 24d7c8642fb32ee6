"""Exact division, GCD and LCM of multivariate polynomials over Q.

The GCD is a recursive primitive-PRS (pseudo-remainder sequence) computation
on integer primitive parts.  Before recursing it removes common monomial
factors and uses univariate images at fixed integer points to detect
variables the GCD cannot contain: if the images in variable ``v`` are coprime
(with both leading coefficients surviving the specialization), the GCD is free
of ``v`` and equals the GCD of all ``v``-coefficients of both inputs.  That
argument is exact, so the shortcut never changes the answer.

Small inputs first try the evaluate-and-reconstruct heuristic.  Its candidate
is accepted only when it divides both inputs and its degree in each variable
reaches a modular upper bound for the true GCD; otherwise the PRS runs.

Results are normalized to leading coefficient 1 in graded-lex order.
"""

from __future__ import annotations

import heapq
import random
from fractions import Fraction
from math import gcd as igcd, lcm as ilcm
from typing import Iterable, Sequence

from ..errors import ContextMismatch, EmptyList, NotDivisible, ZeroDivisor, ZeroInput
from .poly import (
    MultiPoly,
    Raw,
    norm_coeff,
    raw_add,
    raw_coeffs,
    raw_degree,
    raw_leading,
    raw_mul,
    raw_scale,
    raw_shift,
    raw_variables,
)

__all__ = ["exact_div", "divides", "gcd", "gcd_many", "lcm", "primitive_part"]

_SPECIALIZE_TRIES = 4


def _cdiv(a, b):
    if type(a) is int and type(b) is int and a % b == 0:
        return a // b
    return norm_coeff(Fraction(a) / b)


def _heap_key(e):
    return (-sum(e), tuple(-k for k in e))


def raw_divexact(p: Raw, q: Raw) -> Raw | None:
    """Return ``p / q`` if ``q`` divides ``p`` exactly, else ``None``."""
    if not q:
        raise ZeroDivisor("division by the zero polynomial")
    if not p:
        return {}
    lq_e, lq_c = raw_leading(q)
    if len(q) == 1:
        out = {}
        for e, c in p.items():
            m = tuple(map(int.__sub__, e, lq_e))
            if min(m) < 0:
                return None
            out[m] = _cdiv(c, lq_c)
        return out
    tail = [(e, c) for e, c in q.items() if e != lq_e]
    r = dict(p)
    heap = [(_heap_key(e), e) for e in r]
    heapq.heapify(heap)
    quot: Raw = {}
    while r:
        while True:
            _, e = heapq.heappop(heap)
            if e in r:
                break
        c = r.pop(e)
        m = tuple(map(int.__sub__, e, lq_e))
        if min(m) < 0:
            return None
        f = _cdiv(c, lq_c)
        quot[m] = f
        for eq, cq in tail:
            ne = tuple(map(int.__add__, eq, m))
            old = r.get(ne)
            if old is None:
                r[ne] = norm_coeff(-f * cq)
                heapq.heappush(heap, (_heap_key(ne), ne))
            else:
                v = old - f * cq
                if v:
                    r[ne] = norm_coeff(v)
                else:
                    del r[ne]
    return quot


def _is_const(p: Raw) -> bool:
    return len(p) == 1 and not any(next(iter(p)))


def _one(nvars: int) -> Raw:
    return {(0,) * nvars: 1}


def raw_primitive(p: Raw) -> tuple[Fraction, Raw]:
    """Split ``p`` as ``content * prim`` with ``prim`` integral, coprime, positive leading coeff."""
    den = 1
    for c in p.values():
        if type(c) is not int:
            den = ilcm(den, c.denominator)
    ints = [(e, int(c * den)) for e, c in p.items()] if den != 1 else list(p.items())
    g = 0
    for _, c in ints:
        g = igcd(g, c)
        if g == 1:
            break
    _, lc = raw_leading(p)
    if lc < 0:
        g = -g
    return Fraction(g, den), {e: c // g for e, c in ints}


def _monomial_content(p: Raw) -> tuple[int, ...]:
    it = iter(p)
    m = list(next(it))
    for e in it:
        for i, k in enumerate(e):
            if k < m[i]:
                m[i] = k
    return tuple(m)


def _unshift(p: Raw, mono) -> Raw:
    if not any(mono):
        return p
    return {tuple(map(int.__sub__, e, mono)): c for e, c in p.items()}


# images are taken modulo this prime; a nontrivial gcd over Q stays nontrivial
# mod p whenever both leading coefficients survive the reduction
_PRIME = (1 << 61) - 1


def _mod(c) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, _PRIME) % _PRIME
    return c % _PRIME


def _eval_except(p: Raw, v: int, point: Sequence[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in p.items():
        val = _mod(c)
        for i, k in enumerate(e):
            if k and i != v:
                val = val * pow(point[i], k, _PRIME) % _PRIME
        out[e[v]] = (out.get(e[v], 0) + val) % _PRIME
    return {k: c for k, c in out.items() if c}


def _uni_gcd_degree(a: dict[int, int], b: dict[int, int]) -> int:
    """Degree of gcd of two univariate polynomials given as {deg: coeff} mod the prime."""
    def dense(d):
        return [d.get(k, 0) for k in range(max(d) + 1)]

    f, g = dense(a), dense(b)
    while True:
        if len(f) < len(g):
            f, g = g, f
        if len(g) == 1:
            return 0
        inv = pow(g[-1], -1, _PRIME)
        while len(f) >= len(g):
            q = f[-1] * inv % _PRIME
            shift = len(f) - len(g)
            for i, c in enumerate(g):
                f[shift + i] = (f[shift + i] - q * c) % _PRIME
            f.pop()
            while f and f[-1] == 0:
                f.pop()
        if not f:
            return len(g) - 1
        f, g = g, f


def _free_variables(a: Raw, b: Raw, variables: Iterable[int], nvars: int) -> set[int]:
    """Variables certified absent from gcd(a, b) via univariate images."""
    rng = random.Random(0x5EED)
    free = set()
    for v in variables:
        lca = raw_coeffs(a, v)[raw_degree(a, v)]
        lcb = raw_coeffs(b, v)[raw_degree(b, v)]
        for _ in range(_SPECIALIZE_TRIES):
            point = [rng.randrange(2, _PRIME) for _ in range(nvars)]
            if not _eval_except(lca, v, point) or not _eval_except(lcb, v, point):
                continue
            ia, ib = _eval_except(a, v, point), _eval_except(b, v, point)
            if _uni_gcd_degree(ia, ib) == 0:
                free.add(v)
            break
    return free


def _degree_bound(a: Raw, b: Raw, v: int, nvars: int) -> int | None:
    """Upper bound on ``deg_v gcd(a, b)`` from a modular univariate image."""
    rng = random.Random(0xB0D + v)
    lca = raw_coeffs(a, v)[raw_degree(a, v)]
    lcb = raw_coeffs(b, v)[raw_degree(b, v)]
    for _ in range(_SPECIALIZE_TRIES):
        point = [rng.randrange(2, _PRIME) for _ in range(nvars)]
        if _eval_except(lca, v, point) and _eval_except(lcb, v, point):
            return _uni_gcd_degree(_eval_except(a, v, point), _eval_except(b, v, point))
    return None


# give up on the heuristic once evaluated integers would exceed this many bits
_HEU_MAX_BITS = 20_000
_HEU_TRIES = 4


def _norm(p: Raw) -> int:
    return max(abs(c) for c in p.values())


def _heu_bits(p: Raw, vs: list[int]) -> int:
    bits = _norm(p).bit_length() + 1
    for v in reversed(vs):
        bits = (bits + 6) * (raw_degree(p, v) + 1)
    return bits


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _heu(f: Raw, g: Raw, vs: list[int]) -> Raw | None:
    """Candidate gcd of integer polynomials in ``vs`` by evaluate-and-reconstruct.

    The result divides both inputs when not ``None`` but is not yet certified
    to be the greatest common divisor.
    """
    if not vs:
        e = next(iter(f))
        return {e: igcd(f[e], g[next(iter(g))])}
    v, rest = vs[-1], vs[:-1]
    nf, ng = _norm(f), _norm(g)
    xi = 2 * min(nf, ng) + 29
    for _ in range(_HEU_TRIES):
        ff, gg = _eval_at(f, v, xi), _eval_at(g, v, xi)
        if ff and gg:
            h = _heu(ff, gg, rest)
            if h is not None:
                cand = _reconstruct(h, v, xi)
                if cand:
                    cand = raw_primitive(cand)[1]
                    if raw_divexact(f, cand) is not None and raw_divexact(g, cand) is not None:
                        return cand
        xi = xi * 73794 // 27011
    return None


def _eval_at(p: Raw, v: int, x: int) -> Raw:
    out: Raw = {}
    for e, c in p.items():
        k = e[v]
        if k:
            e = e[:v] + (0,) + e[v + 1:]
        out[e] = out.get(e, 0) + c * x ** k
    return {e: c for e, c in out.items() if c}


def _reconstruct(h: Raw, v: int, xi: int) -> Raw:
    out: Raw = {}
    k = 0
    while h:
        nxt: Raw = {}
        for e, c in h.items():
            d = _symmetric(c, xi)
            if d:
                out[e[:v] + (k,) + e[v + 1:]] = d
            rest = (c - d) // xi
            if rest:
                nxt[e] = rest
        h = nxt
        k += 1
    return out


def _heu_gcd(a: Raw, b: Raw, vs: list[int], nvars: int) -> Raw | None:
    """Certified gcd via the heuristic, or ``None``.

    A common divisor ``H`` whose ``v``-degree reaches an upper bound for the
    true gcd in every variable leaves a cofactor of degree 0, so ``H`` is the
    gcd of the two primitive inputs.
    """
    if max(_heu_bits(a, vs), _heu_bits(b, vs)) > _HEU_MAX_BITS:
        return None
    cand = _heu(a, b, vs)
    if cand is None:
        return None
    for v in vs:
        bound = _degree_bound(a, b, v, nvars)
        if bound is None or raw_degree(cand, v) < bound:
            return None
    return cand


def _split_by(p: Raw, vs: set[int]) -> list[Raw]:
    """Coefficients of ``p`` viewed as a polynomial in the variables ``vs``."""
    groups: dict[tuple, Raw] = {}
    for e, c in p.items():
        key = tuple(e[i] for i in sorted(vs))
        ne = tuple(0 if i in vs else k for i, k in enumerate(e))
        groups.setdefault(key, {})[ne] = c
    return list(groups.values())


def _gcd_many_raw(polys: list[Raw], nvars: int) -> Raw:
    polys = sorted((p for p in polys if p), key=len)
    if not polys:
        return {}
    g = raw_primitive(polys[0])[1]
    for p in polys[1:]:
        if _is_const(g):
            break
        g = _gcd_raw(g, p, nvars)
    return g


def _content_v(p: Raw, v: int, nvars: int) -> Raw:
    return _gcd_many_raw(list(raw_coeffs(p, v).values()), nvars)


def _pp_v(p: Raw, v: int, nvars: int) -> Raw:
    c = _content_v(p, v, nvars)
    if _is_const(c):
        return raw_primitive(p)[1]
    q = raw_divexact(p, c)
    assert q is not None
    return raw_primitive(q)[1]


def _prem(a: Raw, b: Raw, v: int) -> Raw:
    db = raw_degree(b, v)
    lcb = raw_coeffs(b, v)[db]
    nvars = len(next(iter(b)))
    r = a
    while r:
        d = raw_degree(r, v)
        if d < db:
            break
        lcr = raw_coeffs(r, v)[d]
        mono = tuple(d - db if i == v else 0 for i in range(nvars))
        r = raw_add(raw_mul(lcb, r), raw_mul(raw_shift(lcr, mono), b), -1)
        if r:
            r = raw_primitive(r)[1]
    return r


def _gcd_raw(a: Raw, b: Raw, nvars: int) -> Raw:
    """GCD of nonzero-or-zero raw polynomials as an integer primitive polynomial."""
    if not a:
        return raw_primitive(b)[1] if b else {}
    if not b:
        return raw_primitive(a)[1]
    if _is_const(a) or _is_const(b):
        return _one(nvars)
    ma, mb = _monomial_content(a), _monomial_content(b)
    mono = tuple(map(min, ma, mb))
    a = raw_primitive(_unshift(a, ma))[1]
    b = raw_primitive(_unshift(b, mb))[1]
    if _is_const(a) or _is_const(b):
        return {mono: 1}
    if a == b:
        return raw_shift(a, mono)

    va, vb = raw_variables(a), raw_variables(b)
    only = (va ^ vb)
    if only:
        g = _gcd_many_raw(_split_by(a, only & va) + _split_by(b, only & vb), nvars)
        return raw_shift(g, mono)

    free = _free_variables(a, b, sorted(va), nvars)
    if free == va:
        return {mono: 1}
    if free:
        g = _gcd_many_raw(_split_by(a, free) + _split_by(b, free), nvars)
        return raw_shift(g, mono)

    g = _heu_gcd(a, b, sorted(va), nvars)
    if g is not None:
        return raw_shift(g, mono)

    # main variable: smallest degree, ties to the last one
    v = min(sorted(va, reverse=True), key=lambda i: max(raw_degree(a, i), raw_degree(b, i)))
    ca, cb = _content_v(a, v, nvars), _content_v(b, v, nvars)
    c = _gcd_raw(ca, cb, nvars)
    pa = a if _is_const(ca) else raw_divexact(a, ca)
    pb = b if _is_const(cb) else raw_divexact(b, cb)
    pa, pb = raw_primitive(pa)[1], raw_primitive(pb)[1]
    if raw_degree(pa, v) < raw_degree(pb, v):
        pa, pb = pb, pa
    if raw_divexact(pa, pb) is not None:
        g = pb
    else:
        g = _one(nvars)
        while True:
            r = _prem(pa, pb, v)
            if not r:
                g = pb
                break
            if raw_degree(r, v) == 0:
                break
            pa, pb = pb, _pp_v(r, v, nvars)
    return raw_shift(raw_primitive(raw_mul(c, g))[1], mono)


# public API -------------------------------------------------------------------

def _check(p: MultiPoly, q: MultiPoly) -> None:
    if p.context != q.context:
        raise ContextMismatch(f"{p.context} vs {q.context}")


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return ``r`` with ``p == q*r``; raise :class:`NotDivisible` if none exists."""
    _check(p, q)
    if q.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    r = raw_divexact(p.raw, q.raw)
    if r is None:
        raise NotDivisible(f"{q} does not divide {p}")
    return MultiPoly._from_raw(p.context, r)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    _check(p, q)
    return raw_divexact(p.raw, q.raw) is not None


def primitive_part(p: MultiPoly) -> tuple[Fraction, MultiPoly]:
    """``p = content * prim`` with ``prim`` integral, coefficient gcd 1, positive leading coeff."""
    if p.is_zero():
        return Fraction(0), p
    c, prim = raw_primitive(p.raw)
    return c, MultiPoly._from_raw(p.context, prim)


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to leading coefficient 1."""
    _check(p, q)
    if p.is_zero() and q.is_zero():
        raise ZeroInput("gcd(0, 0) is undefined")
    g = _gcd_raw(p.raw, q.raw, len(p.context))
    return MultiPoly._from_raw(p.context, g).monic()


def gcd_many(polys: Sequence[MultiPoly]) -> MultiPoly:
    if not polys:
        raise EmptyList("gcd of an empty list")
    ctx = polys[0].context
    for p in polys:
        _check(polys[0], p)
    g = _gcd_many_raw([p.raw for p in polys], len(ctx))
    if not g:
        raise ZeroInput("gcd of zero polynomials is undefined")
    return MultiPoly._from_raw(ctx, g).monic()


def lcm(polys: Sequence[MultiPoly]) -> MultiPoly:
    """Least common multiple, normalized to leading coefficient 1."""
    polys = list(polys)
    if not polys:
        raise EmptyList("lcm of an empty list")
    for p in polys:
        _check(polys[0], p)
        if p.is_zero():
            raise ZeroInput("lcm input is zero")
    nvars = len(polys[0].context)
    acc = raw_primitive(polys[0].raw)[1]
    for p in polys[1:]:
        prim = raw_primitive(p.raw)[1]
        if raw_divexact(acc, prim) is not None:
            continue
        g = _gcd_raw(acc, prim, nvars)
        cofactor = raw_divexact(prim, g)
        acc = raw_mul(acc, cofactor)
    return MultiPoly._from_raw(polys[0].context, acc).monic()
