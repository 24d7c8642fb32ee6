"""Dense square matrices over exact or floating scalars and their characteristic polynomials.

Scalars are duck-typed: ``int``/``Fraction``, :class:`GaussianRational`,
``complex`` and :class:`MultiPoly` all work, as long as the ring contains
the rationals (Faddeev-LeVerrier divides by ``1..n``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, DimensionTooLarge, EmptyList
from .exactalg.scalars import is_exact

__all__ = [
    "SquareMatrix",
    "MonicPoly",
    "char_poly",
    "det_bruteforce",
    "poly_product",
    "block_diag",
]

BRUTEFORCE_MAX_N = 9


def _is_zero(v) -> bool:
    return v == 0


def _div_int(v, k: int):
    if type(v) is int:
        return Fraction(v, k)
    return v / k


def _tidy(c):
    # integral Fractions become ints so long products stay on the fast int path
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if type(a) is int and type(b) is int:
        return Fraction(a, b)
    return a / b


class SquareMatrix:
    """Immutable dense ``n x n`` matrix; zero entries may be the plain int ``0``."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, n: int, one=1) -> SquareMatrix:
        return cls([[one if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> SquareMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, object]]) -> SquareMatrix:
        """Build from 0-based ``(row, col, value)`` triples; unspecified entries are 0."""
        rows = [[0] * n for _ in range(n)]
        for r, c, v in entries:
            rows[r][c] = v
        return cls(rows)

    def __getitem__(self, rc: tuple[int, int]):
        r, c = rc
        return self.rows[r][c]

    def __eq__(self, other) -> bool:
        return isinstance(other, SquareMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SquareMatrix(n={self.n})"

    def support(self) -> frozenset[tuple[int, int]]:
        """0-based positions of nonzero entries."""
        return frozenset(
            (i, j) for i, row in enumerate(self.rows) for j, v in enumerate(row) if not _is_zero(v)
        )

    def nonzero_count(self) -> int:
        return sum(1 for row in self.rows for v in row if not _is_zero(v))

    def nonzero_entries(self) -> list[tuple[int, int, object]]:
        return [(i, j, v) for i, row in enumerate(self.rows) for j, v in enumerate(row) if not _is_zero(v)]

    def map(self, f: Callable) -> SquareMatrix:
        return SquareMatrix([[f(v) for v in row] for row in self.rows])

    def scale(self, c) -> SquareMatrix:
        return SquareMatrix([[0 if _is_zero(v) else c * v for v in row] for row in self.rows])

    def trace(self):
        total = 0
        for i in range(self.n):
            total = total + self.rows[i][i]
        return total

    def __matmul__(self, other: SquareMatrix) -> SquareMatrix:
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        n = self.n
        # sparse row lists; zero products are never formed
        right = [[(k, v) for k, v in enumerate(row) if not _is_zero(v)] for row in other.rows]
        out = []
        for row in self.rows:
            acc: dict[int, object] = {}
            for k, a in enumerate(row):
                if _is_zero(a):
                    continue
                for j, b in right[k]:
                    p = a * b
                    acc[j] = acc[j] + p if j in acc else p
            out.append([acc.get(j, 0) for j in range(n)])
        return SquareMatrix(out)

    def __add__(self, other: SquareMatrix) -> SquareMatrix:
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        return SquareMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def add_scalar_diagonal(self, c) -> SquareMatrix:
        return SquareMatrix(
            [[v + c if i == j else v for j, v in enumerate(row)] for i, row in enumerate(self.rows)]
        )

    def power(self, k: int) -> SquareMatrix:
        result = SquareMatrix.identity(self.n)
        for _ in range(k):
            result = result @ self
        return result

    def is_zero(self) -> bool:
        return all(_is_zero(v) for row in self.rows for v in row)

    def diagonal_conjugate(self, d: Sequence) -> SquareMatrix:
        """``D M D^-1`` for ``D = diag(d)``."""
        if len(d) != self.n:
            raise DimensionMismatch("diagonal length must match matrix size")
        return SquareMatrix(
            [
                [0 if _is_zero(v) else _div(d[i] * v, d[j]) for j, v in enumerate(row)]
                for i, row in enumerate(self.rows)
            ]
        )

    def submatrix(self, start: int, stop: int) -> SquareMatrix:
        return SquareMatrix([row[start:stop] for row in self.rows[start:stop]])


def block_diag(blocks: Sequence[SquareMatrix]) -> SquareMatrix:
    if not blocks:
        raise EmptyList("block_diag of no blocks")
    n = sum(b.n for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for row in b.rows:
            rows.append([0] * offset + list(row) + [0] * (n - offset - b.n))
        offset += b.n
    return SquareMatrix(rows)


@dataclass(frozen=True)
class MonicPoly:
    """``t^n + c_{n-1} t^{n-1} + ... + c_0``; ``coeffs[k]`` is the coefficient of ``t^k``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_tidy(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def full(self) -> list:
        """All coefficients including the leading 1, lowest degree first."""
        return list(self.coeffs) + [1]

    @classmethod
    def from_full(cls, full: Sequence) -> MonicPoly:
        if full[-1] != 1:
            raise ValueError("polynomial is not monic")
        return cls(tuple(full[:-1]))

    @classmethod
    def from_roots(cls, roots: Iterable) -> MonicPoly:
        roots = list(roots)
        return poly_product([cls((-r,)) for r in roots]) if roots else cls(())

    def __mul__(self, other: MonicPoly) -> MonicPoly:
        a, b = self.full(), other.full()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if _is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return MonicPoly.from_full(out)

    def __call__(self, t):
        acc = 1
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def approx_equal(self, other: MonicPoly, rel_tol: float = 1e-9) -> bool:
        if self.degree != other.degree:
            return False
        for a, b in zip(self.coeffs, other.coeffs):
            a, b = complex(a), complex(b)
            if abs(a - b) > rel_tol * max(1.0, abs(a), abs(b)):
                return False
        return True

    def matches(self, other: MonicPoly, rel_tol: float = 1e-9) -> bool:
        """Exact equality when both sides are exact, else ``approx_equal``."""
        if all(is_exact(c) for c in self.coeffs + other.coeffs):
            return self == other
        return self.approx_equal(other, rel_tol)

    def __str__(self) -> str:
        parts = [f"t^{self.degree}"]
        for k in range(self.degree - 1, -1, -1):
            c = self.coeffs[k]
            if _is_zero(c):
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(parts)


def char_poly(m: SquareMatrix) -> MonicPoly:
    """``det(tI - M)`` by the Faddeev-LeVerrier recurrence.

    ``M_1 = I``, ``c_{n-k} = -tr(M M_k)/k``, ``M_{k+1} = M M_k + c_{n-k} I``.
    """
    n = m.n
    coeffs = [0] * n
    mk = SquareMatrix.identity(n)
    for k in range(1, n + 1):
        amk = m @ mk
        c = _div_int(-amk.trace(), k)
        coeffs[n - k] = c
        if k < n:
            mk = amk.add_scalar_diagonal(c)
    return MonicPoly(tuple(coeffs))


def det_bruteforce(m: SquareMatrix):
    """Determinant by cofactor expansion along the first row (n <= 9)."""
    if m.n > BRUTEFORCE_MAX_N:
        raise DimensionTooLarge(f"cofactor determinant limited to n <= {BRUTEFORCE_MAX_N}")
    return _cofactor(m.rows, tuple(range(m.n)))


def _cofactor(rows, cols: tuple[int, ...]):
    r = len(rows) - len(cols)
    if len(cols) == 1:
        return rows[r][cols[0]]
    total = 0
    for k, c in enumerate(cols):
        a = rows[r][c]
        if _is_zero(a):
            continue
        minor = _cofactor(rows, cols[:k] + cols[k + 1:])
        term = a * minor
        total = total + term if k % 2 == 0 else total - term
    return total


def det_leibniz(m: SquareMatrix):
    """Permutation-sum determinant; a second independent oracle for tiny n."""
    if m.n > 7:
        raise DimensionTooLarge("Leibniz determinant limited to n <= 7")
    total = 0
    for perm in permutations(range(m.n)):
        sign = 1
        seen = list(perm)
        for i in range(len(seen)):
            for j in range(i + 1, len(seen)):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term = term * m.rows[i][j]
            if _is_zero(term):
                break
        total = total + term
    return total


def poly_product(ps: Sequence[MonicPoly]) -> MonicPoly:
    """Product of monic polynomials, by a balanced product tree."""
    ps = list(ps)
    if not ps:
        raise EmptyList("poly_product of an empty list")
    while len(ps) > 1:
        nxt = [ps[i] * ps[i + 1] for i in range(0, len(ps) - 1, 2)]
        if len(ps) % 2:
            nxt.append(ps[-1])
        ps = nxt
    return ps[0]
