"""Exact truncated power series, the code-system solver, and zeta formulas.

Everything here is Fraction arithmetic over arbitrary-precision integers; the
integrality of periodic-point counts is asserted, not assumed, which turns
exactness into a correctness test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    InternalInconsistency,
    InvalidMatrix,
    NotInvertible,
)
from .graphs import Graph

_MAX_DET_DIM = 12


class Series:
    """Truncated formal power series with exact rational coefficients.

    coeffs[n] is the coefficient of z^n; the truncation order (inclusive) is
    len(coeffs) - 1.  Binary operations truncate to the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            cs = cs[: order + 1] + [Fraction(0)] * (order + 1 - len(cs))
        elif not cs:
            raise ValueError("series needs an order or at least one coefficient")
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([1], order)

    @classmethod
    def z(cls, order: int) -> "Series":
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        return self.coeffs[n]

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, order)

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _common(self, other):
        if not isinstance(other, Series):
            other = Series([other], self.order)
        n = min(self.order, other.order)
        return other, n

    def __add__(self, other):
        other, n = self._common(other)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    __radd__ = __add__

    def __sub__(self, other):
        other, n = self._common(other)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __rsub__(self, other):
        other, n = self._common(other)
        return Series([other.coeffs[i] - self.coeffs[i] for i in range(n + 1)])

    def __neg__(self):
        return Series([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self.coeffs])
        other, n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return Series(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c / Fraction(other) for c in self.coeffs])
        other, n = self._common(other)
        if other.coeffs[0] == 0:
            raise NotInvertible("division by a series with zero constant term")
        q = [Fraction(0)] * (n + 1)
        b0 = other.coeffs[0]
        for k in range(n + 1):
            s = self.coeffs[k]
            for j in range(k):
                s -= q[j] * other.coeffs[k - j]
            q[k] = s / b0
        return Series(q)

    def __rtruediv__(self, other):
        return Series([other], self.order) / self

    def log(self) -> "Series":
        """log of a series with constant term 1, via n a_n = sum k L_k a_{n-k}."""
        if self.coeffs[0] != 1:
            raise DomainError("log requires constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            s = m * self.coeffs[m]
            for k in range(1, m):
                s -= k * out[k] * self.coeffs[m - k]
            out[m] = Fraction(s, m)
        return Series(out)

    def sqrt(self) -> "Series":
        """Square root of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise DomainError("sqrt requires constant term 1")
        n = self.order
        s = [Fraction(0)] * (n + 1)
        s[0] = Fraction(1)
        for m in range(1, n + 1):
            acc = self.coeffs[m]
            for k in range(1, m):
                acc -= s[k] * s[m - k]
            s[m] = acc / 2
        return Series(s)

    def compose_z_squared(self) -> "Series":
        """Substitute z -> z^2, truncated to the same order."""
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for k, c in enumerate(self.coeffs):
            if 2 * k > n:
                break
            out[2 * k] = c
        return Series(out)

    def shift_down(self, k: int) -> "Series":
        """Divide by z^k; the k lowest coefficients must vanish exactly."""
        if any(self.coeffs[i] != 0 for i in range(min(k, self.order + 1))):
            raise DomainError(f"series is not divisible by z^{k}")
        return Series(self.coeffs[k:] + (Fraction(0),) * k)

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def is_nonneg_integers(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coeffs)

    def to_strings(self):
        """Exact 'p/q' coefficient strings for report serialization."""
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order > 7 else ""
        return f"Series([{head}{tail}]; order={self.order})"


class SeriesMatrix:
    """Square matrix of Series sharing one truncation order."""

    __slots__ = ("rows", "order")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidMatrix("series matrix must be square")
        if n == 0:
            raise InvalidMatrix("series matrix must be nonempty")
        order = min(s.order for r in rows for s in r)
        self.rows = [[s.truncate(order) for s in r] for r in rows]
        self.order = order

    @property
    def dim(self):
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, order: int) -> "SeriesMatrix":
        return cls(
            [[Series.one(order) if i == j else Series.zero(order) for j in range(n)] for i in range(n)]
        )

    def __sub__(self, other):
        if not isinstance(other, SeriesMatrix) or other.dim != self.dim:
            raise InvalidMatrix("dimension mismatch")
        return SeriesMatrix(
            [[self.rows[i][j] - other.rows[i][j] for j in range(self.dim)] for i in range(self.dim)]
        )

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            if other.dim != self.dim:
                raise InvalidMatrix("dimension mismatch")
            n = self.dim
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = Series.zero(min(self.order, other.order))
                    for k in range(n):
                        acc = acc + self.rows[i][k] * other.rows[k][j]
                    row.append(acc)
                out.append(row)
            return SeriesMatrix(out)
        return SeriesMatrix([[s * other for s in r] for r in self.rows])

    def det(self) -> Series:
        """Cofactor expansion memoized on remaining columns; dim guarded."""
        n = self.dim
        if n > _MAX_DET_DIM:
            raise InvalidMatrix(f"determinant guard: dimension {n} > {_MAX_DET_DIM}")
        order = self.order
        cache = {}

        def go(cols: frozenset) -> Series:
            if not cols:
                return Series.one(order)
            hit = cache.get(cols)
            if hit is not None:
                return hit
            r = n - len(cols)
            acc = Series.zero(order)
            sign = 1
            for c in sorted(cols):
                entry = self.rows[r][c]
                if any(entry.coeffs):
                    term = entry * go(cols - {c})
                    acc = acc + term if sign > 0 else acc - term
                sign = -sign
            cache[cols] = acc
            return acc

        return go(frozenset(range(n)))


def diagonal_matrix(entries, order: int) -> SeriesMatrix:
    n = len(entries)
    return SeriesMatrix(
        [
            [entries[i].truncate(order) if i == j else Series.zero(order) for j in range(n)]
            for i in range(n)
        ]
    )


def adjacency_z_matrix(g: Graph, order: int) -> SeriesMatrix:
    """The matrix A z as a SeriesMatrix."""
    n = g.vertex_count
    return SeriesMatrix(
        [[Series([0, g.adjacency[i][j]], order) for j in range(n)] for i in range(n)]
    )


@dataclass(frozen=True)
class CodeSystemSolution:
    """Per-vertex balanced-code series g_v and their geometric stars 1/(1-g_v)."""

    code: tuple
    star: tuple

    @property
    def order(self):
        return self.code[0].order


def solve_code_system(g: Graph, order: int) -> CodeSystemSolution:
    """Unique per-vertex solution of g_u = z^2 sum_v A[u][v] / (1 - g_v).

    Fixed-point iteration from 0; every round is a z-adic contraction by z^2,
    so ceil(order/2)+1 rounds reach stability through the truncation order.
    Coefficients are asserted to be nonnegative integers.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    n = g.vertex_count
    z2 = Series([0, 0, 1], order)
    cur = [Series.zero(order) for _ in range(n)]
    rounds = order // 2 + 2
    for _ in range(rounds):
        stars = [Series.one(order) / (Series.one(order) - gv) for gv in cur]
        nxt = []
        for u in range(n):
            acc = Series.zero(order)
            for v in range(n):
                m = g.adjacency[u][v]
                if m:
                    acc = acc + stars[v] * m
            nxt.append(z2 * acc)
        if nxt == cur:
            break
        cur = nxt
    for u, s in enumerate(cur):
        if not s.is_nonneg_integers():
            raise InternalInconsistency(f"code series at vertex {u} has a non-integer or negative coefficient")
        if s.coeffs[0] != 0:
            raise InternalInconsistency("code series must vanish at 0")
    stars = [Series.one(order) / (Series.one(order) - gv) for gv in cur]
    return CodeSystemSolution(code=tuple(cur), star=tuple(stars))


def zeta_from_code_matrix(h: SeriesMatrix) -> Series:
    """Zeta series 1/det(I - H) for a code-block generating matrix H."""
    if not isinstance(h, SeriesMatrix):
        raise InvalidMatrix("expected a SeriesMatrix")
    eye = SeriesMatrix.identity(h.dim, h.order)
    return Series.one(h.order) / (eye - h).det()


def circular_code_zeta(gc: Series) -> Series:
    """Zeta series 1/(1 - g) for a single circular code with g(0) = 0."""
    if gc.coeffs[0] != 0:
        raise DomainError("code generating function must vanish at 0")
    return Series.one(gc.order) / (Series.one(gc.order) - gc)


def markov_dyck_zeta(g: Graph, order: int) -> Series:
    """Zeta series of the Markov-Dyck shift of g.

    Computed by two determinant routes that must agree exactly:
      det(D*) / det(I - D* A z)^2   and   1 / det((I - D - Az)(I - D* A z)),
    where D = diag(g_v) and D* = diag(1/(1 - g_v)) from the code system.
    """
    sol = solve_code_system(g, order)
    n = g.vertex_count
    eye = SeriesMatrix.identity(n, order)
    az = adjacency_z_matrix(g, order)
    dmat = diagonal_matrix(list(sol.code), order)
    dstar = diagonal_matrix(list(sol.star), order)
    det_star_az = (eye - dstar * az).det()
    form1 = dstar.det() / (det_star_az * det_star_az)
    det_d_az = (eye - dmat - az).det()
    form2 = Series.one(order) / (det_d_az * det_star_az)
    if form1 != form2:
        raise InternalInconsistency("the two determinant forms of the zeta function disagree")
    return form1


def code_block_matrix(g: Graph, order: int) -> SeriesMatrix:
    """Diagnostic matrix D(A,z) (I - Az)^{-1} of plus-completed code blocks."""
    sol = solve_code_system(g, order)
    n = g.vertex_count
    eye = SeriesMatrix.identity(n, order)
    az = adjacency_z_matrix(g, order)
    m = eye - az
    det = m.det()
    # inverse via adjugate: inv[i][j] = cofactor(j, i) / det
    inv_rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [m.rows[a][b] for b in range(n) if b != i]
                for a in range(n)
                if a != j
            ]
            cof = SeriesMatrix(minor).det() if n > 1 else Series.one(order)
            if (i + j) % 2:
                cof = -cof
            row.append(cof / det)
        inv_rows.append(row)
    return diagonal_matrix(list(sol.code), order) * SeriesMatrix(inv_rows)


def periodic_counts_from_zeta(zeta: Series) -> list[int]:
    """Periodic-point counts n * [z^n] log zeta for n = 1..order.

    Raises InternalInconsistency unless every count is a nonnegative integer.
    """
    if zeta.coeffs[0] != 1:
        raise DomainError("zeta series must have constant term 1")
    logz = zeta.log()
    counts = []
    for n in range(1, zeta.order + 1):
        c = n * logz.coeffs[n]
        if c.denominator != 1 or c < 0:
            raise InternalInconsistency(f"periodic count at n={n} is {c}, not a nonnegative integer")
        counts.append(int(c))
    return counts
