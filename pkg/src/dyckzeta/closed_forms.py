"""Closed forms for one-vertex loop graphs, the Fibonacci-Dyck shift, and the
two-vertex family with adjacency [[a, b], [c, 0]].

Every closed form here is cross-checked at construction time against the
generic series engine, so a transcription slip fails loudly rather than
silently producing plausible numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .entropy import EntropyReport, entropy_markov_dyck, eval_code_gf
from .errors import BranchError, DomainError, InternalInconsistency, NoRoot
from .graphs import Graph, IntPolynomial
from .series import Series, markov_dyck_zeta


def loop_graph(n_loops: int, name: str | None = None) -> Graph:
    """One vertex with n_loops parallel loops."""
    if n_loops < 1:
        raise ValueError("need at least one loop")
    return Graph(1, [(0, 0)] * n_loops, name=name or f"loops-{n_loops}")


def family_graph(a: int, b: int, c: int, name: str | None = None) -> Graph:
    """Two vertices with adjacency [[a, b], [c, 0]]."""
    return build_family(a, b, c).graph(name)


@dataclass(frozen=True)
class FamilyParams:
    """Positive integer parameters of the two-vertex family."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("family parameters must be positive integers")

    def graph(self, name: str | None = None) -> Graph:
        a, b, c = self.a, self.b, self.c
        edges = [(0, 0)] * a + [(0, 1)] * b + [(1, 0)] * c
        return Graph(2, edges, name=name or f"family-{a}-{b}-{c}")


def build_family(a: int, b: int, c: int) -> FamilyParams:
    return FamilyParams(int(a), int(b), int(c))


def dyck_gf_and_zeta(n_loops: int, order: int):
    """Code generating function and zeta series of the one-vertex shift:
    g = (1 - sqrt(1 - 4Nz^2))/2 and zeta = 2(1 + s)/(1 - 2Nz + s)^2 with
    s = sqrt(1 - 4Nz^2).  Asserted equal to the generic engine."""
    if n_loops < 1:
        raise ValueError("need at least one loop")
    s = Series([1, 0, -4 * n_loops], order).sqrt()
    g = (Series.one(order) - s) / 2
    num = (Series.one(order) + s) * 2
    den = Series.one(order) - Series([0, 2 * n_loops], order) + s
    zeta = num / (den * den)
    if order >= 2 and zeta != markov_dyck_zeta(loop_graph(n_loops), order):
        raise InternalInconsistency("one-vertex closed form disagrees with the engine")
    return g, zeta


_TREE_DOMAIN = 2.0 / (3.0 * math.sqrt(3.0))


def cubic_tree_value(x: float) -> float:
    """The branch of t^3 - t + x = 0 vanishing at 0, via the trigonometric
    form (2/sqrt 3) sin(arcsin(3 sqrt(3) x / 2) / 3), for 0 <= x <= 2/(3 sqrt 3)."""
    if x < 0 or x > _TREE_DOMAIN * (1 + 1e-12):
        raise DomainError(f"x={x!r} outside [0, 2/(3*sqrt(3))]")
    arg = min(1.0, 1.5 * math.sqrt(3.0) * x)
    return 2.0 / math.sqrt(3.0) * math.sin(math.asin(arg) / 3.0)


def cubic_tree_series(order: int) -> Series:
    """Series solution of t = z + t^3 (ternary-tree counts on odd powers)."""
    t = Series.zero(order)
    z = Series.z(order)
    for _ in range(order // 2 + 2):
        nxt = z + t * t * t
        if nxt == t:
            break
        t = nxt
    return t


FIBONACCI_ADJACENCY = ((1, 1), (1, 0))


def fibonacci_graph(name: str = "fibonacci") -> Graph:
    return Graph(2, [(0, 0), (0, 1), (1, 0)], name=name)


def fibonacci_dyck_zeta(order: int) -> Series:
    """Zeta series of the Fibonacci-Dyck shift: t/(z (2t^2 + t - 1)^2) with
    t = cubic_tree_series; the 1/z prefactor is an explicit valuation shift.
    Asserted equal to the generic engine."""
    t = cubic_tree_series(order + 1)
    num = t.shift_down(1)
    den = t * t * 2 + t - Series.one(order + 1)
    zeta = (num / (den * den)).truncate(order)
    if order >= 2 and zeta != markov_dyck_zeta(fibonacci_graph(), order):
        raise InternalInconsistency("Fibonacci-Dyck closed form disagrees with the engine")
    return zeta


def fibonacci_dyck_entropy(tol: float = 1e-10) -> EntropyReport:
    """Entropy 3 log 2 - log 3 of the Fibonacci-Dyck shift, with the generic
    determinant root asserted to be 3/8 within tol."""
    generic = entropy_markov_dyck(fibonacci_graph(), tol=tol)
    if abs(generic.root - 0.375) > tol:
        raise InternalInconsistency(
            f"generic entropy root {generic.root} is not 3/8 within {tol}"
        )
    return EntropyReport(
        value=3 * math.log(2) - math.log(3),
        root=0.375,
        bracket=(0.375 - tol, 0.375 + tol),
        residual=0.0,
        method="closed_form",
        iterations=generic.iterations,
        closed_form="3*log(2) - log(3)",
    )


class CubicBranch:
    """The branch through the origin of the family code-series cubic
    a g^3 - (a+c) g^2 + c (1 + (c-b) z^2) g - c^2 z^2 = 0.

    Numeric values come from damped Newton seeded by the exact series
    solution.  The classical trigonometric discriminant helpers mu, nu are
    kept as documented fields only: at a = b = c = 1 their arccos argument
    leaves [-1, 1], so the branch is always evaluated from the cubic itself.
    """

    SERIES_ORDER = 32

    def __init__(self, params: FamilyParams):
        a, b, c = params.a, params.b, params.c
        self.params = params
        # coefficients of the cubic in g, each a polynomial in z
        self.coeff3 = IntPolynomial([a])
        self.coeff2 = IntPolynomial([-(a + c)])
        self.coeff1 = IntPolynomial([c, 0, c * (c - b)])
        self.coeff0 = IntPolynomial([0, 0, -c * c])
        # retained-for-reference trig auxiliaries (unused by the solver)
        self.mu = IntPolynomial([(c - a) ** 2 + a * c, 0, -3 * a * c * (c - b)])
        self.nu = IntPolynomial(
            [2 * (a + c) ** 3 - 9 * a * c * (a + b), 0, -(c - b + 27 * a * a * c * c)]
        )
        self.series = _family_code_series(a, b, c, self.SERIES_ORDER)

    def residual(self, y: float, x: float) -> float:
        a, b, c = self.params.a, self.params.b, self.params.c
        return a * y**3 - (a + c) * y**2 + c * (1 + (c - b) * x * x) * y - c * c * x * x

    def value(self, x: float, residual_tol: float = 1e-12) -> float:
        """Branch value at x by series-seeded damped Newton on the cubic."""
        if x == 0:
            return 0.0
        a, c = self.params.a, self.params.c
        c1 = self.coeff1(x)
        c0 = self.coeff0(x)

        def f(y):
            return ((a * y - (a + c)) * y + c1) * y + c0

        def df(y):
            return (3 * a * y - 2 * (a + c)) * y + c1

        y = self.series.eval_float(x)
        fy = f(y)
        for _ in range(200):
            if abs(fy) <= residual_tol:
                break
            d = df(y)
            if d == 0.0:
                raise BranchError(f"vanishing derivative at y={y!r}, x={x!r}")
            step = fy / d
            improved = False
            while abs(step) > 1e-18:
                cand = y - step
                fc = f(cand)
                if abs(fc) < abs(fy):
                    y, fy = cand, fc
                    improved = True
                    break
                step *= 0.5
            if not improved:
                break
        if abs(fy) > residual_tol:
            raise BranchError(
                f"Newton failed to reach residual {residual_tol} at x={x!r} "
                f"(residual {fy!r}); likely outside the real-branch domain"
            )
        engine = eval_code_gf(self.params.graph(), x)
        if engine is None:
            raise BranchError(
                f"x={x!r} is outside the real-branch domain "
                "(the code system diverges there)"
            )
        if abs(engine[1] - y) > 1e-9:
            raise BranchError(
                f"branch tracking failure at x={x!r}: cubic root {y!r} vs "
                f"code-system value {engine[1]!r}"
            )
        return y


@lru_cache(maxsize=None)
def _family_code_series(a: int, b: int, c: int, order: int) -> Series:
    """Series solution of the family cubic vanishing at the origin.

    Rewrites the cubic as g = (c^2 z^2 + (a+c) g^2 - a g^3)/(c (1+(c-b) z^2))
    and iterates; each round is a z-adic contraction by z^2.
    """
    denom = Series([c, 0, c * (c - b)], order)
    z2 = Series([0, 0, c * c], order)
    g = Series.zero(order)
    for _ in range(order // 2 + 2):
        nxt = (z2 + g * g * (a + c) - g * g * g * a) / denom
        if nxt == g:
            break
        g = nxt
    return g


@lru_cache(maxsize=None)
def _cubic_branch(a: int, b: int, c: int) -> CubicBranch:
    return CubicBranch(FamilyParams(a, b, c))


def family_code_gf(params: FamilyParams, x: float) -> float:
    """Numeric second-vertex code generating function of the family."""
    return _cubic_branch(params.a, params.b, params.c).value(x)


def family_zeta(params: FamilyParams, order: int) -> Series:
    """Family zeta series c g (1-g) / (a g^2 - (a + c(1+b) z) g + c z)^2,
    assembled from the cubic's series solution and asserted against the
    generic engine."""
    a, b, c = params.a, params.b, params.c
    work = order + 2
    g = _family_code_series(a, b, c, work)
    one = Series.one(work)
    num = (g * (one - g)) * c
    lin = g * g * a - g * Series([a, c * (1 + b)], work) + Series([0, c], work)
    den = lin * lin
    zeta = (num.shift_down(2) / den.shift_down(2)).truncate(order)
    if order >= 2 and zeta != markov_dyck_zeta(params.graph(), order):
        raise InternalInconsistency("family closed-form zeta disagrees with the engine")
    return zeta


def family_entropy_poly(params: FamilyParams) -> IntPolynomial:
    """The cubic whose smallest positive root is e^{-entropy} for the family."""
    a, b, c = params.a, params.b, params.c
    return IntPolynomial(
        [
            a - c,
            b * c - a - (1 + a) * (a - c),
            c * ((1 + b) * (1 + c) - 2 * a * b) + a * (1 + a - b),
            (1 + c) * (a * (b - c) - c * (1 + b) ** 2),
        ]
    )


def _bisect_poly(poly: IntPolynomial, lo: float, hi: float, tol: float):
    flo = poly(lo)
    count = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = poly(mid)
        count += 1
        if fm == 0.0:
            return mid, count
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), count


def _poly_roots_in_unit_interval(poly: IntPolynomial, tol: float):
    """Roots of an integer polynomial in (0, 1]: grid scan at 1/1024 plus
    bisection, with tangent (even-multiplicity) roots recovered as critical
    points where |P| < 1e-14."""
    grid = 1024
    roots = []
    evals = 0

    def scan(p: IntPolynomial, accept):
        nonlocal evals
        prev_x, prev_val = Fraction(0), p(Fraction(0))
        for k in range(1, grid + 1):
            x = Fraction(k, grid)
            val = p(x)
            evals += 1
            if val == 0:
                accept(float(x), exact=True)
            elif prev_val != 0 and (val > 0) != (prev_val > 0):
                root, n = _bisect_poly(p, float(prev_x), float(x), tol)
                evals += n
                accept(root, exact=False)
            if val != 0:
                prev_x, prev_val = x, val

    def accept_root(r, exact):
        if r > 1e-9:
            roots.append(r)

    def accept_critical(r, exact):
        if r > 1e-9 and abs(poly(r)) < 1e-14:
            roots.append(r)

    scan(poly, accept_root)
    if poly.degree >= 2:
        scan(poly.derivative(), accept_critical)
    return sorted(roots), evals


def _branch_witnessed(params: FamilyParams, z: float) -> bool:
    """Whether the origin branch of the code cubic actually solves the zeta
    denominator quadratic at z.

    The entropy polynomial is an eliminant: every entropy root is among its
    positive roots, but some parameter choices (e.g. (1,2,2)) produce extra
    positive roots where only a spurious cubic root meets the quadratic.
    Those are not zeta singularities and must be skipped.
    """
    a, b, c = params.a, params.b, params.c
    try:
        g = family_code_gf(params, z)
    except BranchError:
        return False
    return abs(a * g * g - (a + c * (1 + b) * z) * g + c * z) < 1e-6


def family_entropy(params: FamilyParams, tol: float = 1e-12) -> EntropyReport:
    """Entropy of the family shift as -log of the smallest positive
    branch-witnessed root of the entropy polynomial.

    Fast paths: c = a + b gives log(1 + a + b) and b = 1, c = a gives
    log(a+1) - log(a+2) + log(a+3); both are still verified against the
    computed root.
    """
    a, b, c = params.a, params.b, params.c
    poly = family_entropy_poly(params)
    roots, evals = _poly_roots_in_unit_interval(poly, tol)
    witnessed = [r for r in roots if _branch_witnessed(params, r)]
    if not witnessed:
        raise NoRoot(
            f"entropy polynomial for {params} has no branch-witnessed root in "
            f"(0, 1] (candidates: {roots})"
        )
    root = witnessed[0]
    value = -math.log(root)
    closed = None
    if c == a + b:
        expect = 1.0 / (1 + a + b)
        if abs(root - expect) > 1e-10:
            raise InternalInconsistency(
                f"closed-form root 1/{1 + a + b} vs computed {root!r}"
            )
        root = expect
        value = math.log(1 + a + b)
        closed = f"log({1 + a + b})"
    elif b == 1 and c == a:
        expect = math.log(a + 1) - math.log(a + 2) + math.log(a + 3)
        if abs(value - expect) > 1e-10:
            raise InternalInconsistency(
                f"closed-form value {expect} vs computed {value!r}"
            )
        value = expect
        closed = f"log({a + 1}) - log({a + 2}) + log({a + 3})"
    return EntropyReport(
        value=value,
        root=root,
        bracket=(root - tol, root + tol),
        residual=abs(poly(root)),
        method="closed_form",
        iterations=evals,
        closed_form=closed,
    )
