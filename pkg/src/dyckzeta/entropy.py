"""Numeric entropy: determinant-root certification, periodic estimates,
switch-restricted subsystems, and per-vertex lower bounds.

Roots are certified by sign-change brackets plus residuals; polynomial data
is evaluated in exact rational arithmetic wherever a float argument allows it
(the float is converted to the exact binary rational it denotes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateMinor,
    DomainError,
    InternalInconsistency,
    NoData,
    NoRoot,
    NotIrreducible,
    SingularityBeforeRoot,
)
from .graphs import Graph, char_poly, char_poly_minor, perron_rho

DEFAULT_ROOT_TOL = 1e-10
DEFAULT_FP_TOL = 1e-14
DEFAULT_MAX_ITER = 1_000_000


@dataclass(frozen=True)
class EntropyReport:
    """Entropy value with its certification data.

    value is in natural-log units and equals -log(root); bracket is a
    certified sign-change (or exact-hit) interval around the root.
    """

    value: float
    root: float
    bracket: tuple
    residual: float
    method: str
    iterations: int
    closed_form: str | None = None

    def to_dict(self):
        d = {
            "value": self.value,
            "root": self.root,
            "bracket_lo": self.bracket[0],
            "bracket_hi": self.bracket[1],
            "residual": self.residual,
            "method": self.method,
            "iterations": self.iterations,
        }
        if self.closed_form is not None:
            d["closed_form"] = self.closed_form
        return d


@dataclass(frozen=True)
class BoundReport:
    """Per-vertex entropy lower bound for the switch-restricted subsystem."""

    vertex: int
    rho: float
    q_at_rho2: float
    bound: float | None
    applicable: bool
    branch: str | None
    note: str | None = None

    def to_dict(self):
        return {
            "vertex": self.vertex,
            "rho": self.rho,
            "q_at_rho2": self.q_at_rho2,
            "bound": self.bound,
            "applicable": self.applicable,
            "branch": self.branch,
            "note": self.note,
        }


@dataclass(frozen=True)
class CombinedBoundSummary:
    """Best whole-shift lower bound, valid when rho < 1/4."""

    applicable: bool
    rho: float
    value: float | None = None
    best_vertex: int | None = None

    def to_dict(self):
        return {
            "applicable": self.applicable,
            "rho": self.rho,
            "value": self.value,
            "best_vertex": self.best_vertex,
        }


def eval_code_gf(g: Graph, x: float, tol: float = DEFAULT_FP_TOL,
                 max_iter: int = DEFAULT_MAX_ITER):
    """Per-vertex code generating function values at z = x, or None.

    Fixed-point iteration from 0; iterates increase monotonically to the
    power-series sum.  Returns None (divergent) when a component reaches 1
    or the iteration budget runs out before the sup-norm change drops
    under tol.
    """
    if x <= 0:
        raise DomainError("evaluation point must be positive")
    n = g.vertex_count
    adj = g.adjacency
    x2 = x * x
    cur = [0.0] * n
    for _ in range(max_iter):
        nxt = []
        for u in range(n):
            acc = 0.0
            row = adj[u]
            for v in range(n):
                m = row[v]
                if m:
                    acc += m / (1.0 - cur[v])
            nxt.append(x2 * acc)
        delta = 0.0
        for u in range(n):
            if nxt[u] < cur[u] - 1e-12:
                raise InternalInconsistency("fixed-point iterates must be nondecreasing")
            if nxt[u] >= 1.0:
                return None
            delta = max(delta, nxt[u] - cur[u])
        cur = nxt
        if delta < tol:
            return cur
    return None


def _det_float(rows) -> float:
    """Determinant by Gaussian elimination with partial pivoting."""
    m = [list(r) for r in rows]
    n = len(m)
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0.0:
            return 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1.0 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def code_system_det(g: Graph, x: float, tol: float = DEFAULT_FP_TOL,
                    max_iter: int = DEFAULT_MAX_ITER):
    """det(I - D*(x) A x) at a real point, or None when evaluation diverges."""
    vals = eval_code_gf(g, x, tol=tol, max_iter=max_iter)
    if vals is None:
        return None
    n = g.vertex_count
    rows = []
    for u in range(n):
        dstar = 1.0 / (1.0 - vals[u])
        rows.append(
            [(1.0 if u == v else 0.0) - dstar * g.adjacency[u][v] * x for v in range(n)]
        )
    return _det_float(rows)


def entropy_markov_dyck(g: Graph, tol: float = DEFAULT_ROOT_TOL,
                        fp_tol: float = DEFAULT_FP_TOL,
                        max_iter: int = DEFAULT_MAX_ITER) -> EntropyReport:
    """Entropy as -log of the first positive root of det(I - D*(z) A z).

    Scans upward with step halving on evaluation failure, brackets the first
    sign change and bisects to width <= tol.  If the divergence frontier of
    the code system is reached before any sign change, the root cannot be
    certified and SingularityBeforeRoot is raised (callers may fall back to
    entropy_periodic_estimate).
    """
    if not g.is_strongly_connected():
        raise NotIrreducible("entropy requires a strongly connected graph")
    rho = perron_rho(g, tol)
    evals = 0

    def phi(x):
        nonlocal evals
        evals += 1
        return code_system_det(g, x, tol=fp_tol, max_iter=max_iter)

    lo, flo = 0.0, 1.0
    hi = fhi = None
    step = max(rho / 8.0, 1e-6)
    while hi is None:
        if step < 1e-15:
            raise SingularityBeforeRoot(
                f"no sign change before the divergence frontier (reached x={lo!r})"
            )
        cand = lo + step
        val = phi(cand)
        if val is None:
            step /= 2.0
            continue
        if val > 0.0:
            lo, flo = cand, val
        elif val < 0.0:
            hi, fhi = cand, val
        else:
            lo = hi = cand
            flo = fhi = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = phi(mid)
        if val is None or val < 0.0:
            hi = mid
        elif val > 0.0:
            lo = mid
        else:
            lo = hi = mid
            break
    root = 0.5 * (lo + hi)
    if root > rho + 10 * tol:
        raise InternalInconsistency(
            f"entropy root {root} exceeds the edge-shift bound rho={rho}"
        )
    res = phi(root)
    return EntropyReport(
        value=-math.log(root),
        root=root,
        bracket=(lo, hi),
        residual=res if res is not None else float("nan"),
        method="det_root",
        iterations=evals,
    )


def entropy_periodic_estimate(pi) -> list[float]:
    """The sequence (1/n) log Pi_n for the entries with Pi_n >= 1."""
    vals = [math.log(p) / n for n, p in enumerate(pi, start=1) if p >= 1]
    if not vals:
        raise NoData("all periodic counts are zero")
    return vals


def first_return_value(g: Graph, v: int, x: float) -> float:
    """First-return-cycle generating function at x, as 1 - p(x)/p_v(x)."""
    p = char_poly(g)
    pv = char_poly_minor(g, v)
    denom = pv(x)
    if denom == 0:
        raise DegenerateMinor(f"deleted-vertex polynomial vanishes at {x}")
    return 1.0 - p(x) / denom


def switch_system_entropy(g: Graph, v: int, tol: float = DEFAULT_ROOT_TOL) -> EntropyReport:
    """Entropy of the subsystem whose sign switches all happen at vertex v.

    Solves 2 fr(z) - sqrt(1 - 4 fr(z^2)) = 1 on (0, rho] by bisection, where
    fr is the first-return-cycle generating function at v evaluated through
    its rational form.
    """
    g.check_vertex(v)
    if not g.is_strongly_connected():
        raise NotIrreducible("subsystem entropy requires a strongly connected graph")
    rho = perron_rho(g, tol)
    p = char_poly(g)
    pv = char_poly_minor(g, v)

    def fr(z):
        return 1.0 - p(z) / pv(z)

    def psi(z):
        d = 1.0 - 4.0 * fr(z * z)
        if d < 0.0:
            return None
        return 2.0 * fr(z) - math.sqrt(d) - 1.0

    steps = 2048
    prev = 0.0
    bracket = None
    evals = 0
    for k in range(1, steps + 1):
        z = rho * k / steps
        val = psi(z)
        evals += 1
        if val is None:
            raise NoRoot(
                f"domain edge 1 - 4 fr(z^2) < 0 reached at z={z!r} before a root; "
                f"searched (0, {rho!r}]"
            )
        if val == 0.0:
            return EntropyReport(
                value=-math.log(z), root=z, bracket=(z, z), residual=0.0,
                method="switch_kappa", iterations=evals,
            )
        if val > 0.0:
            bracket = (prev, z)
            break
        prev = z
    if bracket is None:
        raise NoRoot(f"no root of the switch-system equation in (0, {rho!r}]")
    lo, hi = bracket
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        val = psi(mid)
        evals += 1
        if val is None or val > 0.0:
            hi = mid
        elif val < 0.0:
            lo = mid
        else:
            lo = hi = mid
            break
    root = 0.5 * (lo + hi)
    res = psi(root)
    return EntropyReport(
        value=-math.log(root),
        root=root,
        bracket=(lo, hi),
        residual=res if res is not None else float("nan"),
        method="switch_kappa",
        iterations=evals,
    )


def elementary_gf_value(g: Graph, v: int, x: float) -> float:
    """Generating function of elementary balanced words at v, evaluated at x:
    (1 - sqrt(1 - 4 fr(x^2))) / 2."""
    d = 1.0 - 4.0 * first_return_value(g, v, x * x)
    if d < 0.0:
        raise DomainError(f"1 - 4 fr(x^2) = {d} < 0 at x={x!r}")
    return 0.5 * (1.0 - math.sqrt(d))


def elementary_chain_gf_value(g: Graph, v: int, x: float) -> float:
    """Elementary words followed by first-return chains:
    (1 - sqrt(1 - 4 fr(x^2))) / (2 (1 - fr(x)))."""
    d = 1.0 - 4.0 * first_return_value(g, v, x * x)
    if d < 0.0:
        raise DomainError(f"1 - 4 fr(x^2) = {d} < 0 at x={x!r}")
    return (1.0 - math.sqrt(d)) / (2.0 * (1.0 - first_return_value(g, v, x)))


_THREE_QUARTERS = Fraction(3, 4)


def entropy_bounds(g: Graph, tol: float = 1e-12):
    """Per-vertex lower bounds on subsystem entropy plus the combined summary.

    For each vertex, q_v(rho^2) = p(rho^2)/p_v(rho^2) is compared with 3/4 in
    exact rational arithmetic; the branch above 3/4 uses the square-root
    correction, the branch below the linear one.  The combined bound applies
    when rho < 1/4, in which case some vertex is guaranteed to qualify for
    the square-root branch.
    """
    if not g.is_strongly_connected():
        raise NotIrreducible("bounds require a strongly connected graph")
    rho = perron_rho(g, tol)
    rho_f = Fraction(rho)
    p = char_poly(g)
    dp = p.derivative()
    log_rho = math.log(rho)
    p_rho2 = p(rho_f * rho_f)
    dp_rho = float(dp(rho_f))
    reports = []
    best = None
    for v in range(g.vertex_count):
        pv = char_poly_minor(g, v)
        pv_rho2 = pv(rho_f * rho_f)
        if pv_rho2 == 0:
            reports.append(
                BoundReport(v, rho, float("nan"), None, False, None,
                            note="degenerate minor: p_v(rho^2) = 0")
            )
            continue
        q = p_rho2 / pv_rho2
        q_f = float(q)
        pv_rho = float(pv(rho_f))
        if q > _THREE_QUARTERS:
            root_term = math.sqrt(q_f - 0.75)
            corr = (pv_rho * (q_f - 0.75 - 0.5 * root_term)) / (
                rho * dp_rho * (rho + root_term)
            )
            reports.append(
                BoundReport(v, rho, q_f, -log_rho + corr, True, "above_three_quarters")
            )
            if best is None or corr > best[0]:
                best = (corr, v)
        elif q < _THREE_QUARTERS:
            corr = pv_rho / (2.0 * rho * rho * dp_rho) * (q_f - 0.75)
            reports.append(
                BoundReport(v, rho, q_f, -log_rho + corr, True, "below_three_quarters")
            )
        else:
            reports.append(
                BoundReport(v, rho, q_f, None, False, None,
                            note="q_v(rho^2) = 3/4 exactly: neither branch applies")
            )
    if rho < 0.25 and best is not None:
        summary = CombinedBoundSummary(True, rho, -log_rho + best[0], best[1])
    else:
        summary = CombinedBoundSummary(False, rho)
    return reports, summary
