"""Finite directed multigraphs, characteristic polynomials and Perron data.

A graph is held as an ordered edge list plus the derived integer adjacency
matrix A[u][v] = number of edges u -> v.  Edge identity is the index into the
edge list; all shift-theoretic code in this package addresses edges by index.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidGraph, InvalidVertex, NoPerronRoot, NotIrreducible


class IntPolynomial:
    """Polynomial with exact integer coefficients, index = power of z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __sub__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial([])
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(out)

    def derivative(self):
        return IntPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; exact when x is Fraction/int."""
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x) -> Fraction:
        """Exact evaluation after converting x to a Fraction."""
        return self(Fraction(x))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


class Path:
    """A finite path: base vertex plus a list of edge indices.

    The base is meaningful for the empty path; for a nonempty path it must
    equal the source of the first edge, and consecutive edges must chain.
    """

    __slots__ = ("base", "edges")

    def __init__(self, graph: "Graph", base: int, edges=()):
        edges = tuple(edges)
        if not (0 <= base < graph.vertex_count):
            raise InvalidVertex(f"base vertex {base} out of range")
        at = base
        for e in edges:
            s, d = graph.edges[e]
            if s != at:
                raise InvalidGraph(f"edge {e} does not continue the path at vertex {at}")
            at = d
        self.base = base
        self.edges = edges

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.base == other.base
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.base, self.edges))

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return f"Path(base={self.base}, edges={list(self.edges)})"


class Graph:
    """Finite directed multigraph with 0-based vertex and edge indices."""

    __slots__ = ("name", "vertex_count", "edges", "adjacency", "_out")

    def __init__(self, vertex_count: int, edges, name: str | None = None):
        if vertex_count < 1:
            raise InvalidGraph("graph needs at least one vertex")
        edge_list = []
        for pair in edges:
            s, d = int(pair[0]), int(pair[1])
            if not (0 <= s < vertex_count and 0 <= d < vertex_count):
                raise InvalidGraph(f"edge ({s},{d}) has an endpoint outside 0..{vertex_count - 1}")
            edge_list.append((s, d))
        self.name = name
        self.vertex_count = vertex_count
        self.edges = tuple(edge_list)
        adj = [[0] * vertex_count for _ in range(vertex_count)]
        out = [[] for _ in range(vertex_count)]
        for idx, (s, d) in enumerate(self.edges):
            adj[s][d] += 1
            out[s].append(idx)
        self.adjacency = tuple(tuple(row) for row in adj)
        self._out = tuple(tuple(lst) for lst in out)

    def src(self, e: int) -> int:
        return self.edges[e][0]

    def dst(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int):
        """Edge indices leaving v, in input order."""
        if not (0 <= v < self.vertex_count):
            raise InvalidVertex(f"vertex {v} out of range")
        return self._out[v]

    @property
    def edge_count(self):
        return len(self.edges)

    def check_vertex(self, v: int):
        if not (0 <= v < self.vertex_count):
            raise InvalidVertex(f"vertex {v} out of range for {self.vertex_count} vertices")

    def is_strongly_connected(self) -> bool:
        """Reachability of every vertex from 0 in both edge directions."""
        if self.vertex_count == 1:
            return True

        def reaches_all(forward: bool) -> bool:
            seen = {0}
            stack = [0]
            while stack:
                u = stack.pop()
                for s, d in self.edges:
                    a, b = (s, d) if forward else (d, s)
                    if a == u and b not in seen:
                        seen.add(b)
                        stack.append(b)
            return len(seen) == self.vertex_count

        return reaches_all(True) and reaches_all(False)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Graph({label}{self.vertex_count} vertices, {len(self.edges)} edges)"


def build_graph(spec: dict) -> Graph:
    """Build a Graph from a parsed JSON-style description.

    Accepted forms (exactly one of "edges"/"adjacency"):
      {"name": ..., "vertices": n, "edges": [[s, d], ...]}
      {"name": ..., "adjacency": [[...], ...]}
    An adjacency matrix expands to edges in row-major order with parallel
    edges consecutive, which fixes the edge numbering.
    """
    if not isinstance(spec, dict):
        raise InvalidGraph("graph description must be a mapping")
    name = spec.get("name")
    has_edges = "edges" in spec
    has_adj = "adjacency" in spec
    if has_edges == has_adj:
        raise InvalidGraph('exactly one of "edges"/"adjacency" must be present')
    if has_adj:
        adj = spec["adjacency"]
        n = len(adj)
        if n == 0:
            raise InvalidGraph("adjacency matrix is empty")
        if any(len(row) != n for row in adj):
            raise InvalidGraph("adjacency matrix must be square")
        edges = []
        for u, row in enumerate(adj):
            for v, mult in enumerate(row):
                m = int(mult)
                if m < 0:
                    raise InvalidGraph("adjacency entries must be nonnegative")
                edges.extend([(u, v)] * m)
        return Graph(n, edges, name=name)
    if "vertices" not in spec:
        raise InvalidGraph('"vertices" is required with "edges"')
    n = int(spec["vertices"])
    return Graph(n, spec["edges"], name=name)


_MAX_DET_DIM = 12


def _poly_matrix_det(rows) -> IntPolynomial:
    """Determinant of a square IntPolynomial matrix.

    Cofactor expansion along the first remaining row, memoized on the set of
    still-available columns; exponential in dimension, guarded upstream.
    """
    n = len(rows)
    if n == 0:
        return IntPolynomial([1])
    cache = {}

    def det(cols: frozenset, r: int) -> IntPolynomial:
        if not cols:
            return IntPolynomial([1])
        key = cols
        hit = cache.get(key)
        if hit is not None:
            return hit
        acc = IntPolynomial([])
        sign = 1
        for c in sorted(cols):
            entry = rows[r][c]
            if entry.coeffs:
                acc = acc + entry * det(cols - {c}, r + 1) if sign > 0 else acc - entry * det(cols - {c}, r + 1)
            sign = -sign
        cache[key] = acc
        return acc

    return det(frozenset(range(n)), 0)


def _char_matrix(g: Graph, skip: int | None = None):
    idx = [v for v in range(g.vertex_count) if v != skip]
    rows = []
    for u in idx:
        row = []
        for v in idx:
            const = 1 if u == v else 0
            row.append(IntPolynomial([const, -g.adjacency[u][v]]))
        rows.append(row)
    return rows


def char_poly(g: Graph) -> IntPolynomial:
    """p(z) = det(I - A z), exact integer coefficients, p(0) = 1."""
    if g.vertex_count > _MAX_DET_DIM:
        raise InvalidGraph(f"determinant guard: at most {_MAX_DET_DIM} vertices supported")
    return _poly_matrix_det(_char_matrix(g))


def char_poly_minor(g: Graph, v: int) -> IntPolynomial:
    """det(I - A z) with row and column v deleted; 1 for a one-vertex graph."""
    g.check_vertex(v)
    if g.vertex_count > _MAX_DET_DIM:
        raise InvalidGraph(f"determinant guard: at most {_MAX_DET_DIM} vertices supported")
    return _poly_matrix_det(_char_matrix(g, skip=v))


def perron_rho(g: Graph, tol: float = 1e-10) -> float:
    """Inverse Perron eigenvalue as the smallest positive root of p(z).

    Bracket by scanning (0, 1] with exact rational evaluation, then bisect;
    the returned value carries a certified sign change of width <= tol (or is
    an exact rational root hit by the scan).
    """
    if g.edge_count == 0:
        raise NoPerronRoot("graph has no edges")
    if not g.is_strongly_connected():
        raise NotIrreducible("Perron data requires a strongly connected graph")
    p = char_poly(g)
    if p.degree < 1:
        raise NoPerronRoot("adjacency is nilpotent: det(I - Az) is constant")
    max_row_sum = max(sum(row) for row in g.adjacency)
    step = Fraction(1, max(64, 2 * max_row_sum))
    lo = Fraction(0)
    hi = None
    x = step
    while x <= 1:
        val = p(x)
        if val == 0:
            return float(x)
        if val < 0:
            hi = x
            break
        lo = x
        x += step
    if hi is None:
        raise NoPerronRoot("no sign change of det(I - Az) in (0, 1]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        val = p(mid)
        if val == 0:
            return float(mid)
        if val > 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def first_return_series(g: Graph, v: int, order: int):
    """Coefficients 0..order: number of length-n cycles at v meeting v only
    at their endpoints, counted with edge multiplicity.

    Direct walk enumeration with pruning: a walk is abandoned as soon as it
    returns to v (recorded) or exceeds the order.  Independent of the
    determinant route 1 - p/p_v, against which tests compare it.
    """
    g.check_vertex(v)
    if order < 1:
        raise ValueError("order must be >= 1")
    counts = [0] * (order + 1)
    out = g._out
    dst = [g.dst(e) for e in range(g.edge_count)]

    def walk(at: int, length: int):
        for e in out[at]:
            d = dst[e]
            if d == v:
                counts[length + 1] += 1
            elif length + 1 < order:
                walk(d, length + 1)

    walk(v, 0)
    from .series import Series  # local import to avoid a cycle at module load

    return Series(counts, order)
