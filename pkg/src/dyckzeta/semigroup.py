"""Graph inverse semigroup reduction and brute-force enumeration oracles.

Words over the doubled edge alphabet {e-, e+} multiply in the graph inverse
semigroup; a word is admissible for the Markov-Dyck shift exactly when its
product is nonzero.  The reduction rules live in one place (`append_letter`)
and everything else folds over them.

Relation completion: the generating relations pin f-g+ only for f = g (an
idempotent) and for s(f) != s(g) (zero).  The remaining case f != g with
s(f) = s(g) is set to zero here, matching the one-vertex specialization
(e_l- e_m+ = 0 for l != m) and the usual graph-inverse-semigroup convention.
All cross-checks against the closed-form zeta expansions are run under this
choice and agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import BudgetExceeded
from .graphs import Graph


class Letter(NamedTuple):
    """One alphabet symbol: an edge index with a minus or plus sign."""

    edge: int
    plus: bool

    def __str__(self):
        return f"e{self.edge}{'+' if self.plus else '-'}"


def alphabet(g: Graph) -> list[Letter]:
    """All letters in lexicographic order: by edge index, minus before plus."""
    return [Letter(e, p) for e in range(g.edge_count) for p in (False, True)]


def parse_word(text: str) -> list[Letter]:
    """Parse whitespace-separated tokens like 'e0- e1+' into letters."""
    out = []
    for tok in text.split():
        if len(tok) < 3 or tok[0] != "e" or tok[-1] not in "+-":
            raise ValueError(f"bad letter token {tok!r}")
        out.append(Letter(int(tok[1:-1]), tok[-1] == "+"))
    return out


def word_str(word) -> str:
    return " ".join(str(x) for x in word)


def involute(word) -> list[Letter]:
    """Charge symmetry: flip every sign and reverse the word."""
    return [Letter(x.edge, not x.plus) for x in reversed(word)]


@dataclass(frozen=True)
class SemigroupElement:
    """Normal form of a semigroup element.

    kind "elem" carries a base vertex and two paths alpha, beta from it
    (tuples of edge indices); the element is the reduced word built from
    alpha's edges reversed with plus signs followed by beta's edges with
    minus signs.  alpha = beta = () is the vertex idempotent.  "zero" and
    "unit" are the absorbing zero and the adjoined empty-word unit.
    """

    kind: str
    base: int = -1
    alpha: tuple = ()
    beta: tuple = ()

    @property
    def is_zero(self):
        return self.kind == "zero"

    @property
    def is_unit(self):
        return self.kind == "unit"

    @property
    def is_idempotent(self):
        return self.kind == "elem" and not self.alpha and not self.beta

    def __repr__(self):
        if self.kind != "elem":
            return f"SemigroupElement<{self.kind}>"
        if self.is_idempotent:
            return f"P_{self.base}"
        return f"SemigroupElement(v={self.base}, alpha={list(self.alpha)}, beta={list(self.beta)})"


ZERO = SemigroupElement("zero")
UNIT = SemigroupElement("unit")


def idempotent(v: int) -> SemigroupElement:
    return SemigroupElement("elem", v)


def append_letter(g: Graph, e: SemigroupElement, x: Letter) -> SemigroupElement:
    """Right-multiply a normal form by a single letter.

    Zero passes through; the unit lets the letter initialize the state.
    For a state (v, alpha, beta):
      * minus f: extend beta when r(last(beta)) = s(f) (or s(f) = v for an
        empty beta), otherwise zero;
      * plus f: cancel against the last beta edge when it equals f; with an
        empty beta, require r(f) = v, prepend f to alpha and move the base
        to s(f); otherwise zero.
    """
    if e.is_zero:
        return ZERO
    edge = x.edge
    s, d = g.edges[edge]
    if e.is_unit:
        if x.plus:
            return SemigroupElement("elem", s, (edge,), ())
        return SemigroupElement("elem", s, (), (edge,))
    if not x.plus:
        if e.beta:
            if g.dst(e.beta[-1]) != s:
                return ZERO
            return SemigroupElement("elem", e.base, e.alpha, e.beta + (edge,))
        if s != e.base:
            return ZERO
        return SemigroupElement("elem", e.base, e.alpha, (edge,))
    if e.beta:
        if e.beta[-1] != edge:
            return ZERO
        return SemigroupElement("elem", e.base, e.alpha, e.beta[:-1])
    if d != e.base:
        return ZERO
    return SemigroupElement("elem", s, (edge,) + e.alpha, e.beta)


def reduce_word(g: Graph, word) -> SemigroupElement:
    """Product of the letters of a word, in normal form."""
    acc = UNIT
    for x in word:
        acc = append_letter(g, acc, x)
        if acc.is_zero:
            return ZERO
    return acc


def is_admissible(g: Graph, word) -> bool:
    return not reduce_word(g, word).is_zero


def element_letters(e: SemigroupElement) -> list[Letter]:
    """The reduced letter word of a nonzero, non-unit element."""
    if e.kind != "elem":
        raise ValueError("only concrete elements have a letter word")
    return [Letter(edge, True) for edge in reversed(e.alpha)] + [
        Letter(edge, False) for edge in e.beta
    ]


def _right_vertex(g: Graph, e: SemigroupElement) -> int:
    return g.dst(e.beta[-1]) if e.beta else e.base


def multiply(g: Graph, a: SemigroupElement, b: SemigroupElement) -> SemigroupElement:
    """Semigroup product in normal form; zero is absorbing, unit neutral."""
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_unit:
        return b
    if b.is_unit:
        return a
    if b.is_idempotent:
        return a if _right_vertex(g, a) == b.base else ZERO
    acc = a
    for x in element_letters(b):
        acc = append_letter(g, acc, x)
        if acc.is_zero:
            return ZERO
    return acc


def periodic_orbit_check(g: Graph, word) -> bool:
    """Whether the bi-infinite periodic repetition of a word lies in the shift.

    Criterion: all powers of the reduced product E must be nonzero, which
    holds exactly when E is an idempotent, a pure-minus or pure-plus closed
    path, or a mixed pair whose shorter path is a terminal segment of the
    longer (the cancellation in E*E then regenerates the same surplus).
    """
    word = list(word)
    if not word:
        raise ValueError("periodic check needs a nonempty word")
    e = reduce_word(g, word)
    if e.is_zero:
        return False
    alpha, beta = e.alpha, e.beta
    if not alpha and not beta:
        return True
    if not alpha:
        return g.dst(beta[-1]) == e.base
    if not beta:
        return g.dst(alpha[-1]) == e.base
    if len(alpha) <= len(beta):
        return alpha == beta[len(beta) - len(alpha):]
    return beta == alpha[len(alpha) - len(beta):]


def periodic_check_fallback(g: Graph, word, window_factor: int | None = None) -> bool:
    """Definition-level check: every factor of the periodic repetition up to
    length |w| * window_factor must be admissible.

    Exists to validate `periodic_orbit_check` empirically; a factor starting
    at each rotation is extended to the full window, so all shorter factors
    are covered as prefixes.
    """
    word = list(word)
    n = len(word)
    if not word:
        raise ValueError("periodic check needs a nonempty word")
    if window_factor is None:
        window_factor = n + 4
    if window_factor < 2:
        raise ValueError("window_factor must be >= 2")
    cap = n * window_factor
    for start in range(n):
        acc = UNIT
        for i in range(cap):
            acc = append_letter(g, acc, word[(start + i) % n])
            if acc.is_zero:
                return False
    return True


class _Budget:
    """Mutable counter of appended letters shared by one enumeration call."""

    __slots__ = ("left",)

    def __init__(self, cap):
        self.left = cap

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("enumeration exceeded its node budget")


DEFAULT_BUDGET = 500_000_000


class _Walker:
    """Mutable reduction state with undo, for depth-first enumeration."""

    __slots__ = ("g", "base", "alpha", "beta", "trail")

    def __init__(self, g: Graph):
        self.g = g
        self.base = -1  # -1 encodes the unit state
        self.alpha = []  # prepend stack: actual plus-side path is reversed(alpha)
        self.beta = []
        self.trail = []

    def try_letter(self, edge: int, plus: bool) -> bool:
        g = self.g
        s, d = g.edges[edge]
        if self.base < 0:
            if plus:
                self.alpha.append(edge)
                self.trail.append((1, 0))
            else:
                self.beta.append(edge)
                self.trail.append((0, 0))
            self.base = s
            return True
        if not plus:
            if self.beta:
                if g.dst(self.beta[-1]) != s:
                    return False
            elif s != self.base:
                return False
            self.beta.append(edge)
            self.trail.append((2, 0))
            return True
        if self.beta:
            if self.beta[-1] != edge:
                return False
            self.beta.pop()
            self.trail.append((3, edge))
            return True
        if d != self.base:
            return False
        self.trail.append((4, self.base))
        self.alpha.append(edge)
        self.base = s
        return True

    def undo(self):
        op, data = self.trail.pop()
        if op == 0:
            self.beta.pop()
            self.base = -1
        elif op == 1:
            self.alpha.pop()
            self.base = -1
        elif op == 2:
            self.beta.pop()
        elif op == 3:
            self.beta.append(data)
        else:
            self.alpha.pop()
            self.base = data

    def periodic_ok(self) -> bool:
        if self.base < 0:
            return False
        alpha = list(reversed(self.alpha))
        beta = self.beta
        if not alpha and not beta:
            return True
        if not alpha:
            return self.g.dst(beta[-1]) == self.base
        if not beta:
            return self.g.dst(alpha[-1]) == self.base
        if len(alpha) <= len(beta):
            return alpha == beta[len(beta) - len(alpha):]
        return beta == alpha[len(alpha) - len(beta):]


def _switch_blocked(g: Graph, prev: Letter, nxt: Letter, v: int) -> bool:
    """Extra forbidden 2-blocks of the switch-restricted subsystem at v."""
    if prev.plus and not nxt.plus:
        return g.src(prev.edge) != v
    if not prev.plus and nxt.plus:
        return g.dst(prev.edge) != v
    return False


def count_words(g: Graph, n: int, switch_vertex: int | None = None,
                budget: int = DEFAULT_BUDGET) -> int:
    """Number of admissible words of length n (optionally restricted to the
    switch-at-one-vertex subsystem).  DFS with zero-pruning."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if switch_vertex is not None:
        g.check_vertex(switch_vertex)
    letters = alphabet(g)
    walker = _Walker(g)
    bud = _Budget(budget)
    count = 0

    def dfs(depth, prev):
        nonlocal count
        if depth == n:
            count += 1
            return
        for x in letters:
            if prev is not None and switch_vertex is not None and _switch_blocked(g, prev, x, switch_vertex):
                continue
            if walker.try_letter(x.edge, x.plus):
                bud.spend()
                dfs(depth + 1, x)
                walker.undo()

    dfs(0, None)
    return count


def count_periodic(g: Graph, n: int, switch_vertex: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> int:
    """Number of points of period n: length-n windows whose periodic
    repetition lies in the shift (cyclic 2-block rules under restriction)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if switch_vertex is not None:
        g.check_vertex(switch_vertex)
    letters = alphabet(g)
    walker = _Walker(g)
    bud = _Budget(budget)
    count = 0

    def dfs(depth, first, prev):
        nonlocal count
        if depth == n:
            if switch_vertex is not None and _switch_blocked(g, prev, first, switch_vertex):
                return
            if walker.periodic_ok():
                count += 1
            return
        for x in letters:
            if prev is not None and switch_vertex is not None and _switch_blocked(g, prev, x, switch_vertex):
                continue
            if walker.try_letter(x.edge, x.plus):
                bud.spend()
                dfs(depth + 1, first if first is not None else x, x)
                walker.undo()

    dfs(0, None, None)
    return count


def count_code_words(g: Graph, v: int, n: int, kind: str = "md_code") -> int:
    """Number of length-n words whose product is the idempotent at v with no
    proper prefix product equal to it.

    kind "md_code" counts all such balanced words; "elementary" restricts to
    the switch-at-v subsystem.  Such words are stack walks: minus letters
    push edges along the graph, plus letters pop the matching edge, and the
    stack must empty exactly at the end.
    """
    g.check_vertex(v)
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind not in ("md_code", "elementary"):
        raise ValueError(f"unknown code kind {kind!r}")
    elementary = kind == "elementary"
    out = g._out
    dst = g.edges
    stack = []
    count = 0

    def dfs(depth, prev_plus):
        nonlocal count
        remaining = n - depth
        if remaining == 0:
            if not stack:
                count += 1
            return
        if depth > 0 and not stack:
            return  # proper prefix already reached the idempotent
        pos = dst[stack[-1]][1] if stack else v
        # pushes: must still be poppable in the remaining letters
        if len(stack) + 1 <= remaining - 1 and (remaining - len(stack) - 2) % 2 == 0:
            if not (elementary and prev_plus is True and pos != v):
                for e in out[pos]:
                    stack.append(e)
                    dfs(depth + 1, False)
                    stack.pop()
        # pop
        if stack:
            if not (elementary and prev_plus is False and pos != v):
                e = stack.pop()
                dfs(depth + 1, True)
                stack.append(e)

    dfs(0, None)
    return count
