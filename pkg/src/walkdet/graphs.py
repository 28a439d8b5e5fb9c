"""Simple undirected graphs, graph6 I/O, associated matrices and rooted products."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, TextIO

from .exactlinalg import IntMatrix, delete_row_col

MAX_BUILTIN_ORDER = 7


class Graph6Error(ValueError):
    """Malformed graph6 input. ``offset`` is the 0-based byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``; ``rows[i]`` is the neighbour bitmask of ``i``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("row count does not match order")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError(f"row {i} has bits beyond vertex {self.n - 1}")
            if r >> i & 1:
                raise ValueError(f"loop at vertex {i}")
            for j in range(self.n):
                if (r >> j & 1) != (self.rows[j] >> i & 1):
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in range(j) if self.rows[i] >> j & 1]

    @property
    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def degree(self, v: int) -> int:
        return bin(self.rows[v]).count("1")

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def neighbours(self, v: int) -> list[int]:
        r = self.rows[v]
        return [j for j in range(self.n) if r >> j & 1]

    def relabel(self, order: list[int]) -> Graph:
        """Graph whose vertex ``i`` is this graph's vertex ``order[i]``."""
        pos = {old: new for new, old in enumerate(order)}
        return Graph.from_edges(self.n, [(pos[u], pos[v]) for u, v in self.edges()])

    def delete_vertex(self, v: int) -> Graph:
        keep = [u for u in range(self.n) if u != v]
        idx = {u: i for i, u in enumerate(keep)}
        return Graph.from_edges(
            self.n - 1, [(idx[a], idx[b]) for a, b in self.edges() if v not in (a, b)]
        )

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= self.rows[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def adjacency(self) -> IntMatrix:
        return [[self.rows[i] >> j & 1 for j in range(self.n)] for i in range(self.n)]

    def to_graph6(self) -> str:
        return emit_graph6(self)

    def __str__(self) -> str:
        return self.to_graph6()


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise ValueError(f"root {self.root} out of range for order {self.graph.n}")

    @property
    def order(self) -> int:
        return self.graph.n

    def __str__(self) -> str:
        # roots are shown 1-based, as vertices are numbered in the literature
        return f"{self.graph.to_graph6()}:{self.root + 1}"


# -- named graphs -----------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """Star with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def paw_graph() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 2 (edges 12, 13, 23, 34 one-based)."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


# -- matrix kinds -----------------------------------------------------------

@dataclass(frozen=True)
class MatrixKind:
    """Which matrix to associate with a graph: ``"A"``, ``"Q"`` or ``"Aalpha"``."""

    name: str
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        if self.name not in ("A", "Q", "Aalpha"):
            raise ValueError(f"unknown matrix kind {self.name!r}")
        if self.name == "Aalpha":
            if self.alpha is None:
                raise ValueError("Aalpha needs a value for alpha")
            a = Fraction(self.alpha)
            if not 0 <= a < 1:
                raise ValueError(f"alpha must satisfy 0 <= alpha < 1, got {a}")
            object.__setattr__(self, "alpha", a)
        elif self.alpha is not None:
            raise ValueError(f"kind {self.name} takes no alpha")

    @classmethod
    def parse(cls, text: str) -> MatrixKind:
        """Parse ``a``, ``q`` or ``aalpha=p/q``."""
        t = text.strip().lower()
        if t == "a":
            return ADJACENCY
        if t == "q":
            return SIGNLESS_LAPLACIAN
        if t.startswith("aalpha="):
            try:
                alpha = Fraction(t.split("=", 1)[1])
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad alpha in {text!r}") from exc
            return cls("Aalpha", alpha)
        raise ValueError(f"unknown matrix kind {text!r}; expected a, q or aalpha=p/q")

    @property
    def scale(self) -> int:
        return self.alpha.denominator if self.name == "Aalpha" else 1

    def __str__(self) -> str:
        return f"aalpha={self.alpha}" if self.name == "Aalpha" else self.name.lower()


ADJACENCY = MatrixKind("A")
SIGNLESS_LAPLACIAN = MatrixKind("Q")


def matrix_of(g: Graph, kind: MatrixKind = ADJACENCY) -> tuple[IntMatrix, int]:
    """Integer matrix of ``g`` for ``kind`` and the scale it was multiplied by.

    For ``A_alpha`` with ``alpha = p/q`` the returned matrix is
    ``q * A_alpha = p*D + (q - p)*A`` and the scale is ``q``; A and Q have
    scale 1.
    """
    a = g.adjacency()
    if kind.name == "A":
        return a, 1
    deg = g.degrees()
    if kind.name == "Q":
        for i in range(g.n):
            a[i][i] = deg[i]
        return a, 1
    p, q = kind.alpha.numerator, kind.alpha.denominator
    m = [[(q - p) * x for x in row] for row in a]
    for i in range(g.n):
        m[i][i] = p * deg[i]
    return m, q


def deleted_matrix(h: RootedGraph, kind: MatrixKind = ADJACENCY) -> IntMatrix:
    """M(H) with the root's row and column removed.

    Always matrix deletion: for Q this differs from Q(H - v), since the
    neighbours of the root keep their full degree.
    """
    m, _ = matrix_of(h.graph, kind)
    return delete_row_col(m, h.root)


def rooted_product(g: Graph, h: RootedGraph) -> Graph:
    """G o H^(v): copy ``i`` of H has its root glued onto vertex ``i`` of G.

    Vertex ``u`` of copy ``i`` gets index ``u*n + i`` (``n = g.n``), so the
    copies of the root are indices ``v*n .. v*n + n - 1`` and
    ``M(G o H) = kron(M(H), I_n) + kron(D_v, M(G))`` holds entry for entry.
    """
    n = g.n
    v = h.root
    edges = []
    for a, b in h.graph.edges():
        for i in range(n):
            edges.append((a * n + i, b * n + i))
    for a, b in g.edges():
        edges.append((v * n + a, v * n + b))
    return Graph.from_edges(n * h.graph.n, edges)


# -- graph6 -----------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        r = g.rows[j]
        for i in range(j):
            bits.append(r >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    s = line.rstrip("\r\n")
    base = 0
    if s.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", base + k)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated 8-byte order field", base + len(vals))
        n = 0
        for x in vals[2:8]:
            n = n << 6 | x
        pos = 8
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated 4-byte order field", base + len(vals))
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        pos = 4
    if n < 1:
        raise Graph6Error("graph has no vertices", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(vals) - pos
    if have < need:
        raise Graph6Error(f"expected {need} adjacency bytes for order {n}, found {have}", base + len(vals))
    if have > need:
        raise Graph6Error("trailing data after adjacency bytes", base + pos + need)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6:
        pad = vals[pos + need - 1] & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise Graph6Error("nonzero padding bits", base + pos + need - 1)
    return Graph(n, tuple(rows))


def read_graph6(stream: TextIO) -> Iterator[Graph]:
    """Yield graphs from a graph6 stream, one per line; blank lines are skipped."""
    for lineno, line in enumerate(stream, 1):
        s = line.strip()
        if not s:
            continue
        try:
            yield parse_graph6(s)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.args[0].rsplit(' (at', 1)[0]}", exc.offset) from exc


def parse_rooted(text: str) -> RootedGraph:
    """Parse ``<graph6>:<root>`` with a 1-based root."""
    g6, sep, root = text.rpartition(":")
    if not sep:
        raise ValueError(f"expected GRAPH6:ROOT, got {text!r}")
    g = parse_graph6(g6)
    r = int(root)
    if not 1 <= r <= g.n:
        raise ValueError(f"root {r} out of range 1..{g.n}")
    return RootedGraph(g, r - 1)


# -- canonical forms and enumeration ----------------------------------------

def _refine(g: Graph, root: Optional[int]) -> list[int]:
    """Stable colour refinement; colours are isomorphism-invariant ranks."""
    colour = [(0 if v == root else 1, g.degree(v)) for v in range(g.n)]
    ranks = {c: i for i, c in enumerate(sorted(set(colour)))}
    col = [ranks[c] for c in colour]
    while True:
        sig = [(col[v], tuple(sorted(col[u] for u in g.neighbours(v)))) for v in range(g.n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(ranks) == len(set(col)):
            return new
        col = new


def _code(g: Graph, order: tuple[int, ...]) -> int:
    code = 0
    rows = g.rows
    for j in range(1, len(order)):
        rj = rows[order[j]]
        for i in range(j):
            code = code << 1 | (rj >> order[i] & 1)
    return code


def canonical_form(g: Graph, root: Optional[int] = None) -> tuple[int, tuple[int, ...]]:
    """Canonical code and the vertex order achieving it.

    Vertices are grouped by refined colour; the code is the smallest
    upper-triangle bitstring over all orders that keep colour classes
    contiguous and sorted. Isomorphic graphs (rooted graphs when ``root`` is
    given) get equal codes. A given root always lands at position 0.
    """
    col = _refine(g, root)
    classes = [[v for v in range(g.n) if col[v] == c] for c in range(max(col) + 1)]
    best = None
    best_order: tuple[int, ...] = ()
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = tuple(itertools.chain.from_iterable(parts))
        code = _code(g, order)
        if best is None or code < best:
            best, best_order = code, order
    return best, best_order


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(list(canonical_form(g)[1]))


def root_orbit_representatives(g: Graph) -> list[int]:
    """Smallest vertex of each automorphism orbit."""
    seen: dict[int, int] = {}
    for v in range(g.n):
        code, _ = canonical_form(g, v)
        seen.setdefault(code, v)
    return sorted(seen.values())


@functools.lru_cache(maxsize=None)
def _graphs_of_order(m: int) -> tuple[Graph, ...]:
    if m == 1:
        return (Graph(1, (0,)),)
    found: dict[int, Graph] = {}
    for base in _graphs_of_order(m - 1):
        for mask in range(1 << (m - 1)):
            rows = list(base.rows) + [mask]
            for i in range(m - 1):
                if mask >> i & 1:
                    rows[i] |= 1 << (m - 1)
            g = Graph(m, tuple(rows))
            code, order = canonical_form(g)
            if code not in found:
                found[code] = g.relabel(list(order))
    return tuple(sorted(found.values(), key=lambda h: (h.num_edges, _code(h, tuple(range(m))))))


def enumerate_graphs(order: int, connected_only: bool = False) -> Iterator[Graph]:
    """One graph per isomorphism class on ``order`` vertices, in a fixed order.

    Classes are ordered by edge count, then canonical code. Orders above 7
    are not generated here; feed a graph6 stream instead.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if order > MAX_BUILTIN_ORDER:
        raise ValueError(
            f"built-in enumeration stops at order {MAX_BUILTIN_ORDER}; "
            "supply larger graphs as a graph6 stream (e.g. from nauty's geng)"
        )
    for g in _graphs_of_order(order):
        if not connected_only or g.is_connected():
            yield g
