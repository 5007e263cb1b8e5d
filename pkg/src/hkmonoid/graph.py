"""Directed simple graphs and the structural predicates HK monoids care about.

Vertices are dense integers ``0..n-1``.  Subgraphs are always full (induced)
and are passed around as plain ``frozenset`` objects of vertex indices.

A pair of opposite edges ``u->v`` and ``v->u`` is an *unoriented* edge.  Such
graphs can be built (some negative checks need them) but they are flagged by
:attr:`DirectedGraph.no_unoriented_edges`.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import (
    BadGluing,
    BadOrientation,
    NotForest,
    NotTypeA,
    ParseError,
    TooSmall,
    UnsupportedBlock,
)

Subgraph = frozenset


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"v{i}" for i in range(n))


@dataclass(frozen=True)
class DirectedGraph:
    n: int
    edges: frozenset = frozenset()
    labels: tuple = ()

    def __post_init__(self):
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)
        labels = tuple(self.labels) if self.labels else default_labels(self.n)
        if len(labels) != self.n or len(set(labels)) != self.n:
            raise ValueError("labels must be distinct, one per vertex")
        object.__setattr__(self, "labels", labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset, ...]:
        out = [set() for _ in range(self.n)]
        for u, v in self.edges:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def in_neighbors(self) -> tuple[frozenset, ...]:
        inn = [set() for _ in range(self.n)]
        for u, v in self.edges:
            inn[v].add(u)
        return tuple(frozenset(s) for s in inn)

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    @cached_property
    def unoriented_pairs(self) -> frozenset:
        return frozenset((u, v) for u, v in self.edges if u < v and (v, u) in self.edges)

    @property
    def no_unoriented_edges(self) -> bool:
        return not self.unoriented_pairs

    def label(self, v: int) -> str:
        return self.labels[v]

    @cached_property
    def _label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def vertex(self, name) -> int:
        """Resolve a label or an index (int or digit string) to a vertex."""
        if isinstance(name, int):
            if 0 <= name < self.n:
                return name
            raise ParseError(f"vertex index {name} out of range")
        if name in self._label_index:
            return self._label_index[name]
        if name.isdigit() and int(name) < self.n:
            return int(name)
        raise ParseError(f"unknown vertex {name!r}")

    def describe(self) -> str:
        arrows = " ".join(
            f"{self.labels[u]}->{self.labels[v]}" for u, v in sorted(self.edges)
        )
        return f"n={self.n} [{arrows}]"


def induced_subgraph(g: DirectedGraph, keep: Iterable[int]) -> tuple[DirectedGraph, list[int]]:
    """Return the full subgraph on ``keep`` renumbered densely, plus the map
    new index -> old index."""
    order = sorted(set(keep))
    pos = {v: i for i, v in enumerate(order)}
    edges = {(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos}
    return DirectedGraph(len(order), frozenset(edges), tuple(g.labels[v] for v in order)), order


# -- structural predicates ---------------------------------------------------


def _undirected_adjacency(g: DirectedGraph) -> list[set]:
    adj = [set() for _ in g.vertices]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def is_type_An(g: DirectedGraph) -> bool:
    if g.n == 0:
        return False
    adj = _undirected_adjacency(g)
    if g.n == 1:
        return True
    degrees = [len(a) for a in adj]
    if sorted(degrees) != [1, 1] + [2] * (g.n - 2):
        return False
    # connected + degree pattern => simple path
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def canonical_order(g: DirectedGraph) -> list[int]:
    """Walk the underlying path starting from the endpoint with the smaller
    index."""
    if not is_type_An(g):
        raise NotTypeA(f"graph is not of type A_n: {g.describe()}")
    if g.n == 1:
        return [0]
    adj = _undirected_adjacency(g)
    start = min(v for v in g.vertices if len(adj[v]) == 1)
    order = [start]
    prev = None
    while len(order) < g.n:
        cur = order[-1]
        (nxt,) = [w for w in adj[cur] if w != prev]
        prev = cur
        order.append(nxt)
    return order


def is_linearly_ordered(g: DirectedGraph) -> bool:
    if not is_type_An(g) or not g.no_unoriented_edges:
        return False
    sources = [v for v in g.vertices if not g.in_neighbors[v]]
    sinks = [v for v in g.vertices if not g.out_neighbors[v]]
    return len(sources) == 1 and len(sinks) == 1


def sources_and_sinks(g: DirectedGraph) -> frozenset:
    return frozenset(
        v for v in g.vertices if not g.in_neighbors[v] or not g.out_neighbors[v]
    )


def has_oriented_cycle(g: DirectedGraph, s: Iterable[int] | None = None) -> bool:
    keep = set(g.vertices) if s is None else set(s)
    # Kahn's algorithm on the induced subgraph
    indeg = {v: sum(1 for u in g.in_neighbors[v] if u in keep) for v in keep}
    ready = [v for v, d in indeg.items() if d == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for w in g.out_neighbors[v]:
            if w in keep:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
    return removed < len(keep)


def _reach(neighbors, starts: Iterable[int]) -> set:
    seen = set(starts)
    stack = list(seen)
    while stack:
        for w in neighbors[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def source_graph(g: DirectedGraph, a: int) -> frozenset:
    """Vertices with a (possibly trivial) directed path to ``a``."""
    return frozenset(_reach(g.in_neighbors, [a]))


def is_path_complete(g: DirectedGraph, s: Iterable[int]) -> bool:
    s = set(s)
    # vertices strictly after some s-vertex and strictly before some s-vertex
    after = _reach(g.out_neighbors, {w for v in s for w in g.out_neighbors[v]})
    before = _reach(g.in_neighbors, {w for v in s for w in g.in_neighbors[v]})
    return not ((after & before) - s)


def gluing_decomposition(g: DirectedGraph) -> list[tuple[frozenset, int | None]]:
    """Split a type-A_n graph into its maximal linearly ordered pieces.

    Pieces come left to right along :func:`canonical_order`; each entry is
    ``(vertex set, glue vertex shared with the previous piece)``.
    """
    order = canonical_order(g)
    if not g.no_unoriented_edges:
        raise NotTypeA("unoriented edge: no linearly ordered decomposition")
    pieces = []
    current = [order[0]]
    glue = None
    for i in range(1, len(order)):
        current.append(order[i])
        if i < len(order) - 1:
            left_forward = (order[i - 1], order[i]) in g.edges
            right_forward = (order[i], order[i + 1]) in g.edges
            if left_forward != right_forward:
                pieces.append((frozenset(current), glue))
                glue = order[i]
                current = [order[i]]
    pieces.append((frozenset(current), glue))
    return pieces


def validate_gluing(g: DirectedGraph, part1: Iterable[int], part2: Iterable[int]) -> int:
    """Check that two vertex sets split ``g`` into edge-disjoint full subgraphs
    meeting in one source-or-sink vertex; return that vertex."""
    p1, p2 = set(part1), set(part2)
    common = p1 & p2
    if p1 | p2 != set(g.vertices) or len(common) != 1:
        raise BadGluing("pieces must cover the graph and share exactly one vertex")
    (a,) = common
    if a not in sources_and_sinks(g):
        raise BadGluing("glue vertex must be a source or a sink")
    for u, v in g.edges:
        if not ({u, v} <= p1 or {u, v} <= p2):
            raise BadGluing(f"edge {u}->{v} crosses the pieces")
    return a


def graph_id(g: DirectedGraph) -> str:
    """Compact single-token identifier, e.g. ``3:0>1,2>1``."""
    return f"{g.n}:" + ",".join(f"{u}>{v}" for u, v in sorted(g.edges))


def reverse_edges(g: DirectedGraph, s: Iterable[int]) -> DirectedGraph:
    s = set(s)
    edges = {(v, u) if u in s and v in s else (u, v) for u, v in g.edges}
    return DirectedGraph(g.n, frozenset(edges), g.labels)


# -- builders -----------------------------------------------------------------


def chain(n: int) -> DirectedGraph:
    """Linearly ordered v1 -> v2 -> ... -> vn."""
    return DirectedGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def oriented_path(directions: str) -> DirectedGraph:
    """Type A_n graph from a string of ``R``/``L``: edge i goes right (vi -> vi+1)
    or left (vi <- vi+1)."""
    edges = set()
    for i, d in enumerate(directions.upper()):
        if d == "R":
            edges.add((i, i + 1))
        elif d == "L":
            edges.add((i + 1, i))
        else:
            raise ParseError(f"bad direction {d!r}; expected R or L")
    return DirectedGraph(len(directions) + 1, frozenset(edges))


def alternating(n: int) -> DirectedGraph:
    """v1 -> v2 <- v3 -> v4 <- ... with v1 a source (n = 0 gives the empty graph)."""
    if n <= 1:
        return DirectedGraph(max(n, 0))
    return oriented_path("".join("R" if i % 2 == 0 else "L" for i in range(n - 1)))


def all_orientations(n: int) -> list[DirectedGraph]:
    if n == 1:
        return [DirectedGraph(1)]
    out = []
    for mask in range(2 ** (n - 1)):
        out.append(oriented_path("".join("L" if mask >> i & 1 else "R" for i in range(n - 1))))
    return out


def oriented_cycle(n: int) -> DirectedGraph:
    return DirectedGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def empty_graph(n: int) -> DirectedGraph:
    return DirectedGraph(n)


@dataclass(frozen=True)
class ZGraph:
    graph: DirectedGraph
    a: int
    b: int
    middles: tuple  # vertex ids of v_3..v_n, in that order

    def middle_index(self, v: int) -> int:
        """Index i of middle vertex v_i (3 <= i <= n)."""
        return self.middles.index(v) + 3


def build_zn(n: int) -> ZGraph:
    if n < 4:
        raise TooSmall(f"Z_n needs n >= 4, got {n}")
    a, b = 0, 1
    middles = tuple(range(2, n))
    edges = {(a, v) for v in middles} | {(v, b) for v in middles}
    labels = ("a", "b") + tuple(f"v{i}" for i in range(3, n + 1))
    return ZGraph(DirectedGraph(n, frozenset(edges), labels), a, b, middles)


@dataclass(frozen=True)
class Block:
    kind: str  # "chain", "zn" or "kiselman"
    size: int

    _PATTERN = re.compile(r"^\s*(chain|zn|kiselman|kappa)\s*\(\s*(\d+)\s*\)\s*$")

    @classmethod
    def parse(cls, text: str) -> "Block":
        m = cls._PATTERN.match(text)
        if not m:
            raise ParseError(f"bad block spec {text!r}")
        kind = "kiselman" if m.group(1) == "kappa" else m.group(1)
        return cls(kind, int(m.group(2)))


def build_glued(
    forest_edges: Sequence[tuple[Hashable, Hashable]],
    orientation: Mapping[Hashable, str],
    replacements: Mapping[tuple[Hashable, Hashable], Block | str],
) -> DirectedGraph:
    """Replace every edge of an oriented forest by a building block.

    Each forest vertex is declared a ``"source"`` or ``"sink"``; every forest
    edge must join a source to a sink and is oriented that way.  The block's
    source end is glued to the source vertex and its sink end to the sink.
    Blocks: ``chain(m)`` (linearly ordered, m >= 2 vertices including both
    ends) and ``zn(m)`` (m >= 4).
    """
    names: list = []
    for u, v in forest_edges:
        for x in (u, v):
            if x not in names:
                names.append(x)
    # forest check via union-find on the undirected edges
    parent = {x: x for x in names}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in forest_edges:
        if u == v:
            raise NotForest(f"loop at {u!r}")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotForest(f"edge {u!r}-{v!r} closes a cycle")
        parent[ru] = rv

    index = {x: i for i, x in enumerate(names)}
    labels = [str(x) for x in names]
    edges: set = set()
    for u, v in forest_edges:
        ou, ov = orientation.get(u), orientation.get(v)
        if ou not in ("source", "sink") or ov not in ("source", "sink"):
            raise BadOrientation(f"vertices {u!r}, {v!r} need source/sink orientation")
        if ou == ov:
            raise BadOrientation(f"edge {u!r}-{v!r} joins two {ou}s")
        src, dst = (u, v) if ou == "source" else (v, u)
        spec = replacements.get((u, v), replacements.get((v, u)))
        if spec is None:
            raise ParseError(f"no block given for edge {u!r}-{v!r}")
        block = Block.parse(spec) if isinstance(spec, str) else spec
        s, t = index[src], index[dst]

        def fresh(tag):
            labels.append(f"{src}{dst}_{tag}")
            return len(labels) - 1

        if block.kind == "chain":
            if block.size < 2:
                raise UnsupportedBlock("chain block needs at least 2 vertices")
            path = [s] + [fresh(j) for j in range(1, block.size - 1)] + [t]
            edges.update(zip(path, path[1:]))
        elif block.kind == "zn":
            if block.size < 4:
                raise TooSmall(f"Z_n needs n >= 4, got {block.size}")
            for i in range(3, block.size + 1):
                m = fresh(f"v{i}")
                edges.add((s, m))
                edges.add((m, t))
        else:
            raise UnsupportedBlock(f"{block.kind} blocks are not supported")
    return DirectedGraph(len(labels), frozenset(edges), tuple(labels))


# -- file formats ---------------------------------------------------------------


_DOT_EDGE = re.compile(r'"?([\w.]+)"?\s*->\s*"?([\w.]+)"?')


def parse_graph(text: str) -> DirectedGraph:
    """Parse the line format (``n <count>`` / ``e <u> <v>`` / ``#`` comments) or
    a ``digraph { a -> b; }`` subset of DOT."""
    stripped = re.sub(r"#.*", "", text).strip()
    if stripped.startswith("digraph") or "->" in stripped:
        return _parse_dot(stripped)
    n = None
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            if line[0] == "n" and len(line) == 2:
                n = int(line[1])
            elif line[0] == "e" and len(line) == 3:
                edges.add((int(line[1]), int(line[2])))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {lineno}: cannot parse {raw!r}") from None
    if n is None:
        raise ParseError("missing 'n <count>' header")
    try:
        return DirectedGraph(n, frozenset(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _parse_dot(text: str) -> DirectedGraph:
    body = text
    if "{" in text:
        body = text[text.index("{") + 1 : text.rindex("}")]
    names: list[str] = []
    edges = set()

    def idx(name):
        if name not in names:
            names.append(name)
        return names.index(name)

    for stmt in re.split(r"[;\n]", body):
        stmt = stmt.strip()
        if not stmt:
            continue
        parts = [p.strip().strip('"') for p in stmt.split("->")]
        if len(parts) == 1:
            if not re.fullmatch(r"[\w.]+", parts[0]):
                raise ParseError(f"cannot parse DOT statement {stmt!r}")
            idx(parts[0])
            continue
        ids = [idx(p) for p in parts]
        edges.update(zip(ids, ids[1:]))
    try:
        return DirectedGraph(len(names), frozenset(edges), tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: DirectedGraph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def full_subsets(g: DirectedGraph):
    """All vertex subsets, smallest first."""
    for k in range(g.n + 1):
        for c in combinations(g.vertices, k):
            yield frozenset(c)
