"""Weighted integer-matrix representations R_f of HK_Γ.

Convention, used everywhere in this module: a matrix acts on column
vectors, column ``y`` of ``R_f(w)`` holds the coordinates of the image of
basis vector ``y``, and a word acts letter by letter with
``R_f(uv) = R_f(u) @ R_f(v)``.  So ``R_f(xy)`` is ``θ_x ∘ θ_y``.

Matrices are tuples of row tuples of Python ints (exact, unbounded).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotFullContent,
    NotPathComplete,
    TableIncomplete,
)
from .graph import (
    DirectedGraph,
    ZGraph,
    build_zn,
    induced_subgraph,
    is_path_complete,
    source_graph,
    validate_gluing,
)
from .presentation import canonical_projection, content, relations_of

Matrix = tuple


@dataclass(frozen=True)
class WeightFunction:
    weights: Mapping  # (u, v) -> int
    allow_zero: bool = False

    def __post_init__(self):
        object.__setattr__(self, "weights", dict(self.weights))
        if not self.allow_zero and any(v == 0 for v in self.weights.values()):
            raise ValueError("weights must be non-zero")

    def __getitem__(self, edge) -> int:
        return self.weights[edge]

    def check(self, g: DirectedGraph):
        if set(self.weights) != set(g.edges):
            raise ValueError("weight function must be defined on exactly the edges of the graph")

    @classmethod
    def constant(cls, g: DirectedGraph, c: int) -> "WeightFunction":
        return cls({e: c for e in g.edges}, allow_zero=(c == 0))

    def restrict(self, edges: Iterable) -> "WeightFunction":
        return WeightFunction({e: self.weights[e] for e in edges}, self.allow_zero)

    def relabel(self, old_of_new: Sequence[int], sub: DirectedGraph) -> "WeightFunction":
        """Weights for an induced subgraph renumbered by ``induced_subgraph``."""
        return WeightFunction(
            {(u, v): self.weights[(old_of_new[u], old_of_new[v])] for u, v in sub.edges},
            self.allow_zero,
        )


def parse_weights(g: DirectedGraph, text: str) -> WeightFunction:
    """``u->v=3,a->b=-1`` or ``u v=3`` with labels or indices; unlisted edges
    default to 1."""
    weights = {e: 1 for e in g.edges}
    for item in filter(None, (t.strip() for t in text.split(","))):
        edge, _, value = item.partition("=")
        ends = edge.replace("->", " ").split()
        if len(ends) != 2 or not value:
            raise ValueError(f"bad weight item {item!r}")
        e = (g.vertex(ends[0]), g.vertex(ends[1]))
        if e not in g.edges:
            raise ValueError(f"{edge} is not an edge")
        weights[e] = int(value)
    return WeightFunction(weights, allow_zero=True)


# -- matrices -----------------------------------------------------------------


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def atomic(g: DirectedGraph, f: WeightFunction, x: int) -> Matrix:
    """θ_x: fixes every basis vector except x, which goes to Σ_{z->x} f_zx z."""
    rows = [list(r) for r in identity(g.n)]
    rows[x][x] = 0
    for z in g.in_neighbors[x]:
        rows[z][x] = f[(z, x)]
    return tuple(tuple(r) for r in rows)


def represent(g: DirectedGraph, f: WeightFunction, w: Sequence[int]) -> Matrix:
    m = [list(r) for r in identity(g.n)]
    for x in w:
        # right multiplication by θ_x only rewrites column x
        ins = [(z, f[(z, x)]) for z in g.in_neighbors[x]]
        for row in m:
            row[x] = sum(c * row[z] for z, c in ins)
    return tuple(tuple(r) for r in m)


def column(m: Matrix, v: int) -> tuple:
    return tuple(row[v] for row in m)


def minor(m: Matrix, keep: Sequence[int]) -> Matrix:
    return tuple(tuple(m[i][j] for j in keep) for i in keep)


def format_matrix(m: Matrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)


# -- checks -------------------------------------------------------------------


def check_well_defined(g: DirectedGraph, f: WeightFunction) -> bool:
    return all(
        represent(g, f, rel.lhs) == represent(g, f, rel.rhs) for rel in relations_of(g)
    )


def failing_relations(g: DirectedGraph, f: WeightFunction) -> list:
    return [r for r in relations_of(g) if represent(g, f, r.lhs) != represent(g, f, r.rhs)]


@dataclass(frozen=True)
class EffectivenessResult:
    effective: bool
    elements: int
    distinct: int
    collision: tuple | None  # pair of ElementIds with equal matrices


def check_effective(g: DirectedGraph, f: WeightFunction, t) -> EffectivenessResult:
    if t.graph != g:
        raise TableIncomplete("element table belongs to a different graph")
    seen: dict = {}
    collision = None
    for e, w in enumerate(t.normal_forms):
        m = represent(g, f, w)
        if m in seen:
            if collision is None:
                collision = (seen[m], e)
        else:
            seen[m] = e
    return EffectivenessResult(collision is None, len(t), len(seen), collision)


def check_source_graph_lemma(g, f, sample_words, a: int) -> bool:
    sa = source_graph(g, a)
    return all(
        column(represent(g, f, w), a)
        == column(represent(g, f, canonical_projection(w, sa)), a)
        for w in sample_words
    )


def check_path_complete_minor(g, f, sub, sample_words, strict: bool = False) -> bool:
    """Compare the minor of R_f(w) on ``sub`` with R_{f'} of the projection of
    w, f' being f restricted to the full subgraph.

    The minor on the rows/columns of ``sub`` is the matrix of the action on
    X/Y, X spanned by vertices with a path into ``sub`` and Y by those
    outside ``sub``.
    """
    if strict and not is_path_complete(g, sub):
        raise NotPathComplete("subgraph is not path complete")
    h, old = induced_subgraph(g, sub)
    fh = f.relabel(old, h)
    pos = {v: i for i, v in enumerate(old)}
    for w in sample_words:
        big = minor(represent(g, f, w), old)
        small = represent(h, fh, [pos[x] for x in w if x in pos])
        if big != small:
            return False
    return True


@dataclass(frozen=True)
class CyclePowers:
    distinct: bool
    exponents: tuple  # 2-adic exponent of the image of the first cycle vertex, k = 1..kmax
    increasing: bool

    def __bool__(self):
        return self.distinct and self.increasing


def _two_adic(x: int) -> int:
    x = abs(x)
    return (x & -x).bit_length() - 1


def check_cycle_powers(g: DirectedGraph, w: Sequence[int], kmax: int = 10, start: int | None = None) -> CyclePowers:
    """For an oriented cycle with f ≡ 2 and content(w) = all vertices, the
    images of w^k are pairwise distinct; the basis vector ``start`` is sent to
    2^{e_k} times a basis vector with e_k strictly increasing."""
    if not all(len(g.in_neighbors[v]) == 1 and len(g.out_neighbors[v]) == 1 for v in g.vertices):
        raise ValueError("graph is not a disjoint union of oriented cycles")
    if content(w) != frozenset(g.vertices):
        raise NotFullContent("word must use every cycle vertex")
    f = WeightFunction.constant(g, 2)
    start = min(g.vertices) if start is None else start
    step = represent(g, f, w)
    m = step
    seen = set()
    exps = []
    for _ in range(kmax):
        seen.add(m)
        col = column(m, start)
        nz = [x for x in col if x]
        if len(nz) != 1:
            return CyclePowers(False, tuple(exps), False)
        exps.append(_two_adic(nz[0]))
        m = matmul(m, step)
    distinct = len(seen) == kmax
    increasing = all(a < b for a, b in zip(exps, exps[1:]))
    return CyclePowers(distinct, tuple(exps), increasing)


# -- Z_n ------------------------------------------------------------------------


def zn_weights(z: ZGraph) -> WeightFunction:
    """f(a -> v_i) = 1 and f(v_i -> b) = 2^i."""
    w = {}
    for v in z.middles:
        w[(z.a, v)] = 1
        w[(v, z.b)] = 2 ** z.middle_index(v)
    return WeightFunction(w)


def zn_type_words(z: ZGraph):
    """Yield (type number, word) for every canonical word of the five shapes:
    1: w; 2: w1 a w2; 3: w1 b w2; 4: w1 a w2 b w3; 5: w1 b w2 a w3 (w2 != ε).
    Every w_j is increasing.  Types 1-3 are multiplicity free; in types 4
    and 5 only c(w2) has to avoid c(w1) and c(w3)."""
    mids = z.middles
    a, b = z.a, z.b

    def subsets(pool):
        for k in range(len(pool) + 1):
            yield from combinations(pool, k)

    for s in subsets(mids):
        yield 1, tuple(s)
    for letter, kind in ((a, 2), (b, 3)):
        # multiplicity free: each middle vertex absent, before or after the letter
        for choice in _product((0, 1, 2), len(mids)):
            w1 = tuple(v for v, p in zip(mids, choice) if p == 1)
            w2 = tuple(v for v, p in zip(mids, choice) if p == 2)
            yield kind, w1 + (letter,) + w2
    # each middle vertex: absent, in w2 only, or in any non-empty subset of {w1, w3}
    placements = ((), (2,), (1,), (3,), (1, 3))
    for choice in _product(placements, len(mids)):
        w1 = tuple(v for v, p in zip(mids, choice) if 1 in p)
        w2 = tuple(v for v, p in zip(mids, choice) if 2 in p)
        w3 = tuple(v for v, p in zip(mids, choice) if 3 in p)
        yield 4, w1 + (a,) + w2 + (b,) + w3
        if w2:
            yield 5, w1 + (b,) + w2 + (a,) + w3


def _product(options, k):
    from itertools import product

    return product(options, repeat=k)


@dataclass(frozen=True)
class ZnReport:
    n: int
    elements: int
    effective: bool
    collision: tuple | None
    type_counts: dict
    classified: bool  # every element hit by exactly one type

    def __bool__(self):
        return self.effective and self.classified


def zn_representation_check(n: int, weights: WeightFunction | None = None, table=None) -> ZnReport:
    from .rewrite import hk_table

    z = build_zn(n)
    g = z.graph
    f = zn_weights(z) if weights is None else weights
    t = hk_table(g) if table is None else table
    eff = check_effective(g, f, t)
    types_of: dict[int, set] = {}
    for kind, w in zn_type_words(z):
        types_of.setdefault(t.element_of(w), set()).add(kind)
    classified = len(types_of) == len(t) and all(len(k) == 1 for k in types_of.values())
    counts: dict[int, int] = {}
    for kinds in types_of.values():
        for k in kinds:
            counts[k] = counts.get(k, 0) + 1
    return ZnReport(n, len(t), eff.effective, eff.collision, dict(sorted(counts.items())), classified)


# -- gluing ---------------------------------------------------------------------


@dataclass(frozen=True)
class GluingReport:
    glued: bool
    first: bool
    second: bool

    @property
    def holds(self) -> bool:
        return self.glued == (self.first and self.second)


def gluing_effectiveness(g: DirectedGraph, part1, part2, f: WeightFunction, cap: int = 200000) -> GluingReport:
    """Effectiveness of R_f on the glued graph against effectiveness on the two
    pieces with the restricted weights."""
    from .rewrite import hk_table

    validate_gluing(g, part1, part2)
    verdicts = []
    for part in (None, part1, part2):
        if part is None:
            h, fh = g, f
        else:
            h, old = induced_subgraph(g, part)
            fh = f.relabel(old, h)
        verdicts.append(check_effective(h, fh, hk_table(h, cap)).effective)
    return GluingReport(*verdicts)
