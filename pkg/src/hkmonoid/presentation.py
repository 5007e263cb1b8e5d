"""Words over the vertex alphabet and the defining relations of HK_Γ.

A word is a tuple of vertex indices; the empty tuple is the empty word.
Deciding whether two words are equal *in the monoid* is the rewrite
module's job; everything here is purely syntactic except the two
multiplicity-free helpers at the bottom, which consult a rewrite system.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import NotMultiplicityFree, NotSourceOrSink, NotTypeA, ParseError
from .graph import DirectedGraph, canonical_order, is_type_An, sources_and_sinks

Word = tuple

EPSILON: Word = ()


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    kind: str  # "idempotent" | "commute" | "arrow" | "braid"

    def __post_init__(self):
        if self.lhs == self.rhs:
            raise ValueError("relation sides must differ")


def relations_of(g: DirectedGraph) -> list[Relation]:
    rels = [Relation((x, x), (x,), "idempotent") for x in g.vertices]
    for x, y in combinations(g.vertices, 2):
        if not g.adjacent(x, y):
            rels.append(Relation((y, x), (x, y), "commute"))
    for x, y in sorted(g.edges):
        if (y, x) not in g.edges:
            rels.append(Relation((x, y, x), (x, y), "arrow"))
            rels.append(Relation((y, x, y), (x, y), "arrow"))
    for x, y in sorted(g.unoriented_pairs):
        rels.append(Relation((x, y, x), (y, x, y), "braid"))
    return rels


def content(w: Iterable[int]) -> frozenset:
    return frozenset(w)


def _occurrences(w: Word, pattern: Word):
    k = len(pattern)
    for i in range(len(w) - k + 1):
        if w[i : i + k] == pattern:
            yield i


def single_step_neighbors(w: Sequence[int], rels: Iterable[Relation]) -> set:
    """Every word reachable from ``w`` by one relation applied once, in either
    direction."""
    w = tuple(w)
    out = set()
    for rel in rels:
        for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            for i in _occurrences(w, src):
                out.add(w[:i] + dst + w[i + len(src) :])
    return out


def mf_reduce(g: DirectedGraph, w: Sequence[int], targets: Iterable[int]) -> Word:
    """Delete superfluous occurrences of each target vertex.

    A source (or isolated vertex) keeps its leftmost occurrence, a sink its
    rightmost.  The result is a subword of ``w`` and represents the same
    element.
    """
    w = list(w)
    boundary = sources_and_sinks(g)
    for a in sorted(set(targets)):
        if a not in boundary:
            raise NotSourceOrSink(f"vertex {g.label(a)} is neither a source nor a sink")
        positions = [i for i, x in enumerate(w) if x == a]
        if len(positions) < 2:
            continue
        keep = positions[0] if not g.in_neighbors[a] else positions[-1]
        w = [x for i, x in enumerate(w) if x != a or i == keep]
    return tuple(w)


def canonical_projection(w: Sequence[int], keep: Iterable[int]) -> Word:
    keep = set(keep)
    return tuple(x for x in w if x in keep)


def is_multiplicity_free_word(w: Sequence[int]) -> bool:
    return len(set(w)) == len(w)


def _rewriter(g, rs):
    if rs is None:
        from .rewrite import system_for

        rs = system_for(g)
    return rs


def multiplicity_free_representative(g: DirectedGraph, w: Sequence[int], rs=None) -> Word | None:
    """A multiplicity-free word equal to ``w`` in HK_Γ, or None.

    First tries the source/sink reduction; failing that, searches all
    arrangements of the content (every multiplicity-free word in the class
    has exactly that content).
    """
    reduced = mf_reduce(g, w, sources_and_sinks(g) & set(w))
    if is_multiplicity_free_word(reduced):
        return reduced
    rs = _rewriter(g, rs)
    target = rs.normal_form(w)
    for perm in permutations(sorted(set(w))):
        if rs.normal_form(perm) == target:
            return perm
    return None


def is_multiplicity_free_element(g: DirectedGraph, w: Sequence[int], rs=None) -> bool:
    if not is_type_An(g):
        raise NotTypeA("multiplicity-free test needs a type A_n graph")
    return multiplicity_free_representative(g, w, rs) is not None


def mf_normal_form(g: DirectedGraph, w: Sequence[int], rs=None) -> Word:
    """Image of a multiplicity-free element under the bijection onto the
    HK monoid of the alternating graph.

    Walks the canonical order v1..vn and either appends or prepends v_{i+1}
    according to whether v_i occurs before or after it.  The output is over
    the same vertex ids; read it in :func:`graph.alternating` via
    :func:`canonical_order`.
    """
    order = canonical_order(g)
    w = tuple(w)
    if not is_multiplicity_free_word(w):
        rep = multiplicity_free_representative(g, w, rs)
        if rep is None:
            raise NotMultiplicityFree("element contains no multiplicity-free word")
        w = rep
    pos = {x: i for i, x in enumerate(w)}
    out: list[int] = [order[0]] if order[0] in pos else []
    for prev, cur in zip(order, order[1:]):
        if cur not in pos:
            continue
        if prev not in pos or pos[prev] < pos[cur]:
            out.append(cur)
        else:
            out.insert(0, cur)
    return tuple(out)


# -- text format --------------------------------------------------------------


def parse_word(g: DirectedGraph, text: str) -> Word:
    """Whitespace separated labels/indices; ``-`` (or empty) is the empty word.
    Without whitespace, a string of single-character labels or digits is
    split per character."""
    text = text.strip()
    if text in ("", "-", "ε"):
        return EPSILON
    tokens = text.split()
    if len(tokens) == 1:
        tok = tokens[0]
        try:
            return (g.vertex(tok),)
        except ParseError:
            tokens = list(tok)
    return tuple(g.vertex(t) for t in tokens)


def format_word(g: DirectedGraph, w: Sequence[int]) -> str:
    if not w:
        return "-"
    labels = [g.label(x) for x in w]
    sep = "" if all(len(s) == 1 for s in labels) else " "
    return sep.join(labels)
