"""Deciding equality in HK_Γ and listing its elements.

Two independent routes:

* :func:`complete` runs Knuth-Bendix completion over shortlex order and
  gives a convergent string rewriting system; :func:`enumerate_elements`
  then walks right multiplication by generators from the empty word.
* :func:`oracle_classes` is a brute-force union-find over every word up to
  a length bound, joined by single relation applications.  It shares
  nothing with the completion path except the relation list.

Internally words are encoded as Python strings: letter ``x`` becomes
``chr(BASE + rank[x])`` so that built-in string comparison is the
lexicographic part of shortlex and ``str.find`` does the matching.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import CapExceeded, HasCycle, LimitExceeded, NotComplete, Unstable
from .graph import DirectedGraph, canonical_order, has_oriented_cycle, is_type_An
from .presentation import Relation, Word, content, relations_of

log = logging.getLogger(__name__)

BASE = 0x100
DEFAULT_MAX_RULES = 20000
DEFAULT_MAX_RULE_LEN = 24


def default_priority(g: DirectedGraph) -> list[int]:
    """Canonical path order for type A_n graphs, index order otherwise."""
    if is_type_An(g):
        return canonical_order(g)
    return list(g.vertices)


def _shortlex_key(s: str):
    return (len(s), s)


def _ordered(u: str, v: str) -> tuple[str, str]:
    return (u, v) if _shortlex_key(u) > _shortlex_key(v) else (v, u)


@dataclass
class RewriteSystem:
    priority: tuple
    rules: dict = field(default_factory=dict)  # encoded lhs -> encoded rhs
    complete: bool = False
    _cached_lengths: list | None = field(default=None, repr=False, compare=False)

    @cached_property
    def _rank(self) -> dict:
        return {v: i for i, v in enumerate(self.priority)}

    def encode(self, w: Sequence[int]) -> str:
        rank = self._rank
        return "".join(chr(BASE + rank[x]) for x in w)

    def decode(self, s: str) -> Word:
        pr = self.priority
        return tuple(pr[ord(c) - BASE] for c in s)

    def shortlex_key(self, w: Sequence[int]):
        return _shortlex_key(self.encode(w))

    @property
    def rule_list(self) -> list[tuple[Word, Word]]:
        items = sorted(self.rules.items(), key=lambda kv: _shortlex_key(kv[0]))
        return [(self.decode(l), self.decode(r)) for l, r in items]

    def _lengths(self):
        # rules only stop changing once completion has finished
        if not self.complete:
            return sorted({len(l) for l in self.rules})
        if self._cached_lengths is None:
            self._cached_lengths = sorted({len(l) for l in self.rules})
        return self._cached_lengths

    def reduce_encoded(self, s: str, start: int = 0) -> str:
        """Leftmost-innermost rewriting to an irreducible string.

        ``start`` may skip a prefix already known to contain no redex start.
        """
        rules = self.rules
        lengths = self._lengths()
        longest = lengths[-1] if lengths else 0
        i = start
        while i < len(s):
            for k in lengths:
                if i + k > len(s):
                    i += 1
                    break
                rhs = rules.get(s[i : i + k])
                if rhs is not None:
                    s = s[:i] + rhs + s[i + k :]
                    i = max(0, i - longest)
                    break
            else:
                i += 1
        return s

    def normal_form(self, w: Sequence[int]) -> Word:
        if not self.complete:
            raise NotComplete("rewrite system is not known to be confluent")
        return self.decode(self.reduce_encoded(self.encode(w)))

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.normal_form(u) == self.normal_form(v)


def complete(
    rels: Iterable[Relation],
    priority: Sequence[int],
    max_rules: int = DEFAULT_MAX_RULES,
    max_rule_len: int = DEFAULT_MAX_RULE_LEN,
) -> RewriteSystem:
    """Knuth-Bendix completion over shortlex with the given letter priority.

    Raises :class:`LimitExceeded` (carrying the partial system) when the rule
    count or a rule length passes its limit.
    """
    rs = RewriteSystem(tuple(priority))
    rules = rs.rules
    pending: list = []
    counter = 0

    def push(u, v):
        nonlocal counter
        counter += 1
        heapq.heappush(pending, (max(len(u), len(v)), counter, u, v))

    for rel in rels:
        push(rs.encode(rel.lhs), rs.encode(rel.rhs))

    while pending:
        _, _, u, v = heapq.heappop(pending)
        u, v = rs.reduce_encoded(u), rs.reduce_encoded(v)
        if u == v:
            continue
        lhs, rhs = _ordered(u, v)
        if len(lhs) > max_rule_len:
            raise LimitExceeded(f"rule length {len(lhs)} exceeds {max_rule_len}", rs)

        # inter-reduce: rules whose lhs contains the new lhs go back to the queue,
        # right-hand sides get simplified in place
        rules[lhs] = rhs
        for l2 in list(rules):
            if l2 == lhs:
                continue
            if lhs in l2:
                r2 = rules.pop(l2)
                push(l2, r2)
        for l2, r2 in list(rules.items()):
            if l2 != lhs and lhs in r2:
                rules[l2] = rs.reduce_encoded(r2)

        for l2, r2 in list(rules.items()):
            for a, ra, b, rb in ((lhs, rhs, l2, r2), (l2, r2, lhs, rhs)):
                # suffix of a overlaps prefix of b
                for k in range(1, min(len(a), len(b))):
                    if a[-k:] == b[:k]:
                        push(ra + b[k:], a[:-k] + rb)
                if l2 == lhs:
                    break
        if len(rules) > max_rules:
            raise LimitExceeded(f"more than {max_rules} rules", rs)

    rs.complete = True
    log.debug("completion finished with %d rules", len(rules))
    return rs


def system_for(
    g: DirectedGraph,
    priority: Sequence[int] | None = None,
    max_rules: int = DEFAULT_MAX_RULES,
    max_rule_len: int = DEFAULT_MAX_RULE_LEN,
) -> RewriteSystem:
    if priority is None:
        priority = default_priority(g)
    return complete(relations_of(g), priority, max_rules, max_rule_len)


def critical_pairs_resolve(rs: RewriteSystem) -> bool:
    """Independent local-confluence check over all overlaps."""
    items = list(rs.rules.items())
    for l1, r1 in items:
        for l2, r2 in items:
            for k in range(1, min(len(l1), len(l2))):
                if l1[-k:] == l2[:k]:
                    if rs.reduce_encoded(r1 + l2[k:]) != rs.reduce_encoded(l1[:-k] + r2):
                        return False
            if len(l2) < len(l1) and l2 in l1:
                i = l1.index(l2)
                if rs.reduce_encoded(r1) != rs.reduce_encoded(l1[:i] + r2 + l1[i + len(l2) :]):
                    return False
    return True


# -- element table ------------------------------------------------------------


@dataclass(frozen=True)
class ElementTable:
    graph: DirectedGraph
    system: RewriteSystem
    normal_forms: tuple  # shortlex order; ElementId = position
    cayley: tuple  # cayley[e][x] = id of e * x

    @cached_property
    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.normal_forms)}

    def __len__(self):
        return len(self.normal_forms)

    @property
    def identity(self) -> int:
        return self.index[()]

    def element_of(self, w: Sequence[int]) -> int:
        e = self.identity
        for x in w:
            e = self.cayley[e][x]
        return e

    def multiply(self, e: int, f: int) -> int:
        for x in self.normal_forms[f]:
            e = self.cayley[e][x]
        return e

    def power(self, e: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.multiply(out, e)
        return out

    def content(self, e: int) -> frozenset:
        return content(self.normal_forms[e])

    def export(self) -> str:
        from .presentation import format_word

        g = self.graph
        lines = [f"# {len(self)} elements"]
        lines += [format_word(g, w) for w in self.normal_forms]
        lines.append("# cayley: row per element, column per generator " + " ".join(g.labels))
        lines += [" ".join(str(j) for j in row) for row in self.cayley]
        return "\n".join(lines) + "\n"


def enumerate_elements(rs: RewriteSystem, g: DirectedGraph, cap: int = 200000) -> ElementTable:
    """Breadth-first closure of {ε} under right multiplication by generators."""
    if not rs.complete:
        raise NotComplete("enumeration needs a complete rewrite system")
    gens = sorted(g.vertices, key=lambda x: rs._rank[x])
    enc = {x: rs.encode((x,)) for x in gens}
    longest = max((len(l) for l in rs.rules), default=1)
    found = {"": 0}
    order = [""]
    edges = []
    i = 0
    while i < len(order):
        s = order[i]
        row = {}
        for x in gens:
            # s is irreducible, so a redex in s+x must touch the last letter
            t = rs.reduce_encoded(s + enc[x], max(0, len(s) - longest + 1))
            j = found.get(t)
            if j is None:
                if len(order) >= cap:
                    raise CapExceeded(
                        f"more than {cap} elements; monoid likely infinite or too large",
                        found=len(order),
                    )
                j = found[t] = len(order)
                order.append(t)
            row[x] = j
        edges.append(row)
        i += 1
    perm = sorted(range(len(order)), key=lambda j: _shortlex_key(order[j]))
    new_id = {old: new for new, old in enumerate(perm)}
    nfs = tuple(rs.decode(order[old]) for old in perm)
    cayley = tuple(tuple(new_id[edges[old][x]] for x in g.vertices) for old in perm)
    return ElementTable(g, rs, nfs, cayley)


def hk_table(g: DirectedGraph, cap: int = 200000, priority=None, **limits) -> ElementTable:
    return enumerate_elements(system_for(g, priority, **limits), g, cap)


def idempotents(t: ElementTable, verify: bool = True) -> frozenset:
    """Idempotent elements; with ``verify`` also checks that content is a
    bijection onto the acyclic vertex subsets."""
    idem = frozenset(e for e in range(len(t)) if t.multiply(e, e) == e)
    if verify:
        from .graph import full_subsets

        contents = [t.content(e) for e in idem]
        acyclic = {s for s in full_subsets(t.graph) if not has_oriented_cycle(t.graph, s)}
        if len(set(contents)) != len(contents) or set(contents) != acyclic:
            raise AssertionError("idempotent/acyclic-subgraph correspondence violated")
    return idem


def zero_power_check(t: ElementTable, g: DirectedGraph, w: Sequence[int]) -> bool:
    """[w]^k for k = |content(w)| is idempotent, stable for all larger k and
    equal to the unique idempotent with content(w) (the zero of the content
    submonoid).  ``t`` must be a table of ``g`` (or of a graph containing the
    content of ``w`` as a full subgraph)."""
    c = content(w)
    if has_oriented_cycle(g, c):
        raise HasCycle("content of w induces an oriented cycle")
    e = t.element_of(w)
    k = len(c)
    pk = t.power(e, k)
    if t.multiply(pk, e) != pk:
        return False
    zeros = [f for f in range(len(t)) if t.content(f) == c and t.multiply(f, f) == f]
    if len(zeros) != 1 or zeros[0] != pk:
        return False
    # absorbing inside the content class
    same = [f for f in range(len(t)) if t.content(f) == c]
    return all(t.multiply(pk, f) == pk == t.multiply(f, pk) for f in same)


# -- brute-force oracle -------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    max_len: int
    slack: int
    classes: tuple  # tuple of frozensets of words (length <= max_len)
    certified: bool

    def __len__(self):
        return len(self.classes)

    @cached_property
    def class_of(self) -> dict:
        return {w: i for i, cls in enumerate(self.classes) for w in cls}

    def same(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.class_of[tuple(u)] == self.class_of[tuple(v)]


def _union_find_classes(g: DirectedGraph, max_len: int, bound: int):
    """Join words of length <= bound by single relation steps; return the
    class partition of the length <= max_len words after each bound in
    ``max_len .. bound`` is completed."""
    rels = relations_of(g)
    # only the length-non-increasing direction is needed: the other end of
    # every edge is also in the universe and finds it from its side
    pairs = []
    for rel in rels:
        a, b = (rel.lhs, rel.rhs) if len(rel.lhs) >= len(rel.rhs) else (rel.rhs, rel.lhs)
        pairs.append((_chars(a), _chars(b)))
        if len(a) == len(b):
            pairs.append((_chars(b), _chars(a)))

    parent: dict[str, str] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    alphabet = [_chars((x,)) for x in g.vertices]
    snapshots = {}
    for length in range(bound + 1):
        layer = ["".join(p) for p in product(alphabet, repeat=length)]
        for w in layer:
            parent[w] = w
        for w in layer:
            for src, dst in pairs:
                i = w.find(src)
                while i != -1:
                    other = w[:i] + dst + w[i + len(src) :]
                    ra, rb = find(w), find(other)
                    if ra != rb:
                        parent[ra] = rb
                    i = w.find(src, i + 1)
        if length >= max_len:
            snapshots[length] = _partition(parent, find, max_len)
    return snapshots, find, parent


def _chars(w) -> str:
    return "".join(chr(BASE + x) for x in w)


def _unchars(s: str) -> Word:
    return tuple(ord(c) - BASE for c in s)


def _partition(parent, find, max_len):
    groups: dict[str, list] = {}
    for w in parent:
        if len(w) <= max_len:
            groups.setdefault(find(w), []).append(w)
    return groups


def oracle_classes(g: DirectedGraph, max_len: int, slack: int = 2, strict: bool = True) -> OracleResult:
    """Congruence classes of all words of length <= max_len, computed by
    bounded union-find, with a stability certificate.

    Certified when the class count is the same with ``slack`` and
    ``slack + 1`` and the counted classes are closed under right
    multiplication by every generator.
    """
    if slack < 1:
        raise ValueError("slack must be >= 1 so products by a generator are covered")
    snaps, find, parent = _union_find_classes(g, max_len, max_len + slack + 1)
    at_slack = snaps[max_len + slack]
    at_next = snaps[max_len + slack + 1]
    stable = len(at_slack) == len(at_next)
    # closure check against the final (largest) closure
    short_roots = {find(w) for w in parent if len(w) <= max_len}
    closed = all(
        find(w + _chars((x,))) in short_roots
        for w in parent
        if len(w) <= max_len
        for x in g.vertices
    )
    certified = stable and closed
    if strict and not certified:
        raise Unstable(
            f"oracle not certified at max_len={max_len}, slack={slack} "
            f"(stable={stable}, closed={closed})"
        )
    classes = tuple(
        sorted(
            (frozenset(_unchars(w) for w in members) for members in at_next.values()),
            key=lambda c: min((len(w), w) for w in c),
        )
    )
    return OracleResult(max_len, slack, classes, certified)


def oracle_count(g: DirectedGraph, start_len: int = 1, limit_len: int = 8, slack: int = 2) -> OracleResult:
    """Grow max_len until the oracle certifies; Unstable if it never does."""
    for max_len in range(start_len, limit_len + 1):
        res = oracle_classes(g, max_len, slack, strict=False)
        if res.certified:
            return res
    raise Unstable(f"oracle did not certify up to max_len={limit_len}")
