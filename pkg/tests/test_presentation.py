from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkmonoid.errors import NotMultiplicityFree, NotSourceOrSink, NotTypeA
from hkmonoid.graph import (
    DirectedGraph,
    all_orientations,
    alternating,
    canonical_order,
    chain,
    empty_graph,
    oriented_cycle,
    sources_and_sinks,
)
from hkmonoid.presentation import (
    EPSILON,
    Relation,
    canonical_projection,
    content,
    format_word,
    is_multiplicity_free_element,
    mf_normal_form,
    mf_reduce,
    parse_word,
    relations_of,
    single_step_neighbors,
)
from hkmonoid.rewrite import system_for

from conftest import table

A, B, C = 0, 1, 2


def pairs(rels):
    return [(r.lhs, r.rhs) for r in rels]


def test_relations_of_single_vertex():
    assert pairs(relations_of(chain(1))) == [((0, 0), (0,))]


def test_relations_of_edge():
    assert pairs(relations_of(chain(2))) == [
        ((0, 0), (0,)),
        ((1, 1), (1,)),
        ((0, 1, 0), (0, 1)),
        ((1, 0, 1), (0, 1)),
    ]


def test_relations_of_isolated_pair():
    assert pairs(relations_of(empty_graph(2))) == [((0, 0), (0,)), ((1, 1), (1,)), ((1, 0), (0, 1))]


def test_relations_of_unoriented_pair_is_braid():
    g = DirectedGraph(2, frozenset({(0, 1), (1, 0)}))
    kinds = [r.kind for r in relations_of(g)]
    assert kinds == ["idempotent", "idempotent", "braid"]


def test_relation_sides_differ():
    with pytest.raises(ValueError):
        Relation((0,), (0,), "idempotent")


def test_content():
    assert content(EPSILON) == frozenset()
    assert content((A, B, A)) == {A, B}
    assert content((A,) + (B, C)) == content((A,)) | content((B, C))


def test_single_step_neighbors():
    rels = relations_of(chain(2))
    n = single_step_neighbors((A, A), rels)
    assert (A,) in n and (A, A, A) in n
    n = single_step_neighbors((A, B), rels)
    assert {(A, A, B), (A, B, B), (A, B, A), (B, A, B)} <= n
    assert single_step_neighbors(EPSILON, rels) == set()


def test_mf_reduce():
    g = chain(2)
    assert mf_reduce(g, (A, B, A), {A}) == (A, B)
    assert mf_reduce(g, (B, A), {A, B}) == (B, A)
    assert mf_reduce(g, (B, A, B), {B}) == (A, B)
    with pytest.raises(NotSourceOrSink):
        mf_reduce(chain(3), (B, B), {B})


def test_canonical_projection():
    assert canonical_projection((A, B, C), {A, C}) == (A, C)
    assert canonical_projection(EPSILON, {A}) == EPSILON
    assert canonical_projection((C, A, B), {A, B, C}) == (C, A, B)


def test_is_multiplicity_free_element():
    g = chain(2)
    assert is_multiplicity_free_element(g, (B,))
    assert is_multiplicity_free_element(g, (A, B, A))
    assert is_multiplicity_free_element(g, (A, B, A, B))
    with pytest.raises(NotTypeA):
        is_multiplicity_free_element(oriented_cycle(3), (A,))


def test_one_element_of_chain3_is_not_multiplicity_free():
    g = chain(3)
    t = table(g)
    bad = [w for w in t.normal_forms if not is_multiplicity_free_element(g, w, t.system)]
    assert len(bad) == 1
    assert len(set(bad[0])) < len(bad[0])


def test_mf_normal_form_worked_example():
    g = chain(6)
    assert format_word(g, mf_normal_form(g, parse_word(g, "cfadb"))) == "cabdf"
    assert mf_normal_form(g, (A,)) == (A,)
    assert mf_normal_form(chain(2), (B, A)) == (B, A)


def test_mf_normal_form_rejects_non_mf_elements():
    g = chain(3)
    t = table(g)
    bad = next(w for w in t.normal_forms if not is_multiplicity_free_element(g, w, t.system))
    with pytest.raises(NotMultiplicityFree):
        mf_normal_form(g, bad, t.system)


def test_parse_and_format_word():
    g = chain(3)
    assert parse_word(g, "aba") == (A, B, A)
    assert parse_word(g, "a b") == (A, B)
    assert parse_word(g, "-") == EPSILON == parse_word(g, "")
    assert format_word(g, EPSILON) == "-"
    big = DirectedGraph(30, frozenset())
    assert parse_word(big, "v12 v3") == (12, 3)
    assert format_word(big, (12, 3)) == "v12 v3"


words = st.lists(st.integers(0, 3), max_size=8).map(tuple)
graphs4 = st.sampled_from(all_orientations(4) + [empty_graph(4)])


@given(graphs4, words)
def test_relations_preserve_content(g, w):
    for v in single_step_neighbors(w, relations_of(g)):
        assert content(v) == content(w)


@given(st.sampled_from(all_orientations(4) + all_orientations(5)), words)
def test_mf_reduce_is_an_equal_subword(g, w):
    rs = system_for(g)
    r = mf_reduce(g, w, sources_and_sinks(g) & set(w))
    it = iter(w)
    assert all(x in it for x in r)  # order-preserving embedding
    assert rs.normal_form(r) == rs.normal_form(w)


@given(words, words, st.sets(st.integers(0, 3)))
def test_projection_is_multiplicative(u, v, keep):
    assert canonical_projection(u + v, keep) == canonical_projection(u, keep) + canonical_projection(v, keep)


@given(graphs4)
def test_equal_content_is_a_subsemigroup(g):
    t = table(g)
    for x, y in product(range(len(t)), repeat=2):
        if t.content(x) == t.content(y):
            assert t.content(t.multiply(x, y)) == t.content(x)


@pytest.mark.parametrize("n", range(1, 7))
def test_phi_is_a_bijection_onto_alternating(n):
    target = table(alternating(n))
    for g in all_orientations(n) if n <= 5 else [chain(n), alternating(n)]:
        t = table(g)
        order_map = None
        images = set()
        mf = 0
        for w in t.normal_forms:
            if not is_multiplicity_free_element(g, w, t.system):
                continue
            mf += 1
            order_map = order_map or {v: i for i, v in enumerate(canonical_order(g))}
            images.add(target.element_of(tuple(order_map[x] for x in mf_normal_form(g, w, t.system))))
        assert mf == len(images) == len(target)
