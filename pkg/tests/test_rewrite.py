from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hkmonoid.errors import CapExceeded, HasCycle, LimitExceeded, NotComplete, Unstable
from hkmonoid.graph import (
    DirectedGraph,
    all_orientations,
    alternating,
    build_zn,
    chain,
    empty_graph,
    oriented_cycle,
)
from hkmonoid.presentation import relations_of
from hkmonoid.rewrite import (
    RewriteSystem,
    complete,
    critical_pairs_resolve,
    hk_table,
    idempotents,
    oracle_classes,
    oracle_count,
    system_for,
    zero_power_check,
)

from conftest import table

A, B, C = 0, 1, 2
TRIANGLE = oriented_cycle(3)
SMALL = all_orientations(1) + all_orientations(2) + all_orientations(3) + all_orientations(4) + [empty_graph(2), empty_graph(3)]


def test_complete_single_vertex():
    rs = system_for(chain(1))
    assert rs.complete
    assert rs.rule_list == [((0, 0), (0,))]


def test_complete_edge_gives_five_normal_forms():
    rs = system_for(chain(2))
    assert rs.complete and critical_pairs_resolve(rs)
    assert len(hk_table(chain(2))) == 5


def test_rule_limits_raise_with_partial_system():
    with pytest.raises(LimitExceeded) as info:
        system_for(build_zn(5).graph, max_rules=20)
    assert isinstance(info.value.partial, RewriteSystem)
    with pytest.raises(LimitExceeded):
        system_for(chain(5), max_rule_len=3)


def test_triangle_enumeration_hits_the_cap():
    # completion of the triangle terminates on its defining rules; the
    # monoid is still infinite, so enumeration must stop at the cap
    with pytest.raises(CapExceeded) as info:
        hk_table(TRIANGLE, cap=500)
    assert info.value.found == 500


def test_normal_form_examples():
    rs = system_for(chain(2))
    assert rs.normal_form((A, A)) == (A,)
    assert rs.normal_form((A, B, A)) == rs.normal_form((A, B))
    assert system_for(empty_graph(2)).normal_form((B, A)) == (A, B)


def test_normal_form_needs_complete_system():
    rs = RewriteSystem((0, 1))
    with pytest.raises(NotComplete):
        rs.normal_form((0,))


def test_priority_changes_normal_forms_not_counts():
    g = empty_graph(2)
    rs = system_for(g, priority=[1, 0])
    assert rs.normal_form((A, B)) == (B, A)
    assert len(hk_table(chain(3), priority=[2, 0, 1])) == 14


def test_enumerate_examples():
    assert hk_table(empty_graph(0)).normal_forms == ((),)
    assert set(hk_table(chain(2)).normal_forms) == {(), (A,), (B,), (A, B), (B, A)}
    assert len(hk_table(alternating(3))) == 13


def test_table_structure():
    t = table(chain(3))
    assert len(set(t.normal_forms)) == len(t)
    keys = [(len(w), w) for w in t.normal_forms]
    assert keys == sorted(keys)
    for e, row in enumerate(t.cayley):
        for x, f in enumerate(row):
            assert t.normal_forms[f] == t.system.normal_form(t.normal_forms[e] + (x,))
    assert t.identity == 0
    assert "14 elements" in t.export()


def test_normal_forms_are_irreducible():
    t = table(build_zn(4).graph)
    rs = t.system
    for w in t.normal_forms:
        enc = rs.encode(w)
        assert not any(lhs in enc for lhs in rs.rules)


def test_oracle_examples():
    r = oracle_classes(chain(2), 4, slack=2)
    assert len(r) == 5 and r.certified
    r = oracle_classes(chain(1), 2)
    assert sorted(map(sorted, r.classes)) == [[()], [(0,), (0, 0)]]
    assert r.same((0,), (0, 0))
    for m in (2, 3, 4):
        with pytest.raises(Unstable):
            oracle_classes(TRIANGLE, m, slack=1)
    with pytest.raises(Unstable):
        oracle_count(TRIANGLE, limit_len=5, slack=1)


def test_oracle_frozen_counts():
    # certified oracle counts, computed independently of completion
    expected = {chain(1): 2, chain(2): 5, chain(3): 14, alternating(3): 13, alternating(4): 34}
    for g, n in expected.items():
        assert len(oracle_count(g, slack=1)) == n
        assert len(table(g)) == n


def test_idempotents():
    t = table(chain(2))
    assert {t.normal_forms[e] for e in idempotents(t)} == {(), (A,), (B,), (A, B)}
    for g in SMALL:
        t = table(g)
        assert len(idempotents(t)) == 2 ** g.n
        assert t.identity in idempotents(t)


def test_zero_power_check():
    t = table(chain(2))
    assert zero_power_check(t, chain(2), (A, B))
    assert zero_power_check(t, chain(2), (B,))
    t3 = table(chain(3))
    assert zero_power_check(t3, chain(3), (A, B, C))
    assert t3.power(t3.element_of((C, B, A)), 3) == t3.power(t3.element_of((C, B, A)), 4)
    with pytest.raises(HasCycle):
        zero_power_check(t3, TRIANGLE, (A, B, C))


@pytest.mark.parametrize("g", SMALL, ids=lambda g: g.describe())
def test_associativity(g):
    t = table(g)
    n = len(t)
    for x, y, z in product(range(n), repeat=3):
        assert t.multiply(t.multiply(x, y), z) == t.multiply(x, t.multiply(y, z))


@pytest.mark.parametrize("g", all_orientations(5) + [build_zn(5).graph], ids=lambda g: g.describe())
def test_confluence_check(g):
    assert critical_pairs_resolve(system_for(g))


@pytest.mark.parametrize("n", range(1, 6))
def test_type_a_has_unique_maximal_idempotent(n):
    for g in all_orientations(n):
        t = table(g)
        full = frozenset(g.vertices)
        zeros = [e for e in idempotents(t) if t.content(e) == full]
        assert len(zeros) == 1
        assert all(t.multiply(zeros[0], e) == zeros[0] for e in range(len(t)) if t.content(e) == full)


words = st.lists(st.integers(0, 3), max_size=10).map(tuple)


@given(st.sampled_from(all_orientations(4) + [build_zn(4).graph]), words)
def test_normal_form_properties(g, w):
    rs = system_for(g)
    nf = rs.normal_form(w)
    assert rs.normal_form(nf) == nf
    assert rs.shortlex_key(nf) <= rs.shortlex_key(w)
    assert set(nf) == set(w)


def test_rules_decrease_shortlex():
    for g in all_orientations(4) + [build_zn(5).graph]:
        rs = system_for(g)
        for lhs, rhs in rs.rule_list:
            assert rs.shortlex_key(rhs) < rs.shortlex_key(lhs)


def test_completion_input_is_the_presentation():
    g = chain(3)
    rs = complete(relations_of(g), [0, 1, 2])
    for rel in relations_of(g):
        assert rs.equal(rel.lhs, rel.rhs)


def test_unoriented_pair_is_0_hecke_of_s3():
    g = DirectedGraph(2, frozenset({(0, 1), (1, 0)}))
    assert len(hk_table(g)) == 6
