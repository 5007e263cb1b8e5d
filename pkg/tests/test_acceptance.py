"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line
(also collected for the terminal summary).  Run standalone with
``python3 tests/test_acceptance.py``."""

import time
from itertools import product

from hkmonoid.cli import fixture_graphs
from hkmonoid.combinatorics import (
    alternating_series,
    cardinality_formula,
    catalan,
    fibonacci_odd,
    idempotent_count,
    multiplicity_free_count,
    reversal_fixtures,
    reversal_inequality_check,
)
from hkmonoid.graph import (
    DirectedGraph,
    all_orientations,
    build_zn,
    chain,
    empty_graph,
    has_oriented_cycle,
    oriented_cycle,
)
from hkmonoid.errors import CapExceeded, Unstable
from hkmonoid.representation import (
    WeightFunction,
    check_cycle_powers,
    check_effective,
    check_well_defined,
    failing_relations,
    zn_representation_check,
)
from hkmonoid.rewrite import hk_table, idempotents, oracle_classes, zero_power_check

from conftest import ACCEPTANCE_LINES

UNORIENTED = DirectedGraph(2, frozenset({(0, 1), (1, 0)}), ("v", "w"))


def _run(number: int, title: str, fn, limit: float | None = None):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit:.0f}s"
    line = f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail} ({elapsed:.2f}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def _catalan():
    sizes = [len(hk_table(chain(n))) for n in range(1, 7)]
    expected = [catalan(n + 1) for n in range(1, 7)]
    return sizes == expected == [2, 5, 14, 42, 132, 429], f"sizes {sizes}"


def _fibonacci():
    reports, recursion = alternating_series(6)
    sizes = [r.enumerated_value for r in reports]
    ok = sizes == [fibonacci_odd(n) for n in range(7)] == [1, 2, 5, 13, 34, 89, 233] and recursion
    return ok, f"sizes {sizes}, recursion {recursion}"


def _formula():
    graphs = [g for n in range(1, 6) for g in all_orientations(n)]
    bad = [r.graph for r in map(cardinality_formula, graphs) if not r.match]
    return not bad, f"{len(graphs) - len(bad)}/{len(graphs)} orientations match"


def _multiplicity_free():
    bad = []
    total = 0
    for n in range(1, 6):
        for g in all_orientations(n):
            total += 1
            r = multiplicity_free_count(g)
            if not (r.match and r.enumerated_value == fibonacci_odd(n)):
                bad.append(r.graph)
    return not bad, f"{total - len(bad)}/{total} orientations give F(2n+1)"


def _idempotents():
    graphs = [g for g in fixture_graphs().values() if g.n <= 5 and not has_oriented_cycle(g)]
    graphs += [g for n in range(1, 6) for g in all_orientations(n)]
    graphs += [empty_graph(n) for n in range(6)]
    graphs.append(DirectedGraph(3, frozenset({(0, 1), (1, 2), (0, 2)})))
    ok = True
    for g in graphs:
        r = idempotent_count(g)
        ok &= r.match and r.enumerated_value == 2**g.n == len(idempotents(hk_table(g)))
    tri = idempotent_count(oriented_cycle(3))
    ok &= tri.match and tri.formula_value == 7 and dict(tri.breakdown[:1])["method"] == "subgraphs"
    return ok, f"{len(graphs)} acyclic graphs give 2^n, triangle {tri.enumerated_value} vs {tri.formula_value}"


def _r1_effective():
    bad = []
    total = 0
    for n in range(1, 6):
        for g in all_orientations(n):
            total += 1
            res = check_effective(g, WeightFunction.constant(g, 1), hk_table(g))
            if res.distinct != res.elements:
                bad.append(g.describe())
    return not bad, f"{total - len(bad)}/{total} orientations effective"


def _weight_independence():
    ok = True
    for n in range(1, 6):
        g = chain(n)
        t = hk_table(g)
        mixed = (2, -1, 3, 5)
        weightings = [
            WeightFunction.constant(g, 1),
            WeightFunction.constant(g, 2),
            WeightFunction({e: mixed[i % 4] for i, e in enumerate(sorted(g.edges))}),
        ]
        ok &= all(check_effective(g, f, t).effective for f in weightings)
    return ok, "f=1, f=2 and mixed weights effective for n = 1..5"


def _unoriented():
    t = hk_table(UNORIENTED)
    f = WeightFunction({(0, 1): 0, (1, 0): 1}, allow_zero=True)
    res = check_effective(UNORIENTED, f, t)
    pair = [t.normal_forms[e] for e in res.collision] if res.collision else None
    ok = pair == [(1, 0), (0, 1, 0)]  # [wv] and [vwv]
    nonzero = WeightFunction({(0, 1): 2, (1, 0): 3})
    ok &= not check_well_defined(UNORIENTED, nonzero)
    ok &= [r.kind for r in failing_relations(UNORIENTED, nonzero)] == ["braid"]
    return ok, "collision [wv] = [vwv]; braid fails with nonzero weights"


def _zn():
    reports = [zn_representation_check(n) for n in (4, 5, 6)]
    ok = all(r.effective and r.classified for r in reports)
    return ok, ", ".join(f"Z{r.n}: {r.elements} elements" for r in reports)


def _cycle():
    tri = oriented_cycle(3)
    res = check_cycle_powers(tri, (0, 1, 2), kmax=10)
    ok = bool(res)
    checked = 0
    for g in [chain(3), chain(4), build_zn(4).graph] + all_orientations(4):
        t = hk_table(g)
        for k in range(1, 5):
            for w in product(range(g.n), repeat=k):
                ok &= zero_power_check(t, g, w)
                checked += 1
    return ok, f"exponents {list(res.exponents)}; {checked} acyclic words reach their zero"


def _oracle():
    graphs = [g for g in fixture_graphs().values() if 0 < g.n <= 4 and not has_oriented_cycle(g)]
    graphs += all_orientations(4) + [UNORIENTED, empty_graph(3)]
    ok = True
    for g in graphs:
        t = hk_table(g)
        r = oracle_classes(g, max(6, max(map(len, t.normal_forms))), slack=1)
        ok &= r.certified and len(r) == len(t)
        cls, rs = r.class_of, t.system
        nf_of_class: dict = {}
        for k in range(7):
            for w in product(range(g.n), repeat=k):
                ok &= nf_of_class.setdefault(cls[w], rs.normal_form(w)) == rs.normal_form(w)
        ok &= len(set(nf_of_class.values())) == len(nf_of_class)
    # both sides refuse the triangle
    tri = oriented_cycle(3)
    for fn in (lambda: hk_table(tri, cap=2000), lambda: oracle_classes(tri, 4, slack=1)):
        try:
            fn()
            ok = False
        except (CapExceeded, Unstable):
            pass
    return ok, f"{len(graphs)} graphs agree on counts and on all words of length <= 6"


def _reversal():
    fixtures = reversal_fixtures()
    reports = [reversal_inequality_check(g, s, a) for g, s, a in fixtures]
    equal = sum(r.size == r.reversed_size for r in reports)
    ok = all(r.holds for r in reports) and 0 < equal < len(reports)
    return ok, f"{len(reports)} glued graphs, {equal} with equality (all isolated glue)"


def test_criterion_01_catalan():
    _run(1, "Catalan cardinalities", _catalan, 10)


def test_criterion_02_fibonacci():
    _run(2, "Fibonacci cardinalities", _fibonacci, 10)


def test_criterion_03_full_formula():
    _run(3, "cardinality formula", _formula, 60)


def test_criterion_04_multiplicity_free():
    _run(4, "multiplicity-free count", _multiplicity_free, 60)


def test_criterion_05_idempotents():
    _run(5, "idempotents", _idempotents)


def test_criterion_06_r1_effective():
    _run(6, "R_1 effective", _r1_effective, 120)


def test_criterion_07_weight_independence():
    _run(7, "weight independence", _weight_independence)


def test_criterion_08_unoriented_edge():
    _run(8, "unoriented edge failure", _unoriented)


def test_criterion_09_zn():
    _run(9, "Z_n representation", _zn, 120)


def test_criterion_10_cycle_dichotomy():
    _run(10, "cycle dichotomy", _cycle)


def test_criterion_11_oracle_agreement():
    _run(11, "oracle agreement", _oracle)


def test_criterion_12_reversal():
    _run(12, "reversal inequality", _reversal)


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
