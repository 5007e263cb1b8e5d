"""Command-line front end: ``hkmonoid {enumerate,verify,rep,reduce,fixtures}``.

Exit codes: 0 ok, 2 mismatch / not effective, 3 cap or completion limit
hit, 4 bad input.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import combinatorics as comb
from .errors import HKError, ResourceExhausted
from .graph import (
    DirectedGraph,
    all_orientations,
    alternating,
    build_zn,
    chain,
    empty_graph,
    format_graph,
    graph_id,
    has_oriented_cycle,
    is_type_An,
    oriented_cycle,
    oriented_path,
    parse_graph,
    sources_and_sinks,
)
from .presentation import content, format_word, is_multiplicity_free_element, mf_normal_form, mf_reduce, parse_word
from .representation import (
    WeightFunction,
    check_cycle_powers,
    check_effective,
    format_matrix,
    parse_weights,
    represent,
    zn_representation_check,
)
from .rewrite import hk_table, system_for

EXIT_OK, EXIT_MISMATCH, EXIT_LIMIT, EXIT_INPUT = 0, 2, 3, 4
DEFAULT_CAP = 200000

_BUILDER = re.compile(r"^\s*([a-z_]+)\s*(?:\(\s*([^)]*)\s*\))?\s*$")


def build_graph(expr: str) -> DirectedGraph:
    """``chain(4)``, ``alternating(3)``, ``path(RLR)``, ``zn(5)``,
    ``cycle(3)``, ``triangle``, ``empty(2)``, ``unoriented``."""
    m = _BUILDER.match(expr)
    if not m:
        raise ValueError(f"bad builder expression {expr!r}")
    name, arg = m.group(1), m.group(2)
    if name == "path":
        return oriented_path(arg or "")
    if name == "triangle":
        return oriented_cycle(3)
    if name == "unoriented":
        return DirectedGraph(2, frozenset({(0, 1), (1, 0)}))
    builders = {
        "chain": chain,
        "alternating": alternating,
        "zn": lambda k: build_zn(k).graph,
        "cycle": oriented_cycle,
        "empty": empty_graph,
    }
    if name not in builders or arg is None or not arg.isdigit():
        raise ValueError(f"bad builder expression {expr!r}")
    return builders[name](int(arg))


def fixture_graphs() -> dict[str, DirectedGraph]:
    out = {f"chain{n}": chain(n) for n in range(1, 7)}
    out.update({f"alt{n}": alternating(n) for n in range(0, 7)})
    out.update({f"z{n}": build_zn(n).graph for n in (4, 5, 6)})
    out["triangle"] = oriented_cycle(3)
    out["empty"] = empty_graph(0)
    out["unoriented"] = DirectedGraph(2, frozenset({(0, 1), (1, 0)}))
    return out


def _load_graph(args) -> DirectedGraph | None:
    if args.graph and args.builder:
        raise ValueError("give either --graph or --builder, not both")
    if args.graph:
        try:
            text = Path(args.graph).read_text()
        except OSError as exc:
            raise ValueError(f"cannot read {args.graph}: {exc.strerror}") from None
        return parse_graph(text)
    if args.builder:
        return build_graph(args.builder)
    return None


def _require_graph(args) -> DirectedGraph:
    g = _load_graph(args)
    if g is None:
        raise ValueError("this command needs --graph or --builder")
    return g


def _weights(args, g: DirectedGraph) -> WeightFunction:
    if args.weights and args.weights_const is not None:
        raise ValueError("give either --weights or --weights-const, not both")
    if args.weights:
        return parse_weights(g, args.weights)
    c = 1 if args.weights_const is None else args.weights_const
    return WeightFunction.constant(g, c)


# -- enumerate --------------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    g = _require_graph(args)
    if has_oriented_cycle(g):
        out("error: graph has an oriented cycle; its monoid is infinite (powers of a cycle word never repeat)")
        return EXIT_LIMIT
    t = hk_table(g, args.cap)
    if args.format == "machine":
        out(f"graph={graph_id(g)} elements={len(t)}")
        for w in t.normal_forms:
            out(f"nf={format_word(g, w)}")
    else:
        out(f"{len(t)} element" + ("" if len(t) == 1 else "s"))
        for w in t.normal_forms:
            out("  " + format_word(g, w))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def _orientations(max_n: int, every: bool, start: int = 1):
    for n in range(start, max_n + 1):
        yield from (all_orientations(n) if every else [chain(n), alternating(n)] if n > 1 else [chain(n)])


def _job(task):
    suite, g, cap = task
    if suite == "catalan":
        r = comb.CountReport(graph_id(g), comb.catalan(g.n + 1), len(hk_table(g, cap)))
        return r.machine_line(), r.match, _human(r)
    if suite == "formula":
        r = comb.cardinality_formula(g, cap=cap)
    elif suite == "product":
        r = comb.maximal_content_count(g, cap=cap)
        ok = r.match and comb.product_theorem_holds(r)
        return r.machine_line() + f" product={str(comb.product_theorem_holds(r)).lower()}", ok, _human(r)
    elif suite == "mf":
        r = comb.multiplicity_free_count(g, cap=cap)
        extra = dict(r.breakdown)
        ok = r.match and extra["phi_injective"] and extra["phi_onto"]
        return r.machine_line() + f" phi_bijective={str(extra['phi_injective'] and extra['phi_onto']).lower()}", ok, _human(r)
    elif suite == "idempotents":
        r = comb.idempotent_count(g, cap=cap)
    elif suite == "reversal":
        g, second, a = g
        rr = comb.reversal_inequality_check(g, second, a, cap=cap)
        return rr.machine_line(), rr.holds, (
            f"{g.describe()} glue={g.label(a)}: |HK|={rr.size} reversed={rr.reversed_size} "
            f"isolated={rr.isolated} -> {'ok' if rr.holds else 'FAIL'}"
        )
    else:
        raise ValueError(f"unknown suite {suite}")
    return r.machine_line(), r.match, _human(r)


def _human(r: comb.CountReport) -> str:
    return f"{r.graph}: formula {r.formula_value}, enumerated {r.enumerated_value} -> {'ok' if r.match else 'MISMATCH'}"


def _tasks(args, g):
    suite, cap, max_n = args.suite, args.cap, args.max_n
    if g is not None:
        if suite == "reversal":
            raise ValueError("reversal runs over its own glued fixture family")
        return [(suite, g, cap)]
    if suite == "catalan":
        graphs = [chain(n) for n in range(1, max_n + 1)]
    elif suite == "fibonacci":
        return []
    elif suite == "reversal":
        return [(suite, fx, cap) for fx in comb.reversal_fixtures() if fx[0].n <= max(max_n, 3)]
    elif suite == "idempotents":
        graphs = [empty_graph(n) for n in range(0, max_n + 1)] + list(_orientations(max_n, args.all_orientations))
        graphs.append(oriented_cycle(3))
    elif suite == "mf":
        graphs = list(_orientations(max_n, True))
    else:
        graphs = list(_orientations(max_n, args.all_orientations))
    return [(suite, g, cap) for g in graphs]


def cmd_verify(args, out) -> int:
    g = _load_graph(args)
    ok = True
    if args.suite == "fibonacci" and g is None:
        reports, recursion = comb.alternating_series(args.max_n, args.cap)
        for r in reports:
            out(r.machine_line() if args.format == "machine" else _human(r))
            ok &= r.match
        out(f"recursion={str(recursion).lower()}" if args.format == "machine" else f"f(n+1) = 3f(n) - f(n-1): {recursion}")
        return EXIT_OK if ok and recursion else EXIT_MISMATCH
    if args.suite == "fibonacci":
        raise ValueError("fibonacci runs over the alternating family; drop --graph/--builder")
    tasks = _tasks(args, g)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_job, tasks))
    else:
        results = [_job(t) for t in tasks]
    for machine, good, human in results:
        out(machine if args.format == "machine" else human)
        ok &= good
    if args.format == "text":
        out(f"{sum(r[1] for r in results)}/{len(results)} match")
    return EXIT_OK if ok else EXIT_MISMATCH


# -- rep -----------------------------------------------------------------------------


def cmd_rep(args, out) -> int:
    if args.action == "check-zn":
        n = args.n if args.n is not None else args.max_n
        rep = zn_representation_check(n)
        if args.format == "machine":
            out(f"n={n} elements={rep.elements} effective={str(rep.effective).lower()} classified={str(rep.classified).lower()}")
        else:
            out(f"Z_{n}: {rep.elements} elements, {'effective' if rep.effective else 'not effective'}")
            out("type counts: " + ", ".join(f"{k}:{v}" for k, v in rep.type_counts.items()))
            if rep.collision:
                out(f"collision: elements {rep.collision}")
        return EXIT_OK if rep else EXIT_MISMATCH

    g = _load_graph(args) or (oriented_cycle(3) if args.action == "check-cycle" else None)
    if g is None:
        raise ValueError("this command needs --graph or --builder")
    if args.action == "matrix":
        w = parse_word(g, args.word or "")
        out(format_matrix(represent(g, _weights(args, g), w)))
        return EXIT_OK
    if args.action == "check-effective":
        if has_oriented_cycle(g):
            out("error: graph has an oriented cycle; its monoid is infinite")
            return EXIT_LIMIT
        t = hk_table(g, args.cap)
        res = check_effective(g, _weights(args, g), t)
        if args.format == "machine":
            out(f"graph={graph_id(g)} elements={res.elements} distinct={res.distinct} effective={str(res.effective).lower()}")
        elif res.effective:
            out(f"effective ({res.elements} elements, {res.distinct} distinct matrices)")
        else:
            u, v = (format_word(g, t.normal_forms[e]) for e in res.collision)
            out(f"not effective: {res.distinct} matrices for {res.elements} elements; {u} and {v} collide")
        return EXIT_OK if res.effective else EXIT_MISMATCH
    if args.action == "check-cycle":
        w = parse_word(g, args.word) if args.word else tuple(g.vertices)
        kmax = args.max_n if args.max_n else 10
        res = check_cycle_powers(g, w, kmax)
        out(f"distinct={str(res.distinct).lower()} increasing={str(res.increasing).lower()} "
            f"exponents={','.join(map(str, res.exponents))}")
        return EXIT_OK if res else EXIT_MISMATCH
    raise ValueError(f"unknown action {args.action}")


# -- reduce --------------------------------------------------------------------------


def cmd_reduce(args, out) -> int:
    g = _require_graph(args)
    w = parse_word(g, args.word or "")
    rs = system_for(g)
    nf = rs.normal_form(w)
    boundary = sources_and_sinks(g)
    out(f"normal_form={format_word(g, nf)}")
    out(f"mf_reduce={format_word(g, mf_reduce(g, w, boundary & set(w)))}")
    out("content={" + ",".join(g.label(x) for x in sorted(content(w))) + "}")
    if is_type_An(g) and g.no_unoriented_edges and is_multiplicity_free_element(g, w, rs):
        out(f"phi={format_word(g, mf_normal_form(g, w, rs))}")
    return EXIT_OK


# -- fixtures ---------------------------------------------------------------------


def cmd_fixtures(args, out) -> int:
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    for name, g in fixture_graphs().items():
        (target / f"{name}.g").write_text(format_graph(g))
        out(str(target / f"{name}.g"))
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    env_cap = os.environ.get("HK_CAP")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="graph file (line format or DOT subset)")
    common.add_argument("--builder", help="builder expression, e.g. chain(4) or path(RLR)")
    common.add_argument("--weights", help="edge weights, e.g. a->b=2,b->c=3 (others 1)")
    common.add_argument("--weights-const", type=int, help="same weight on every edge")
    common.add_argument("--max-n", type=_positive, default=5)
    common.add_argument("--cap", type=_positive, default=int(env_cap) if env_cap else DEFAULT_CAP)
    common.add_argument("--all-orientations", action="store_true")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--jobs", type=_positive, default=1)

    p = argparse.ArgumentParser(prog="hkmonoid", description="Hecke-Kiselman monoid toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate", parents=[common], help="list all elements")
    v = sub.add_parser("verify", parents=[common], help="check a counting formula against enumeration")
    v.add_argument("suite", choices=("catalan", "fibonacci", "product", "idempotents", "mf", "reversal", "formula"))
    r = sub.add_parser("rep", parents=[common], help="matrix representation tools")
    r.add_argument("action", choices=("matrix", "check-effective", "check-zn", "check-cycle"))
    r.add_argument("--n", type=int)
    r.add_argument("--word")
    d = sub.add_parser("reduce", parents=[common], help="normal form and reductions of a word")
    d.add_argument("--word", required=True)
    f = sub.add_parser("fixtures", help="write the built-in graph families as .g files")
    f.add_argument("--out", default="fixtures")
    return p


COMMANDS = {
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "rep": cmd_rep,
    "reduce": cmd_reduce,
    "fixtures": cmd_fixtures,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = lambda line: print(line, flush=True)
    try:
        return COMMANDS[args.command](args, out)
    except ResourceExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (HKError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
