"""Command-line entry point.

Exit codes: 0 verified / feasible / witness found; 1 infeasible / rejected;
2 inconclusive; 64 usage error; 65 malformed input; 66 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import repro
from .coloring import (
    Coloring,
    TwoColorParams,
    induced_parameters,
    make_triple,
    two_color_matrix,
    verify_perfect,
)
from .filters import (
    PairContext,
    VerdictStatus,
    drg_check,
    distance_power_check,
    pair_color_feasible,
    simple_pair_bound,
    two_color_check,
    two_color_forced_sets,
)
from .graphs import Graph, complete, cycle, petersen
from .periodic import (
    BudgetExceededError,
    CirculantSpec,
    DEFAULT_ENUM_BUDGET,
    DEFAULT_NODE_BUDGET,
    GridSpec,
    SearchStatus,
    circulant_enumerate,
    circulant_h,
    circulant_period_filter,
    circulant_quotient,
    grid_h,
    grid_reject_2color,
    patch_search,
    torus_search,
)
from .ratmat import RationalMatrix, rat

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_BUDGET = 66

_STATUS_EXITS = {
    VerdictStatus.FEASIBLE: EXIT_OK,
    VerdictStatus.INFEASIBLE: EXIT_REJECTED,
    VerdictStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    SearchStatus.WITNESS: EXIT_OK,
    SearchStatus.REJECTED: EXIT_REJECTED,
    SearchStatus.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class CliDataError(Exception):
    """Bad or unreadable input file / inline value."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliDataError(f"cannot read JSON from {path}: {exc}") from exc


def _load_matrix(path: str) -> RationalMatrix:
    try:
        return RationalMatrix.from_json(_load_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliDataError(f"bad matrix in {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    try:
        return Graph.from_json(_load_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliDataError(f"bad graph in {path}: {exc}") from exc


def _load_coloring(path: str) -> Coloring:
    try:
        return Coloring.from_json(_load_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliDataError(f"bad coloring in {path}: {exc}") from exc


def _grid_spec(args) -> GridSpec:
    if args.offsets:
        try:
            return GridSpec.parse(args.offsets)
        except ValueError as exc:
            raise CliDataError(f"bad offsets: {exc}") from exc
    if args.grid == "square":
        return GridSpec.square()
    if args.grid == "triangular":
        return GridSpec.triangular()
    raise CliDataError("specify --grid square|triangular or --offsets")


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(p) for p in text.split(","))
        return (x, y)
    except ValueError as exc:
        raise CliDataError(f"expected 'x,y', got {text!r}") from exc


def _emit(obj, args, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text if text is not None else json.dumps(obj, indent=2))


def _verdict_row(verdict, **extra) -> dict:
    row = dict(extra)
    row.update(verdict.to_json())
    return row


def _finish_rows(rows: list[dict], args) -> int:
    text = "\n".join(
        " ".join(f"{k}={v}" for k, v in row.items() if v is not None) for row in rows
    )
    _emit(rows, args, text)
    if any(row["status"] == VerdictStatus.INFEASIBLE.value for row in rows):
        return EXIT_REJECTED
    if all(row["status"] == VerdictStatus.FEASIBLE.value for row in rows):
        return EXIT_OK
    return EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_graph(args) -> int:
    if args.which == "cycle":
        g = cycle(args.n)
    elif args.which == "complete":
        g = complete(args.n)
    else:
        g = petersen()
    _emit(g.to_json(), args)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    f = _load_coloring(args.coloring)
    if args.s:
        s = _load_matrix(args.s)
        triple = make_triple(g, f, s)
        result = verify_perfect(triple)
        obj = {
            "perfect": result.ok,
            "witness": list(result.witness) if result.witness else None,
            "s": s.to_json(),
        }
        text = (
            "perfect"
            if result.ok
            else f"not perfect: row sums differ at vertex {result.witness[0]}, color {result.witness[1]}"
        )
        _emit(obj, args, text)
        return EXIT_OK if result.ok else EXIT_REJECTED
    s = induced_parameters(g, f)
    if s is not None:
        _emit({"perfect": True, "witness": None, "s": s.to_json()}, args, "perfect")
        return EXIT_OK
    witness = _imperfection_witness(g, f)
    _emit(
        {"perfect": False, "witness": list(witness), "s": None},
        args,
        f"not perfect: class sums differ at vertex {witness[0]}, color {witness[1]}",
    )
    return EXIT_REJECTED


def _imperfection_witness(g: Graph, f: Coloring) -> tuple[int, int]:
    """Lowest (vertex, color) whose class sum differs from its class representative."""
    reps: dict[int, list[Fraction]] = {}
    for u in range(g.n):
        sums = [Fraction(0)] * f.k
        for w, a in enumerate(g.adjacency.row(u)):
            if a:
                sums[f.colors[w] - 1] += a
        i = f.colors[u]
        if i not in reps:
            reps[i] = sums
            continue
        for j in range(f.k):
            if sums[j] != reps[i][j]:
                return (u, j + 1)
    raise AssertionError("no witness found for an imperfect coloring")


def _cmd_filter_pair(args) -> int:
    m = _load_matrix(args.m)
    s = _load_matrix(args.s)
    rows = []
    if args.coloring:
        f = _load_coloring(args.coloring)
        for u in range(m.rows):
            for v in range(u + 1, m.rows):
                i, j = f.colors[u], f.colors[v]
                rows.append(
                    _verdict_row(pair_color_feasible(m, s, u, v, i, j), u=u, v=v, i=i, j=j)
                )
    else:
        if None in (args.u, args.v, args.i, args.j):
            raise CliDataError("give --u --v --i --j, or --coloring for a full scan")
        rows.append(
            _verdict_row(
                pair_color_feasible(m, s, args.u, args.v, args.i, args.j),
                u=args.u,
                v=args.v,
                i=args.i,
                j=args.j,
            )
        )
    return _finish_rows(rows, args)


def _cmd_filter_simple(args) -> int:
    s = _load_matrix(args.s)
    ctx = PairContext(rat(args.r), args.h, args.adjacent)
    rows = [
        _verdict_row(simple_pair_bound(ctx, s, args.i, args.j), i=args.i, j=args.j, h=args.h)
    ]
    return _finish_rows(rows, args)


def _cmd_filter_two_color(args) -> int:
    params = TwoColorParams(rat(args.b), rat(args.c), rat(args.r))
    ctx = PairContext(rat(args.r), args.h, args.adjacent)
    verdict = two_color_check(ctx, params)
    forced = two_color_forced_sets(ctx, params)
    row = _verdict_row(verdict, b=str(params.b), c=str(params.c), h=args.h, adjacent=args.adjacent)
    if forced:
        row["forced"] = {
            "only_u_color": forced.only_u_color,
            "only_v_color": forced.only_v_color,
            "excludes_endpoints": forced.excludes_endpoints,
            "bound": forced.bound,
        }
    return _finish_rows([row], args)


def _cmd_filter_power(args) -> int:
    m = _load_matrix(args.m)
    s = _load_matrix(args.s)
    rows = []
    if args.coloring:
        f = _load_coloring(args.coloring)
        for u in range(m.rows):
            for v in range(u + 1, m.rows):
                i, j = f.colors[u], f.colors[v]
                rows.append(
                    _verdict_row(
                        distance_power_check(m, s, args.l, u, v, i, j),
                        u=u, v=v, i=i, j=j, l=args.l,
                    )
                )
    else:
        if None in (args.u, args.v, args.i, args.j):
            raise CliDataError("give --u --v --i --j, or --coloring for a full scan")
        rows.append(
            _verdict_row(
                distance_power_check(m, s, args.l, args.u, args.v, args.i, args.j),
                u=args.u, v=args.v, i=args.i, j=args.j, l=args.l,
            )
        )
    return _finish_rows(rows, args)


def _cmd_filter_drg(args) -> int:
    g = _load_graph(args.graph)
    s = _load_matrix(args.s)

    def both(u: int, v: int, i: int, j: int) -> list[dict]:
        ball, sphere = drg_check(g, s, args.radius, u, v, i, j)
        return [
            _verdict_row(ball, u=u, v=v, i=i, j=j, radius=args.radius, kind="ball"),
            _verdict_row(sphere, u=u, v=v, i=i, j=j, radius=args.radius, kind="sphere"),
        ]

    rows = []
    if args.coloring:
        f = _load_coloring(args.coloring)
        for u in range(g.n):
            for v in range(u + 1, g.n):
                rows.extend(both(u, v, f.colors[u], f.colors[v]))
    else:
        if None in (args.u, args.v, args.i, args.j):
            raise CliDataError("give --u --v --i --j, or --coloring for a full scan")
        rows.extend(both(args.u, args.v, args.i, args.j))
    return _finish_rows(rows, args)


def _cmd_circulant(args) -> int:
    spec = CirculantSpec.parse(args.d)
    if args.which == "h":
        h = circulant_h(spec, args.t)
        _emit({"h": h, "t": args.t, "d": list(spec.ds)}, args, f"h = {h}")
        return EXIT_OK
    if args.which == "period-filter":
        params = TwoColorParams(rat(args.b), rat(args.c), Fraction(spec.valency))
        constraint = circulant_period_filter(spec, params, args.t_max)
        obj = {"fired": list(constraint.fired), "period_divides": constraint.divides}
        text = (
            f"period divides {constraint.divides} (fired at t = {list(constraint.fired)})"
            if constraint.divides
            else "no period constraint in range"
        )
        _emit(obj, args, text)
        return EXIT_OK
    if args.which == "quotient":
        _emit(circulant_quotient(spec, args.T).to_json(), args)
        return EXIT_OK
    # enumerate
    found = circulant_enumerate(spec, args.T, args.k, budget=args.budget)
    obj = []
    for entry in found:
        item = {"coloring": entry.coloring.to_json(), "s": entry.s.to_json()}
        if entry.coloring.k == 2:
            item["b"] = str(entry.s[0, 1])
            item["c"] = str(entry.s[1, 0])
        obj.append(item)
    text = "\n".join(
        f"colors {list(e.coloring.colors)}  S rows {[list(map(str, e.s.row(i))) for i in range(e.s.rows)]}"
        for e in found
    )
    _emit(obj, args, text or "none")
    return EXIT_OK


def _cmd_grid(args) -> int:
    spec = _grid_spec(args)
    if args.which == "h":
        delta = _parse_pair(args.delta)
        h, adjacent = grid_h(spec, delta)
        _emit(
            {"delta": list(delta), "h": h, "adjacent": adjacent},
            args,
            f"delta {delta}: h = {h}, adjacent = {adjacent}",
        )
        return EXIT_OK
    if args.which == "reject":
        params = TwoColorParams(rat(args.b), rat(args.c), Fraction(spec.valency))
        report = grid_reject_2color(
            spec, params, window=args.window, quotient_budget=args.budget
        )
        obj = {
            "status": report.verdict.status.value,
            "violated": report.verdict.violated,
            "note": report.note,
            "monochromatic": [list(d) for d in report.monochromatic],
            "deltas": [
                dict(delta=list(d.delta), h=d.h, adjacent=d.adjacent, **d.verdict.to_json())
                for d in report.per_delta
            ],
        }
        lines = [f"overall: {report.verdict.status.value}"]
        if report.verdict.violated:
            lines.append(report.verdict.violated)
        if report.note:
            lines.append(report.note)
        for d in report.per_delta:
            if d.verdict.infeasible:
                lines.append(
                    f"delta {d.delta}: INFEASIBLE ({d.verdict.violated}); pairs forced monochromatic"
                )
        _emit(obj, args, "\n".join(lines))
        return _STATUS_EXITS[report.verdict.status]
    if args.which == "torus-search":
        target = _target_from_args(args, spec)
        outcome = torus_search(
            spec, (args.p, args.q), target, budget=args.budget, find_all=args.all
        )
        _emit(outcome.to_json(), args, _outcome_text(outcome))
        return _STATUS_EXITS[outcome.status]
    # patch-search
    target = _target_from_args(args, spec)
    outcome = patch_search(
        spec,
        target,
        (args.width, args.height),
        node_budget=args.node_budget,
        require_two_interior_colors=args.require_two_colors,
    )
    _emit(outcome.to_json(), args, _outcome_text(outcome))
    return _STATUS_EXITS[outcome.status]


def _target_from_args(args, spec: GridSpec):
    if args.s:
        return _load_matrix(args.s)
    if args.b is None or args.c is None:
        raise CliDataError("give --b and --c, or --s with a parameter matrix")
    return two_color_matrix(rat(args.b), rat(args.c), Fraction(spec.valency))


def _outcome_text(outcome) -> str:
    lines = [f"{outcome.status.value}: {outcome.stats.detail}"]
    for w in outcome.witnesses:
        lines.append(f"witness colors {list(w.colors)}")
    lines.append(f"nodes expanded: {outcome.stats.nodes}")
    return "\n".join(lines)


def _cmd_repro(args) -> int:
    items = repro.run_suite(max_patch_side=args.patch_max)
    if args.format == "json":
        print(
            json.dumps(
                [{"name": i.name, "passed": i.passed, "detail": i.detail} for i in items],
                indent=2,
            )
        )
    else:
        width = max(len(i.name) for i in items)
        for item in items:
            mark = "PASS" if item.passed else "FAIL"
            print(f"[{mark}] {item.name.ljust(width)}  {item.detail}")
        total = sum(i.passed for i in items)
        print(f"{total}/{len(items)} checks passed")
    return EXIT_OK if all(i.passed for i in items) else EXIT_REJECTED


# ---------------------------------------------------------------------------
# parser wiring


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "text"), default="text")
    sub.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_ENUM_BUDGET,
        help="candidate-count cap for enumerations and torus searches",
    )
    sub.add_argument(
        "--node-budget",
        type=int,
        default=DEFAULT_NODE_BUDGET,
        help="node cap for backtracking patch searches",
    )
    sub.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; results are deterministic and independent of this value",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="perfcolor", description=__doc__)
    top = parser.add_subparsers(dest="command", required=True)

    p_graph = top.add_parser("graph", help="emit a named graph as JSON")
    graph_sub = p_graph.add_subparsers(dest="which", required=True)
    for name in ("cycle", "complete"):
        sp = graph_sub.add_parser(name)
        sp.add_argument("--n", type=int, required=True)
        _add_common(sp)
    _add_common(graph_sub.add_parser("petersen"))

    p_verify = top.add_parser("verify", help="check that a coloring is perfect")
    p_verify.add_argument("--graph", required=True)
    p_verify.add_argument("--coloring", required=True)
    p_verify.add_argument("--s", help="parameter matrix; induced from the coloring if omitted")
    _add_common(p_verify)

    p_filter = top.add_parser("filter", help="run a rejection filter")
    filter_sub = p_filter.add_subparsers(dest="which", required=True)

    fp = filter_sub.add_parser("pair", help="row-distance bound d(M_u,M_v) >= d(S_i,S_j)")
    fp.add_argument("--m", required=True)
    fp.add_argument("--s", required=True)
    for flag in ("--u", "--v", "--i", "--j"):
        fp.add_argument(flag, type=int)
    fp.add_argument("--coloring", help="scan all vertex pairs of this coloring")
    _add_common(fp)

    fs = filter_sub.add_parser("simple", help="simple-graph bound d(S_i,S_j) <= 2(r-h)")
    fs.add_argument("--s", required=True)
    fs.add_argument("--r", required=True)
    fs.add_argument("--h", type=int, required=True)
    fs.add_argument("--adjacent", action="store_true")
    fs.add_argument("--i", type=int, required=True)
    fs.add_argument("--j", type=int, required=True)
    _add_common(fs)

    ft = filter_sub.add_parser("two-color", help="window h <= b+c <= 2r-h (h+2 if adjacent)")
    ft.add_argument("--r", required=True)
    ft.add_argument("--h", type=int, required=True)
    ft.add_argument("--adjacent", action="store_true")
    ft.add_argument("--b", required=True)
    ft.add_argument("--c", required=True)
    _add_common(ft)

    fw = filter_sub.add_parser("power", help="row-distance bound on M^l against S^l")
    fw.add_argument("--m", required=True)
    fw.add_argument("--s", required=True)
    fw.add_argument("--l", type=int, required=True)
    for flag in ("--u", "--v", "--i", "--j"):
        fw.add_argument(flag, type=int)
    fw.add_argument("--coloring")
    _add_common(fw)

    fd = filter_sub.add_parser("drg", help="ball/sphere bounds in a distance-regular graph")
    fd.add_argument("--graph", required=True)
    fd.add_argument("--s", required=True)
    fd.add_argument("--radius", type=int, required=True)
    for flag in ("--u", "--v", "--i", "--j"):
        fd.add_argument(flag, type=int)
    fd.add_argument("--coloring")
    _add_common(fd)

    p_circ = top.add_parser("circulant", help="circulant graph tools")
    circ_sub = p_circ.add_subparsers(dest="which", required=True)
    ch = circ_sub.add_parser("h", help="common neighbors of x and x+t")
    ch.add_argument("--d", required=True, help="connection multiset, e.g. 1,2,4")
    ch.add_argument("--t", type=int, required=True)
    _add_common(ch)
    cp = circ_sub.add_parser("period-filter", help="period divisibility constraints")
    cp.add_argument("--d", required=True)
    cp.add_argument("--b", required=True)
    cp.add_argument("--c", required=True)
    cp.add_argument("--t-max", type=int, required=True)
    _add_common(cp)
    cq = circ_sub.add_parser("quotient", help="quotient multigraph on Z_T")
    cq.add_argument("--d", required=True)
    cq.add_argument("--T", type=int, required=True)
    _add_common(cq)
    ce = circ_sub.add_parser("enumerate", help="all perfect colorings of period T")
    ce.add_argument("--d", required=True)
    ce.add_argument("--T", type=int, required=True)
    ce.add_argument("--k", type=int, required=True)
    _add_common(ce)

    p_grid = top.add_parser("grid", help="plane grid tools")
    grid_sub = p_grid.add_subparsers(dest="which", required=True)

    def add_grid_spec(sp):
        sp.add_argument("--grid", choices=("square", "triangular"))
        sp.add_argument("--offsets", help='explicit offsets, e.g. "1,0;0,1;1,-1"')

    gh = grid_sub.add_parser("h", help="common neighbors of x and x+delta")
    add_grid_spec(gh)
    gh.add_argument("--delta", required=True, help="difference, e.g. 1,1")
    _add_common(gh)
    gr = grid_sub.add_parser("reject", help="two-color window scan over differences")
    add_grid_spec(gr)
    gr.add_argument("--b", required=True)
    gr.add_argument("--c", required=True)
    gr.add_argument("--window", type=int)
    _add_common(gr)
    gt = grid_sub.add_parser("torus-search", help="witness search at fixed periods")
    add_grid_spec(gt)
    gt.add_argument("--p", type=int, required=True)
    gt.add_argument("--q", type=int, required=True)
    gt.add_argument("--b")
    gt.add_argument("--c")
    gt.add_argument("--s", help="explicit parameter matrix JSON")
    gt.add_argument("--all", action="store_true", help="collect every witness")
    _add_common(gt)
    gp = grid_sub.add_parser("patch-search", help="exhaustive window nonexistence search")
    add_grid_spec(gp)
    gp.add_argument("--b")
    gp.add_argument("--c")
    gp.add_argument("--s")
    gp.add_argument("--width", type=int, required=True)
    gp.add_argument("--height", type=int, required=True)
    gp.add_argument("--require-two-colors", action="store_true")
    _add_common(gp)

    p_repro = top.add_parser("repro", help="re-derive the bundled grid and circulant results")
    p_repro.add_argument("suite", nargs="?", default="paper", choices=("paper",))
    p_repro.add_argument("--patch-max", type=int, default=8)
    _add_common(p_repro)

    return parser


_HANDLERS = {
    "graph": _cmd_graph,
    "verify": _cmd_verify,
    "circulant": _cmd_circulant,
    "grid": _cmd_grid,
    "repro": _cmd_repro,
}

_FILTER_HANDLERS = {
    "pair": _cmd_filter_pair,
    "simple": _cmd_filter_simple,
    "two-color": _cmd_filter_two_color,
    "power": _cmd_filter_power,
    "drg": _cmd_filter_drg,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "filter":
            return _FILTER_HANDLERS[args.which](args)
        return _HANDLERS[args.command](args)
    except CliDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, IndexError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
