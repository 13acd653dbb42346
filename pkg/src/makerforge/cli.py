"""Command-line entry point: build, verify, play, audit, color, export, serve."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import coloring as col
from . import strong as strong_mod
from . import tree_model as tm
from .constructions import es_extremal_tree, neighborhood_census, theorem1_counterexample
from .dot import export_dot
from .errors import (
    BadDocument,
    InsufficientUnits,
    MakerforgeError,
    NotACounterexampleShape,
    PropertyPViolation,
    ResampleBudgetExceeded,
)
from .game import (
    breaker_potential_strategy,
    breaker_random_strategy,
    maker_tree_strategy,
    minimax_value,
    optimal_breaker_strategy,
    play_match,
    verify_maker_wins,
)
from .units import build_weak

# exit codes: 0 success/verified, 1 usage or IO error, 2 verification failure
_FAILURE_ERRORS = (
    NotACounterexampleShape,
    InsufficientUnits,
    PropertyPViolation,
    ResampleBudgetExceeded,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; usage errors are 1
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in lines:
            print(line)


def _load_tree(path: str) -> tm.TreeHypergraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadDocument(f"cannot read {path}: {exc}") from exc
    return tm.from_document(doc)


def _build(args) -> int:
    builders = {"es": es_extremal_tree, "theorem1": theorem1_counterexample,
                "weak": build_weak}
    h = builders[args.construction](args.n)
    tm.store(h, args.out)
    report = h.audit_branches().to_json()
    _emit(args, {"written": args.out, "audit": report},
          [f"wrote {args.out}: {h.n_vertices} vertices, {len(h.edges)} edges, "
           f"uniform={report['uniform']}, max_degree={report['max_degree']}"])
    return 0


def _verify(args) -> int:
    h = _load_tree(getattr(args, "in"))
    h.freeze()
    report = h.audit_branches()
    incl = bool(args.include_self)
    max_nb = report.max_neighborhood_incl if incl else report.max_neighborhood_excl
    ok = (
        not report.violations
        and report.every_branch_covered
        and (h.uniformity_target is None or report.uniform == h.uniformity_target)
    )
    payload = report.to_json()
    payload["max_neighborhood"] = max_nb
    payload["include_self"] = incl
    payload["verified"] = ok
    _emit(args, payload, [
        f"uniform={report.uniform} max_degree={report.max_degree} "
        f"max_neighborhood={max_nb} covered={report.every_branch_covered}",
        "verified" if ok else f"FAILED: {report.violations or 'coverage/uniformity'}",
    ])
    return 0 if ok else 2


def _census(args) -> int:
    h = _load_tree(getattr(args, "in"))
    rows = neighborhood_census(h.freeze())
    _emit(args, {"rows": [r.to_json() for r in rows]},
          [f"{r.start_level_class}: edges={r.edges_in_class} "
           f"neighborhood {r.min_neighborhood}..{r.max_neighborhood}" for r in rows])
    return 0


def _breaker(name: str, h):
    if name == "random":
        return breaker_random_strategy
    if name == "potential":
        return breaker_potential_strategy
    return optimal_breaker_strategy(h)


def _play(args) -> int:
    h = _load_tree(getattr(args, "in")).freeze()
    t = play_match(h, maker_tree_strategy, _breaker(args.breaker, h), seed=args.seed)
    _emit(args, t.to_json(),
          [f"winner: {t.winner} in {len(t.moves)} moves"
           + (f" (forfeited by {t.forfeited_by})" if t.forfeited_by else "")])
    return 0


def _tournament(args) -> int:
    h = _load_tree(getattr(args, "in")).freeze()
    adversaries = [("random", breaker_random_strategy),
                   ("potential", breaker_potential_strategy)]
    if h.n_vertices <= args.oracle_budget:
        adversaries.append(("optimal", optimal_breaker_strategy(h)))
    report = verify_maker_wins(h, adversaries, trials=args.trials, base_seed=args.seed)
    lines = [f"{name}: {r['maker_wins']}/{r['trials']} maker wins "
             f"(length {r['min_length']}..{r['max_length']})"
             for name, r in report["adversaries"].items()]
    lines.append("all maker wins" if report["all_maker_wins"] else "MAKER LOST GAMES")
    _emit(args, report, lines)
    return 0 if report["all_maker_wins"] else 2


def _solve(args) -> int:
    h = _load_tree(getattr(args, "in")).freeze()
    value = minimax_value(h, vertex_budget=args.oracle_budget)
    _emit(args, {"value": value}, ["MakerWin" if value == "maker_win" else "BreakerWin"])
    return 0


def _audit_strong(args) -> int:
    if args.sweep:
        report = strong_mod.audit_strong_sweep()
        lines = [f"n={r['n']} c={r['c']}: "
                 + ("certified" if r["certified"]
                    else f"violated {r['first_violation']['name']} at "
                         f"{r['first_violation']['where']}")
                 for r in report["runs"]]
        lines.append(f"minimal certified: {report['minimal_certified']}")
        ok = report["minimal_certified"] is not None
    else:
        report = strong_mod.audit_strong(args.n, c=Fraction(args.c))
        bad = [r for r in report["inequalities"] if not r["ok"]]
        lines = [f"n={args.n} c={args.c}: "
                 + ("certified" if report["certified"]
                    else f"{len(bad)} violated inequalities, first at "
                         f"{report['first_violation']['where']} "
                         f"({report['first_violation']['name']})"),
                 f"degree ledger ok: {report['degree_ledger_ok']}"]
        ok = report["certified"]
    _emit(args, report, lines)
    return 0 if ok else 2


def _color(args) -> int:
    path = getattr(args, "in")
    if args.random:
        n, deg, edges, vertices = (int(x) for x in args.random.split(","))
        F = col.random_bounded_degree_hypergraph(n, deg, edges, vertices, seed=args.seed)
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise BadDocument(f"cannot read {path}: {exc}") from exc
        if isinstance(doc, dict) and doc.get("format") == tm.FORMAT_TAG:
            h = tm.from_document(doc).freeze()
            supports = sorted({tuple(sorted(h.edge_support(i)))
                               for i in range(len(h.edges))})
            F = col.Hypergraph(n=h.uniformity_target or 0,
                               vertex_count=h.n_vertices,
                               edges=[list(s) for s in supports])
        else:
            F = col.Hypergraph.from_json(doc)
    lll = col.check_lll_condition(F.n, F.max_degree()) if F.n >= 2 else None
    colors = col.halving_coloring(F, seed=args.seed, max_resamples=args.max_resamples)
    check = col.verify_proper_halving(F, colors)
    payload = {
        "colors": colors,
        "proper": check["proper"],
        "balance": check["balance"],
        "lll_holds": None if lll is None else lll["holds"],
    }
    _emit(args, payload, [
        f"proper={check['proper']} balance={check['balance']} "
        f"lll_holds={payload['lll_holds']}",
    ])
    return 0 if check["proper"] and check["balance"] <= 1 else 2


def _export(args) -> int:
    h = _load_tree(getattr(args, "in")).freeze()
    text = export_dot(h, max_vertices=args.max_vertices)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    _emit(args, {"written": args.out}, [f"wrote {args.out}"])
    return 0


def _serve(args) -> int:
    from .service import serve

    serve(port=args.port, host=args.host)
    return 0


def _make_parser() -> _Parser:
    p = _Parser(prog="makerforge",
                description="Workbench for tree-path Maker-Breaker hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON output")
        return sp

    sp = add("build", _build, help="build a construction and write its JSON document")
    sp.add_argument("--construction", required=True, choices=["es", "theorem1", "weak"])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = add("verify", _verify, help="audit a stored hypergraph")
    sp.add_argument("in", metavar="IN", help="input JSON document")
    sp.add_argument("--include-self", action="store_true",
                    help="count an edge inside its own neighborhood")

    sp = add("census", _census, help="per-start-level neighborhood census")
    sp.add_argument("in", metavar="IN")

    sp = add("play", _play, help="play the tree strategy against a breaker")
    sp.add_argument("in", metavar="IN")
    sp.add_argument("--breaker", choices=["random", "potential", "optimal"],
                    default="random")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("tournament", _tournament, help="tree strategy vs all adversaries")
    sp.add_argument("in", metavar="IN")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--oracle-budget", type=int, default=24)

    sp = add("solve", _solve, help="exact minimax value of a small board")
    sp.add_argument("in", metavar="IN")
    sp.add_argument("--oracle-budget", type=int, default=24)

    sp = add("audit-strong", _audit_strong, help="symbolic strong-pipeline audit")
    sp.add_argument("--n", type=int, default=64)
    sp.add_argument("--c", default="1/8", help="rational constant, e.g. 1/8 or 0.125")
    sp.add_argument("--sweep", action="store_true",
                    help="audit the full (n, c) grid and report the minimal certified pair")

    sp = add("color", _color, help="proper halving 2-coloring by block resampling")
    sp.add_argument("in", metavar="IN", nargs="?", default=None)
    sp.add_argument("--random", default=None, metavar="N,MAXDEG,EDGES,VERTICES",
                    help="generate a random bounded-degree instance instead of reading IN")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-resamples", type=int, default=10**6)

    sp = add("export", _export, help="export a stored hypergraph to DOT")
    sp.add_argument("in", metavar="IN")
    sp.add_argument("--out", required=True)
    sp.add_argument("--max-vertices", type=int, default=500)

    sp = add("serve", _serve, help="run the HTTP game service")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--host", default="127.0.0.1")

    return p


def run_cli(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    if args.command == "color" and not args.random and getattr(args, "in") is None:
        print("color: need an input document or --random", file=sys.stderr)
        return 1
    try:
        return args.fn(args)
    except _FAILURE_ERRORS as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except MakerforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
