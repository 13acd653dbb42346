"""Acceptance suite: one test per headline claim, each printing a PASS/FAIL line.

Every numeric target here was computed independently and frozen; timing caps
are generous on purpose and guard against complexity regressions only.
"""

import json
import time

import pytest
from conftest import gen_random_pipeline, random_class_c

from makerforge.coloring import (
    check_lll_condition,
    halving_coloring,
    random_bounded_degree_hypergraph,
    verify_proper_halving,
)
from makerforge.constructions import (
    es_extremal_tree,
    neighborhood_census,
    theorem1_counterexample,
)
from makerforge.dot import export_dot
from makerforge.game import (
    MAKER,
    breaker_potential_strategy,
    breaker_random_strategy,
    maker_tree_strategy,
    minimax_value,
    play_match,
    random_maker_strategy,
)
from makerforge.strong import audit_strong_sweep
from makerforge.symbolic import pipeline_report, run_pipeline
from makerforge.tree_model import TreeHypergraph, dumps, from_document, to_document
from makerforge.units import build_staircase, build_weak


_CAPSYS = None


@pytest.fixture(autouse=True)
def _live_emit(capsys):
    # let the PASS/FAIL lines through pytest's output capture
    global _CAPSYS
    _CAPSYS = capsys
    yield
    _CAPSYS = None


def emit(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    if _CAPSYS is not None:
        with _CAPSYS.disabled():
            print(line)
    else:
        print(line)
    assert ok, f"{name}: {detail}"


def test_counterexample_family():
    t0 = time.monotonic()
    ok = True
    notes = []
    for n in range(4, 8):
        h = theorem1_counterexample(n)
        good = (
            h.validate_class_c() == []
            and h.uniformity() == n
            and h.every_branch_covered()
            and h.max_neighborhood() == 3 * 2 ** (n - 3)
            and h.degree(0) == 2 ** (n - 2)
        )
        ok = ok and good
        notes.append(f"n={n} max_nb={h.max_neighborhood()}")
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 5
    emit("counterexample family n=4..7", ok,
         "; ".join(notes) + f" ({elapsed:.2f}s)")


def test_neighborhood_census():
    ok = True
    notes = []
    for n in (4, 5):
        rows = {r.start_level: r for r in
                neighborhood_census(theorem1_counterexample(n))}
        bound = 2 ** (n - 2) + 2 ** (n - 3)
        good = (
            rows[0].max_neighborhood == bound - 1
            and rows[n - 2].max_neighborhood == bound
        )
        ok = ok and good
        notes.append(
            f"n={n} root={rows[0].max_neighborhood} mid={rows[n - 2].max_neighborhood} "
            f"deep={rows[2 * n - 4].max_neighborhood} (measured)"
        )
    emit("per-class neighborhood census n=4,5", ok, "; ".join(notes))


def test_maker_always_wins():
    t0 = time.monotonic()
    boards = (
        [(f"counterexample({n})", theorem1_counterexample(n)) for n in (4, 5, 6)]
        + [(f"extremal({n})", es_extremal_tree(n)) for n in range(3, 11)]
        + [("weak(4)", build_weak(4))]
    )
    losses = 0
    games = 0
    for _name, h in boards:
        for seed in range(1000):
            t = play_match(h, maker_tree_strategy, breaker_random_strategy, seed=seed)
            games += 1
            losses += t.winner != MAKER
        t = play_match(h, maker_tree_strategy, breaker_potential_strategy)
        games += 1
        losses += t.winner != MAKER
    elapsed = time.monotonic() - t0
    ok = losses == 0 and elapsed < 60
    emit("tree strategy wins every game", ok,
         f"{games - losses}/{games} maker wins over {len(boards)} boards "
         f"({elapsed:.1f}s)")


def test_potential_bound_crosscheck():
    ok = minimax_value(es_extremal_tree(3)) == "maker_win"
    drops_ok = True
    h = es_extremal_tree(3)
    for drop in range(len(h.edges)):
        g = TreeHypergraph(uniformity_target=3)
        g.add_vertex()
        for v in range(1, h.n_vertices):
            g.add_vertex(h.parent[v])
        for i, e in enumerate(h.edges):
            if i != drop:
                g.add_path_edge(e.start, e.end, e.mult)
        drops_ok = drops_ok and minimax_value(g.freeze()) == "breaker_win"
    breaker_losses = 0
    games = 0
    for n in (3, 4, 5):
        for seed in range(100):
            board = random_class_c(n, 2 ** (n - 1), seed=seed * 7 + n)
            t = play_match(board, random_maker_strategy, breaker_potential_strategy,
                           seed=seed)
            games += 1
            breaker_losses += t.winner == MAKER
    ok = ok and drops_ok and breaker_losses == 0
    emit("potential-bound crosscheck", ok,
         f"full board maker-win, all 4 reduced boards breaker-win, "
         f"potential breaker unbeaten in {games} sub-threshold games "
         f"({breaker_losses} losses)")


def test_weak_pipeline_degree_bound():
    t0 = time.monotonic()
    h4 = build_weak(4)
    h8 = build_weak(8)
    elapsed = time.monotonic() - t0
    ok = (
        h4.uniformity() == 4 and h4.max_degree() <= 8
        and (h4.n_vertices, len(h4.edges)) == (23, 12)
        and h4.every_branch_covered()
        and h8.uniformity() == 8 and h8.max_degree() <= 64
        and (h8.n_vertices, len(h8.edges)) == (959, 480)
        and h8.every_branch_covered()
        and elapsed < 30
    )
    emit("weak pipeline degree bound", ok,
         f"n=4: deg {h4.max_degree()} <= 8; n=8: deg {h8.max_degree()} <= 64 "
         f"({elapsed:.1f}s)")


def test_backend_equivalence_and_audit_sweep():
    t0 = time.monotonic()
    pipelines = [([("staircase", {"i": i})], d)
                 for i, d in ((1, 4), (3, 4), (2, 8), (4, 8), (3, 16))]
    for n in (4, 8):
        pipelines.append((
            [("weak_first", {}), ("weak_attach", {}), ("weak_equalize", {}),
             ("collapse", {"n": n})],
            (1 << n) // n,
        ))
    for seed in range(30):
        pipelines.append(gen_random_pipeline(seed))
    mismatches = 0
    for steps, d in pipelines:
        sym = pipeline_report(run_pipeline(steps, d, backend="symbolic"))
        exp = pipeline_report(run_pipeline(steps, d, backend="explicit"))
        if any(sym[k] != exp[k] for k in ("max_degree", "covered", "class_table")):
            mismatches += 1
    sweep = audit_strong_sweep()
    ledger_ok = all(r["degree_ledger_ok"] for r in sweep["runs"])
    minimal = sweep["minimal_certified"]
    elapsed = time.monotonic() - t0
    ok = (
        mismatches == 0
        and len(sweep["runs"]) == 16
        and ledger_ok
        and minimal == {"n": 1024, "c": "1/8"}
        and elapsed < 600
    )
    emit("backend equivalence + audit sweep", ok,
         f"{len(pipelines)} pipelines equivalent, {mismatches} mismatches; "
         f"ledger ok on all 16 runs; minimal certified {minimal} ({elapsed:.0f}s)")


def count_identity_violations(uh):
    bad = 0
    for leaf in uh.tags:
        for unit in uh.profiles[leaf]:
            length = unit.length(uh)
            card = unit.cardinality(uh)
            if length != uh.log_d + 1 + unit.power - (card.bit_length() - 1):
                bad += 1
    return bad


def test_unit_calculus_invariants():
    # part 1: the split operation, with the child-degree bound
    splits = 0
    violations = 0
    seed = 0
    while splits < 1000:
        _steps, d = gen_random_pipeline(seed)
        uh = build_staircase(1, d)
        seed += 1
        for _round in range(uh.log_d):
            for leaf in uh.leaves_with("active"):
                parent_deg = uh.h.degree(leaf)
                v1, v2 = uh.unit_increase_split(leaf)
                splits += 1
                for child in (v1, v2):
                    if uh.h.degree(child) > uh.d + parent_deg // 2:
                        violations += 1
        violations += count_identity_violations(uh)
    # part 2: the length identity after every profile operation, over random
    # pipelines run on the explicit backend one step at a time
    ops = {"unit_round": 0, "extend_rounds": 0, "cut_split": 0,
           "repartition": 0, "sort": 0}
    seed = 0
    while min(ops.values()) < 1000 and seed < 2000:
        steps, d = gen_random_pipeline(seed)
        seed += 1
        uh = run_pipeline(steps[:1], d, backend="explicit")
        for name, kwargs in steps[1:]:
            touched = len(uh.leaves_with(kwargs.get("tag", "active")))
            if name == "unit_round":
                uh.unit_round(kwargs["tag"])
            elif name == "extend_rounds":
                uh.extend_rounds(kwargs["tag"], kwargs["r"], kwargs["s"])
            elif name == "cut_split":
                uh.cut_split(kwargs["tag"], kwargs["cut"], tags=tuple(kwargs["tags"]))
            elif name == "repartition":
                uh.repartition(kwargs["tag"])
            else:
                uh.sort_profiles(kwargs["tag"])
            ops[name] = ops.get(name, 0) + touched
            violations += count_identity_violations(uh)
    ok = violations == 0 and splits >= 1000 and all(v >= 1000 for v in ops.values())
    emit("unit calculus invariants", ok,
         f"{splits} splits with the degree bound, per-op identity checks "
         f"{ops}, {violations} violations")


def test_bounded_degree_coloring():
    t0 = time.monotonic()
    cases = {10: (9, 50, 60), 12: (31, 150, 72)}
    notes = []
    ok = True
    for n, (D, edges, vertices) in cases.items():
        lll = check_lll_condition(n, D)
        ok = ok and lll["holds"]
        successes = 0
        for seed in range(100):
            F = random_bounded_degree_hypergraph(n, D, edges, vertices, seed=seed)
            try:
                colors = halving_coloring(F, seed=seed)
            except Exception:
                continue
            check = verify_proper_halving(F, colors)
            if check["proper"] and check["balance"] <= 1:
                successes += 1
        ok = ok and successes >= 99
        notes.append(f"n={n} D={D} lll_holds={lll['holds']} {successes}/100 colored")
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 120
    emit("bounded-degree halving coloring", ok,
         "; ".join(notes) + f" ({elapsed:.1f}s)")


def test_persistence_and_export():
    ok = True
    for h in (theorem1_counterexample(4), build_weak(4), es_extremal_tree(6)):
        text = dumps(to_document(h))
        again = dumps(to_document(from_document(json.loads(text))))
        ok = ok and text == again
    dot = export_dot(es_extremal_tree(4))
    ok = ok and dot.startswith("digraph") and dot.count("{") == dot.count("}") == 1
    emit("canonical persistence + DOT export", ok,
         "three boards round-trip byte-identically; DOT braces balanced")
