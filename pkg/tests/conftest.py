"""Shared test helpers: random boards and random unit-calculus pipelines."""

from __future__ import annotations

import random

from makerforge.symbolic import SymbolicState
from makerforge.tree_model import TreeHypergraph


def random_class_c(n: int, max_edges: int, seed: int) -> TreeHypergraph:
    """Random tree-path hypergraph, n-uniform, with fewer than max_edges edges."""
    rng = random.Random(seed)
    h = TreeHypergraph(uniformity_target=n)
    cur = h.add_vertex()
    for _ in range(n + rng.randrange(1, 4)):
        cur = h.add_vertex(cur)
    for _ in range(rng.randrange(5, 30)):
        p = rng.randrange(h.n_vertices)
        if len(h.children[p]) < 2:
            h.add_vertex(p)
    ends = [v for v in range(h.n_vertices) if h.level(v) >= n - 1]
    for _ in range(rng.randrange(1, max_edges)):
        end = rng.choice(ends)
        start = h.ancestor_at_level(end, h.level(end) - (n - 1))
        h.add_path_edge(start, end)
    return h.freeze()


def brute_force_neighborhood(h: TreeHypergraph, edge_id: int) -> int:
    """Exclude-self neighborhood by pairwise support intersection (with multiplicity)."""
    sup = h.edge_support(edge_id)
    total = 0
    for j in range(len(h.edges)):
        if h.edge_support(j) & sup:
            total += h.edges[j].mult
    return total - 1


def gen_random_pipeline(seed: int, max_ops: int = 6):
    """Random valid pipeline description plus the d it runs at.

    Validity (unit lengths, counts, explicit size) is tracked by probing a
    scratch symbolic state while generating.
    """
    rng = random.Random(seed)
    d = rng.choice([4, 8, 16])
    log_d = d.bit_length() - 1
    rounds_budget = 9  # keeps the explicit tree comfortably under 2^14 vertices
    i0 = rng.randrange(1, min(3, log_d + 1) + 1)
    steps = [("staircase", {"i": i0})]
    rounds = i0
    probe = SymbolicState(d)
    for _ in range(i0):
        probe.unit_round()

    def active(tag):
        return probe.profile_runs(tag)

    tags = ["active"]
    for _ in range(rng.randrange(0, max_ops + 1)):
        tag = rng.choice(tags)
        views = active(tag)
        if not views:
            continue
        choices = ["sort"]
        if all(p == 0 or log_d + 1 + p - L >= 1
               for _k, runs, _b in views for L, p, _c in runs):
            choices.append("repartition")
        max_len = max((L for _k, runs, _b in views for L, _p, _c in runs), default=0)
        units = min(sum(c for _L, _p, c in runs) for _k, runs, _b in views)
        if max_len <= log_d and rounds < rounds_budget:
            choices.append("unit_round")
        if max_len < log_d and rounds < rounds_budget:
            choices.append("extend")
        if units >= 2 and len(tags) < 3:
            choices.append("cut_split")
        op = rng.choice(choices)
        if op == "unit_round":
            steps.append(("unit_round", {"tag": tag}))
            probe.unit_round(tag)
            rounds += 1
        elif op == "extend":
            r = rng.randrange(max_len, log_d + 1)
            s = rng.randrange(r, min(log_d + 1, r + rounds_budget - rounds) + 1)
            steps.append(("extend_rounds", {"tag": tag, "r": r, "s": s}))
            probe.extend_rounds(tag, r, s)
            rounds += s - r
        elif op == "cut_split":
            cut = rng.randrange(1, units)
            new = (f"t{len(tags)}a", f"t{len(tags)}b")
            steps.append(("cut_split", {"tag": tag, "cut": cut, "tags": list(new)}))
            probe.cut_split(tag, cut, tags=new)
            tags.remove(tag)
            tags.extend(new)
            rounds += 1
        elif op == "repartition":
            steps.append(("repartition", {"tag": tag}))
            probe.repartition(tag)
        else:
            steps.append(("sort", {"tag": tag}))
            probe.sort_profiles(tag)
    return steps, d
