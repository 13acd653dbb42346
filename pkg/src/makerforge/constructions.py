"""Explicit builders: the extremal binary-tree hypergraph and the
maximum-neighborhood counterexample, plus the per-start-level census."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotACounterexampleShape, OutOfRange
from .tree_model import TreeHypergraph


def _complete_subtree(h: TreeHypergraph, root: int, levels: int) -> list[int]:
    """Grow a complete binary tree of `levels` levels below (and including) `root`.

    Returns the leaves in left-to-right order.
    """
    frontier = [root]
    for _ in range(levels - 1):
        nxt = []
        for v in frontier:
            nxt.append(h.add_vertex(v))
            nxt.append(h.add_vertex(v))
        frontier = nxt
    return frontier


def es_extremal_tree(n: int) -> TreeHypergraph:
    """Complete binary tree with n levels; every root-to-leaf branch is a hyperedge.

    2^n - 1 vertices, 2^(n-1) hyperedges, n-uniform; the tight case of the
    Erdos-Selfridge bound.
    """
    if not (2 <= n <= 24):
        raise OutOfRange(f"n must be in [2, 24], got {n}")
    h = TreeHypergraph(uniformity_target=n)
    root = h.add_vertex()
    leaves = _complete_subtree(h, root, n)
    for leaf in leaves:
        h.add_path_edge(root, leaf)
    return h.freeze()


def theorem1_counterexample(n: int, max_n: int = 12) -> TreeHypergraph:
    """n-uniform counterexample with maximum neighborhood 3 * 2^(n-3).

    Shape: a base tree with n-1 levels; each base leaf u gets a child v (branch
    root->v is an edge) and a child w carrying a subtree S with n-2 levels; each
    leaf u' of S gets a child v' (path u->v' is an edge) and a child w' carrying
    a subtree S' with n-1 levels, all of whose u'-to-leaf paths are edges.
    """
    if n < 4:
        raise OutOfRange("counterexample needs n >= 4")
    if n > max_n:
        raise OutOfRange(f"n={n} exceeds the resource guard {max_n}")
    h = TreeHypergraph(uniformity_target=n)
    root = h.add_vertex()
    for u in _complete_subtree(h, root, n - 1):
        v = h.add_vertex(u)
        w = h.add_vertex(u)
        h.add_path_edge(root, v)
        for u2 in _complete_subtree(h, w, n - 2):
            v2 = h.add_vertex(u2)
            w2 = h.add_vertex(u2)
            h.add_path_edge(u, v2)
            for leaf in _complete_subtree(h, w2, n - 1):
                h.add_path_edge(u2, leaf)
    return h.freeze()


@dataclass
class CensusRow:
    start_level_class: str
    start_level: int
    edges_in_class: int
    min_neighborhood: int
    max_neighborhood: int

    def to_json(self) -> dict:
        return {
            "class": self.start_level_class,
            "start_level": self.start_level,
            "edges": self.edges_in_class,
            "min_neighborhood": self.min_neighborhood,
            "max_neighborhood": self.max_neighborhood,
        }


def neighborhood_census(h: TreeHypergraph) -> list[CensusRow]:
    """Exclude-self neighborhood counts per start-level class of the counterexample.

    Asserts the root class stays at 2^(n-2) + 2^(n-3) - 1 and the middle class
    at 2^(n-2) + 2^(n-3); the deepest class is reported as measured (the
    published case analysis overcounts it by one).
    """
    n = h.uniformity_target
    if n is None:
        raise NotACounterexampleShape("hypergraph has no uniformity target")
    classes = {0: "root", n - 2: f"level {n - 2}", 2 * n - 4: f"level {2 * n - 4}"}
    buckets: dict[int, list[int]] = {lv: [] for lv in classes}
    for i, e in enumerate(h.edges):
        lv = h.level(e.start)
        if lv not in buckets:
            raise NotACounterexampleShape(f"edge {i} starts at unexpected level {lv}")
        buckets[lv].append(h.neighborhood_size(i, include_self=False))
    rows = []
    for lv, name in classes.items():
        counts = buckets[lv]
        if not counts:
            raise NotACounterexampleShape(f"no edges start at level {lv}")
        rows.append(
            CensusRow(
                start_level_class=name,
                start_level=lv,
                edges_in_class=len(counts),
                min_neighborhood=min(counts),
                max_neighborhood=max(counts),
            )
        )
    bound = 2 ** (n - 2) + 2 ** (n - 3)
    if rows[0].max_neighborhood > bound - 1:
        raise NotACounterexampleShape("root class exceeds its bound")
    if rows[1].max_neighborhood > bound:
        raise NotACounterexampleShape("middle class exceeds its bound")
    return rows
