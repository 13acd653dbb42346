"""Tree-structured hypergraphs: binary tree of vertices, hyperedges = vertical paths.

A hypergraph of this class is a rooted binary tree together with a multiset of
path edges, each running from an ancestor down to a descendant through
consecutive levels.  This module owns the data model, the exact degree /
neighborhood / branch verifiers, and the JSON persistence schema.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BadDocument,
    FrozenHypergraph,
    NotAncestor,
    SecondRoot,
    ThirdChild,
    UnknownEdge,
    UnknownParent,
    UnknownVertex,
)

FORMAT_TAG = "treehg/1"
DEFAULT_VERTEX_BUDGET = 1 << 14


def vertex_budget() -> int:
    """Explicit materialization budget; MAKERFORGE_BUDGET overrides."""
    raw = os.environ.get("MAKERFORGE_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_VERTEX_BUDGET


@dataclass
class PathEdge:
    """One hyperedge: the tree path from `start` down to `end`, with a multiplicity."""

    start: int
    end: int
    mult: int = 1

    def size_in(self, h: "TreeHypergraph") -> int:
        return h.level(self.end) - h.level(self.start) + 1


@dataclass
class AuditReport:
    uniform: int | None
    max_degree: int
    max_neighborhood_excl: int
    max_neighborhood_incl: int
    every_branch_covered: bool
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "uniform": self.uniform,
            "max_degree": self.max_degree,
            "max_neighborhood_excl": self.max_neighborhood_excl,
            "max_neighborhood_incl": self.max_neighborhood_incl,
            "every_branch_covered": self.every_branch_covered,
            "violations": list(self.violations),
        }


class TreeHypergraph:
    """Mutable while under construction; `freeze()` makes it immutable and cached."""

    def __init__(self, uniformity_target: int | None = None):
        self.parent: list[int | None] = []
        self.children: list[list[int]] = []
        self._level: list[int] = []
        self.edges: list[PathEdge] = []
        self.uniformity_target = uniformity_target
        self.frozen = False
        # caches, valid only when frozen
        self._tin: list[int] | None = None
        self._tout: list[int] | None = None
        self._supports: list[frozenset[int]] | None = None
        self._degrees: list[int] | None = None

    # --- basic accessors ---

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    def level(self, v: int) -> int:
        self._check_vertex(v)
        return self._level[v]

    def root(self) -> int:
        if not self.parent:
            raise UnknownVertex("empty tree has no root")
        return 0

    def is_leaf(self, v: int) -> bool:
        self._check_vertex(v)
        return not self.children[v]

    def leaves(self) -> list[int]:
        return [v for v in range(self.n_vertices) if not self.children[v]]

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or v < 0 or v >= len(self.parent):
            raise UnknownVertex(f"no vertex {v!r}")

    def _check_edge(self, e: int) -> None:
        if not isinstance(e, int) or e < 0 or e >= len(self.edges):
            raise UnknownEdge(f"no edge {e!r}")

    def _check_mutable(self) -> None:
        if self.frozen:
            raise FrozenHypergraph("hypergraph is frozen")

    # --- construction ---

    def add_vertex(self, parent: int | None = None) -> int:
        self._check_mutable()
        if parent is None:
            if self.parent:
                raise SecondRoot("tree already has a root")
            self.parent.append(None)
            self.children.append([])
            self._level.append(0)
            return 0
        if not isinstance(parent, int) or parent < 0 or parent >= len(self.parent):
            raise UnknownParent(f"no vertex {parent!r}")
        if len(self.children[parent]) >= 2:
            raise ThirdChild(f"vertex {parent} already has two children")
        vid = len(self.parent)
        self.parent.append(parent)
        self.children.append([])
        self.children[parent].append(vid)
        self._level.append(self._level[parent] + 1)
        return vid

    def add_path_edge(self, start: int, end: int, multiplicity: int = 1) -> int:
        self._check_mutable()
        self._check_vertex(start)
        self._check_vertex(end)
        if multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if not self.is_ancestor_or_self(start, end):
            raise NotAncestor(f"{start} is not an ancestor of {end}")
        self.edges.append(PathEdge(start, end, multiplicity))
        return len(self.edges) - 1

    def extend_edge(self, edge_id: int, child: int) -> None:
        """Move an edge's end down to a child of its current end."""
        self._check_mutable()
        self._check_edge(edge_id)
        self._check_vertex(child)
        e = self.edges[edge_id]
        if self.parent[child] != e.end:
            raise NotAncestor(f"{child} is not a child of edge end {e.end}")
        e.end = child

    def split_edge_multiplicity(self, edge_id: int, take: int) -> int:
        """Split `take` copies off an edge into a fresh edge record; returns its id."""
        self._check_mutable()
        self._check_edge(edge_id)
        e = self.edges[edge_id]
        if not (0 < take < e.mult):
            raise ValueError("take must split the multiplicity properly")
        e.mult -= take
        self.edges.append(PathEdge(e.start, e.end, take))
        return len(self.edges) - 1

    def remove_edges(self, edge_ids) -> None:
        self._check_mutable()
        doomed = set(edge_ids)
        self.edges = [e for i, e in enumerate(self.edges) if i not in doomed]

    def freeze(self) -> "TreeHypergraph":
        if self.frozen:
            return self
        self.frozen = True
        self._tin = [0] * self.n_vertices
        self._tout = [0] * self.n_vertices
        if self.n_vertices:
            clock = 0
            stack: list[tuple[int, bool]] = [(0, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    self._tout[v] = clock
                    continue
                self._tin[v] = clock
                clock += 1
                stack.append((v, True))
                for c in reversed(self.children[v]):
                    stack.append((c, False))
        self._supports = [frozenset(self.path_vertices(i)) for i in range(len(self.edges))]
        self._degrees = self._compute_degrees()
        return self

    # --- tree queries ---

    def is_ancestor_or_self(self, a: int, b: int) -> bool:
        if self.frozen and self._tin is not None:
            return self._tin[a] <= self._tin[b] and self._tout[b] <= self._tout[a]
        la, lb = self._level[a], self._level[b]
        if la > lb:
            return False
        v = b
        while self._level[v] > la:
            v = self.parent[v]
        return v == a

    def ancestor_at_level(self, v: int, lv: int) -> int:
        if lv > self._level[v]:
            raise ValueError("no ancestor below the vertex")
        while self._level[v] > lv:
            v = self.parent[v]
        return v

    def path_vertices(self, edge_id: int) -> list[int]:
        self._check_edge(edge_id)
        e = self.edges[edge_id]
        out = []
        v = e.end
        while True:
            out.append(v)
            if v == e.start:
                break
            v = self.parent[v]
        out.reverse()
        return out

    def edge_support(self, edge_id: int) -> frozenset[int]:
        if self.frozen and self._supports is not None:
            return self._supports[edge_id]
        return frozenset(self.path_vertices(edge_id))

    def subtree_size(self, v: int) -> int:
        self._check_vertex(v)
        if self.frozen and self._tin is not None:
            return self._tout[v] - self._tin[v]
        count = 0
        stack = [v]
        while stack:
            u = stack.pop()
            count += 1
            stack.extend(self.children[u])
        return count

    # --- degrees and neighborhoods ---

    def _compute_degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for e in self.edges:
            v = e.end
            while True:
                deg[v] += e.mult
                if v == e.start:
                    break
                v = self.parent[v]
        return deg

    def degrees(self) -> list[int]:
        if self.frozen and self._degrees is not None:
            return self._degrees
        return self._compute_degrees()

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.degrees()[v]

    def max_degree(self) -> int:
        deg = self.degrees()
        return max(deg, default=0)

    def _starts_mult(self) -> list[int]:
        out = [0] * self.n_vertices
        for e in self.edges:
            out[e.start] += e.mult
        return out

    def neighborhood_size(self, edge_id: int, include_self: bool = False) -> int:
        self._check_edge(edge_id)
        deg = self.degrees()
        starts = self._starts_mult()
        n = self._neighborhood_incl(edge_id, deg, starts)
        return n if include_self else n - 1

    def _neighborhood_incl(self, edge_id: int, deg: list[int], starts: list[int]) -> int:
        # Any edge meeting e either starts on e's path, or starts strictly above
        # e's start and runs through it; the latter mass is deg(start) minus the
        # edges starting at e's start.
        e = self.edges[edge_id]
        total = deg[e.start]
        v = e.end
        while v != e.start:
            total += starts[v]
            v = self.parent[v]
        return total

    def max_neighborhood(self, include_self: bool = False) -> int:
        if not self.edges:
            return 0
        deg = self.degrees()
        starts = self._starts_mult()
        best = max(self._neighborhood_incl(i, deg, starts) for i in range(len(self.edges)))
        return best if include_self else best - 1

    # --- verifiers ---

    def validate_class_c(self) -> list:
        """Structural findings; empty iff the class invariants hold."""
        violations = []
        roots = [v for v in range(self.n_vertices) if self.parent[v] is None]
        if self.n_vertices and len(roots) != 1:
            violations.append({"kind": "root-count", "roots": roots})
        for v in range(self.n_vertices):
            p = self.parent[v]
            if p is not None and not (0 <= p < v):
                violations.append({"kind": "bad-parent", "vertex": v, "parent": p})
            if len(self.children[v]) > 2:
                violations.append({"kind": "arity", "vertex": v})
        for i, e in enumerate(self.edges):
            if e.mult < 1:
                violations.append({"kind": "bad-multiplicity", "edge": i})
            if not (0 <= e.start < self.n_vertices and 0 <= e.end < self.n_vertices):
                violations.append({"kind": "dangling-edge", "edge": i})
                continue
            if not self.is_ancestor_or_self(e.start, e.end):
                violations.append({"kind": "not-a-path", "edge": i, "start": e.start, "end": e.end})
        return violations

    def uniformity(self) -> int | None:
        sizes = {e.size_in(self) for e in self.edges}
        if len(sizes) == 1:
            return sizes.pop()
        return None

    def every_branch_covered(self) -> bool:
        """True iff each root-to-leaf branch contains some edge's full path."""
        if not self.n_vertices:
            return False
        if not self.edges:
            return False
        has_end = [False] * self.n_vertices
        for e in self.edges:
            has_end[e.end] = True
        # a branch is covered iff some edge ends on it
        covered = [False] * self.n_vertices
        order = range(self.n_vertices)  # parents precede children by construction
        for v in order:
            p = self.parent[v]
            covered[v] = has_end[v] or (p is not None and covered[p])
        return all(covered[v] for v in range(self.n_vertices) if not self.children[v])

    def audit_branches(self) -> AuditReport:
        incl = self.max_neighborhood(include_self=True)
        return AuditReport(
            uniform=self.uniformity(),
            max_degree=self.max_degree(),
            max_neighborhood_excl=max(incl - 1, 0),
            max_neighborhood_incl=incl,
            every_branch_covered=self.every_branch_covered(),
            violations=self.validate_class_c(),
        )


# --- persistence (canonical JSON schema) ---


def to_document(h: TreeHypergraph) -> dict:
    """Canonical document: dense breadth-first ids, edges sorted and merged."""
    relabel: dict[int, int] = {}
    nodes = []
    if h.n_vertices:
        queue = deque([0])
        while queue:
            v = queue.popleft()
            relabel[v] = len(nodes)
            p = h.parent[v]
            nodes.append({"id": len(nodes), "parent": None if p is None else relabel[p]})
            for c in sorted(h.children[v]):
                queue.append(c)
    merged: dict[tuple[int, int], int] = {}
    for e in h.edges:
        key = (relabel[e.start], relabel[e.end])
        merged[key] = merged.get(key, 0) + e.mult
    edges = [
        {"start": s, "end": t, "mult": m}
        for (s, t), m in sorted(merged.items())
    ]
    return {
        "format": FORMAT_TAG,
        "n": h.uniformity_target,
        "nodes": nodes,
        "edges": edges,
    }


def from_document(doc: dict) -> TreeHypergraph:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise BadDocument(f"expected format {FORMAT_TAG!r}")
    h = TreeHypergraph(uniformity_target=doc.get("n"))
    try:
        for rec in doc["nodes"]:
            if rec["id"] != h.n_vertices:
                raise BadDocument("node ids must be dense and in order")
            h.add_vertex(rec["parent"])
        for rec in doc["edges"]:
            h.add_path_edge(rec["start"], rec["end"], rec.get("mult", 1))
    except (KeyError, TypeError) as exc:
        raise BadDocument(f"malformed document: {exc}") from exc
    return h


def dumps(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def store(h: TreeHypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(to_document(h)))


def load(path: str) -> TreeHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return from_document(json.load(fh))
