"""Proper halving 2-colorings via pair blocks and resampling.

Vertices are matched into pairs that must receive opposite colors, edges are
rewritten over pair literals, the local-lemma condition is checked numerically,
and a coloring is found by resampling the blocks of violated edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (
    GenerationStalled,
    Infeasible,
    InvalidPairing,
    ResampleBudgetExceeded,
    UnknownVertex,
)

RED = "red"
BLUE = "blue"


@dataclass
class Hypergraph:
    """Plain n-uniform hypergraph (no tree structure)."""

    n: int
    vertex_count: int
    edges: list[list[int]]

    def max_degree(self) -> int:
        deg = [0] * self.vertex_count
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return max(deg, default=0)

    def to_json(self) -> dict:
        return {"n": self.n, "vertex_count": self.vertex_count, "edges": self.edges}

    @classmethod
    def from_json(cls, doc: dict) -> "Hypergraph":
        return cls(n=doc["n"], vertex_count=doc["vertex_count"],
                   edges=[list(e) for e in doc["edges"]])


@dataclass
class Pairing:
    pairs: list[tuple[int, int]]
    unpaired: int | None = None

    def validate_for(self, F: Hypergraph) -> None:
        seen: set[int] = set()
        for a, b in self.pairs:
            for v in (a, b):
                if not (0 <= v < F.vertex_count) or v in seen:
                    raise InvalidPairing(f"vertex {v} repeated or out of range")
                seen.add(v)
        if self.unpaired is not None:
            if self.unpaired in seen or not (0 <= self.unpaired < F.vertex_count):
                raise InvalidPairing("bad unpaired vertex")
            seen.add(self.unpaired)
        if len(seen) != F.vertex_count:
            raise InvalidPairing("pairing does not cover all vertices")

    def to_json(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs], "unpaired": self.unpaired}


def default_pairing(F: Hypergraph, seed: int = 0) -> Pairing:
    """Seeded random perfect matching on vertex ids (one leftover when odd)."""
    rng = random.Random(seed)
    ids = list(range(F.vertex_count))
    rng.shuffle(ids)
    unpaired = ids.pop() if len(ids) % 2 else None
    pairs = [(ids[i], ids[i + 1]) for i in range(0, len(ids), 2)]
    return Pairing(pairs=pairs, unpaired=unpaired)


@dataclass
class SignedHypergraph:
    """Edges rewritten over pair blocks: literal (block, +1) means the pair's
    first vertex, (block, -1) its partner; edges holding both polarities of one
    block are bichromatic in every pairing-respecting coloring and are dropped."""

    block_count: int
    signed_edges: list[list[tuple[int, int]]]
    dropped_edges: list[int] = field(default_factory=list)

    def max_block_degree(self) -> int:
        deg = [0] * self.block_count
        for lits in self.signed_edges:
            for b, _pol in set(lits):
                deg[b] += 1
        return max(deg, default=0)


def _literal_map(F: Hypergraph, pairing: Pairing) -> tuple[dict[int, tuple[int, int]], int]:
    lit: dict[int, tuple[int, int]] = {}
    for k, (a, b) in enumerate(pairing.pairs):
        lit[a] = (k, +1)
        lit[b] = (k, -1)
    blocks = len(pairing.pairs)
    if pairing.unpaired is not None:
        lit[pairing.unpaired] = (blocks, +1)
        blocks += 1
    return lit, blocks


def build_signed_hypergraph(F: Hypergraph, pairing: Pairing) -> SignedHypergraph:
    pairing.validate_for(F)
    lit, blocks = _literal_map(F, pairing)
    signed = []
    dropped = []
    for i, e in enumerate(F.edges):
        lits = [lit[v] for v in e]
        pols: dict[int, set[int]] = {}
        for b, p in lits:
            pols.setdefault(b, set()).add(p)
        if any(len(ps) == 2 for ps in pols.values()):
            dropped.append(i)
        else:
            signed.append(lits)
    return SignedHypergraph(block_count=blocks, signed_edges=signed, dropped_edges=dropped)


def check_lll_condition(n: int, max_degree: int, precision: int = 60) -> dict:
    """Symmetric local-lemma check for n-uniform boards at the given (original)
    maximum vertex degree; holds iff e*(1 - 2e/2^n)^(n*(2D-1)) >= 1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    with mpmath.workdps(precision):
        gamma = 2 * mpmath.e / mpmath.mpf(2) ** n
        exponent = n * (2 * max_degree - 1)
        ratio = mpmath.e * (1 - gamma) ** exponent
        margin = Fraction(mpmath.nstr(ratio - 1, 40, strip_zeros=False))
        holds = ratio >= 1
    return {"holds": bool(holds), "margin": margin}


def _colors_from_blocks(F: Hypergraph, lit, assignment: list[bool]) -> list[str]:
    colors = [""] * F.vertex_count
    for v in range(F.vertex_count):
        b, p = lit[v]
        bit = assignment[b] if p > 0 else not assignment[b]
        colors[v] = RED if bit else BLUE
    return colors


def halving_coloring(
    F: Hypergraph,
    pairing: Pairing | None = None,
    seed: int = 0,
    max_resamples: int = 10**6,
) -> list[str]:
    """Resample pair blocks until no original edge is monochromatic.

    Returns one color per vertex; every pair is bichromatic by construction, so
    the color classes differ by at most one vertex.
    """
    if pairing is None:
        pairing = default_pairing(F, seed)
    pairing.validate_for(F)
    lit, blocks = _literal_map(F, pairing)
    rng = random.Random(seed)
    assignment = [rng.random() < 0.5 for _ in range(blocks)]
    resamples = 0
    while True:
        colors = _colors_from_blocks(F, lit, assignment)
        bad = None
        for e in F.edges:
            if e and len({colors[v] for v in e}) == 1:
                bad = e
                break
        if bad is None:
            return colors
        if resamples >= max_resamples:
            bad_edges = [e for e in F.edges if e and len({colors[v] for v in e}) == 1]
            raise ResampleBudgetExceeded(
                f"no proper coloring within {max_resamples} resamples",
                resamples=resamples,
                bad_edges=bad_edges,
            )
        for b in {lit[v][0] for v in bad}:
            assignment[b] = rng.random() < 0.5
        resamples += 1


def verify_proper_halving(F: Hypergraph, colors: list[str]) -> dict:
    if len(colors) != F.vertex_count:
        raise UnknownVertex("coloring does not cover every vertex")
    for e in F.edges:
        for v in e:
            if not (0 <= v < len(colors)):
                raise UnknownVertex(f"edge vertex {v} has no color")
    proper = all(len({colors[v] for v in e}) > 1 for e in F.edges if e)
    reds = sum(1 for c in colors if c == RED)
    return {"proper": proper, "balance": abs(reds - (len(colors) - reds))}


def random_bounded_degree_hypergraph(
    n: int,
    max_degree: int,
    edge_count: int,
    vertex_count: int,
    seed: int = 0,
    retry_budget: int = 200,
) -> Hypergraph:
    """Seeded rejection sampling of distinct n-subsets under a degree cap."""
    if edge_count * n > vertex_count * max_degree:
        raise Infeasible("degree cap cannot accommodate that many edges")
    if n > vertex_count:
        raise Infeasible("edges larger than the vertex set")
    rng = random.Random(seed)
    for _attempt in range(retry_budget):
        deg = [0] * vertex_count
        edges: list[list[int]] = []
        seen: set[tuple[int, ...]] = set()
        ok = True
        for _ in range(edge_count):
            placed = False
            for _try in range(200):
                eligible = [v for v in range(vertex_count) if deg[v] < max_degree]
                if len(eligible) < n:
                    break
                e = tuple(sorted(rng.sample(eligible, n)))
                if e in seen:
                    continue
                seen.add(e)
                for v in e:
                    deg[v] += 1
                edges.append(list(e))
                placed = True
                break
            if not placed:
                ok = False
                break
        if ok:
            return Hypergraph(n=n, vertex_count=vertex_count, edges=edges)
    raise GenerationStalled("retry budget exhausted")
