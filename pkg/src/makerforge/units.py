"""Unit calculus, explicit backend.

A *unit* of power k is a set of 2^i bottom hyperedges (counting multiplicity)
of common size log d + 1 - i + k, all ending at the same leaf.  The length of a
unit is that common size, so length = log d + 1 + power - log2(cardinality)
throughout.  This module materializes every operation on a real tree: node
splitting, the unit-increase split, staircase building and extension, unit
merging and halving, the collapse to an n-uniform hypergraph, and the
construction pipeline behind the 2^(n+1)/n maximum-degree Maker win.
"""

from __future__ import annotations

from .errors import (
    MixedPower,
    NotALeaf,
    NotAPartition,
    NotPowerOfTwo,
    OutOfRange,
    ShapeMismatch,
    SingletonUnit,
    TooLarge,
    UnitTooLong,
)
from .tree_model import TreeHypergraph, vertex_budget

ACTIVE = "active"


def _is_pow2(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


class Unit:
    """Bookkeeping handle: member edge ids plus the declared power."""

    __slots__ = ("members", "power")

    def __init__(self, members: list[int], power: int | None):
        self.members = members
        self.power = power

    def length(self, uh: "UnitHypergraph") -> int:
        sizes = {uh.h.edges[m].size_in(uh.h) for m in self.members}
        if len(sizes) != 1:
            raise ShapeMismatch("unit members disagree on size")
        return sizes.pop()

    def cardinality(self, uh: "UnitHypergraph") -> int:
        return sum(uh.h.edges[m].mult for m in self.members)

    def signature(self, uh: "UnitHypergraph") -> tuple:
        return (self.length(uh), self.power, self.cardinality(uh))


class UnitHypergraph:
    """A mutable tree hypergraph plus the per-leaf bottom-unit profiles."""

    def __init__(self, d: int, budget: int | None = None):
        if not _is_pow2(d):
            raise OutOfRange(f"d must be a power of two, got {d}")
        self.d = d
        self.log_d = d.bit_length() - 1
        self.budget = vertex_budget() if budget is None else budget
        self.h = TreeHypergraph()
        root = self.h.add_vertex()
        self.profiles: dict[int, list[Unit]] = {root: []}
        self.tags: dict[int, str] = {root: ACTIVE}

    # --- selectors / reporting ---

    def leaves_with(self, tag: str) -> list[int]:
        return [v for v, t in self.tags.items() if t == tag]

    def retag(self, src: str, dst: str) -> None:
        for v, t in list(self.tags.items()):
            if t == src:
                self.tags[v] = dst

    def max_degree(self) -> int:
        return self.h.max_degree()

    def covered(self) -> bool:
        return self.h.every_branch_covered()

    def profile_views(self, tag: str):
        """(leaf, [(length, power, card) per unit in order], leaf_count=1)."""
        out = []
        for v in sorted(self.leaves_with(tag)):
            out.append((v, [u.signature(self) for u in self.profiles[v]], 1))
        return out

    def profile_runs(self, tag: str):
        """(leaf, ordered (length, power, count) runs, leaf-count bit length)."""
        out = []
        for v in sorted(self.leaves_with(tag)):
            runs: list[tuple[int, int, int]] = []
            for unit in self.profiles[v]:
                L, k = unit.length(self), unit.power
                if runs and runs[-1][0] == L and runs[-1][1] == k:
                    runs[-1] = (L, k, runs[-1][2] + 1)
                else:
                    runs.append((L, k, 1))
            out.append((v, runs, 0))
        return out

    def class_table(self) -> list[tuple]:
        """Canonical multiset of (profile signature, tag, leaf count)."""
        groups: dict[tuple, int] = {}
        for v, tag in self.tags.items():
            sig = (tuple(u.signature(self) for u in self.profiles[v]), tag)
            groups[sig] = groups.get(sig, 0) + 1
        return sorted((sig[0], sig[1], cnt) for sig, cnt in groups.items())

    # --- primitive split ---

    def _halve_members(self, unit: Unit) -> tuple[list[int], list[int]]:
        card = unit.cardinality(self)
        if card < 2 or card % 2:
            raise SingletonUnit("cannot halve a unit of odd or unit cardinality")
        need = card // 2
        first: list[int] = []
        second: list[int] = []
        for eid in sorted(unit.members):
            m = self.h.edges[eid].mult
            if need == 0:
                second.append(eid)
            elif m <= need:
                first.append(eid)
                need -= m
            else:
                spill = self.h.split_edge_multiplicity(eid, m - need)
                first.append(eid)
                second.append(spill)
                need = 0
        return first, second

    def split_node(self, u: int, partition, singletons=(0, 0)):
        """Add two children to leaf u, routing the two bottom-edge lists to them
        and optionally adding new size-1 edges; unassigned bottom edges stay at
        u and fall out of bottom status.  Returns (v1, v2, singleton edge ids)."""
        if not self.h.is_leaf(u):
            raise NotALeaf(f"{u} is not a leaf")
        if self.h.n_vertices + 2 > self.budget:
            raise TooLarge(f"vertex budget {self.budget} exhausted")
        seen: set[int] = set()
        for side in partition:
            for eid in side:
                if eid in seen:
                    raise NotAPartition(f"edge {eid} listed twice")
                seen.add(eid)
                e = self.h.edges[eid]
                if e.end != u:
                    raise NotAPartition(f"edge {eid} does not end at {u}")
        v1 = self.h.add_vertex(u)
        v2 = self.h.add_vertex(u)
        for child, side in zip((v1, v2), partition):
            for eid in side:
                self.h.extend_edge(eid, child)
        new_edges = []
        for child, mult in zip((v1, v2), singletons):
            if mult > 0:
                new_edges.append(self.h.add_path_edge(child, child, mult))
            else:
                new_edges.append(None)
        # generic profile bookkeeping: units follow their members
        old_units = self.profiles.pop(u, [])
        tag = self.tags.pop(u, ACTIVE)
        for child, side, sid, mult in zip((v1, v2), partition, new_edges, singletons):
            member_set = set(side)
            units = []
            if sid is not None:
                p = (mult.bit_length() - 1) - self.log_d if _is_pow2(mult) else None
                units.append(Unit([sid], p if p is not None and p >= 0 else None))
            for old in old_units:
                kept = [m for m in old.members if m in member_set]
                if kept:
                    units.append(Unit(kept, old.power))
            self.profiles[child] = units
            self.tags[child] = tag
        return v1, v2, new_edges

    # --- unit operations ---

    def unit_increase_split(self, u: int) -> tuple[int, int]:
        """Halve every bottom unit across two new children and give each child a
        fresh multiplicity-d singleton, turning profile (l1..li) into (1, l1+1..li+1)."""
        units = self.profiles[u]
        for unit in units:
            if unit.length(self) > self.log_d:
                raise UnitTooLong(
                    f"unit of length {unit.length(self)} exceeds log d = {self.log_d}"
                )
        halves = [self._halve_members(unit) for unit in units]
        part1 = [eid for a, _b in halves for eid in a]
        part2 = [eid for _a, b in halves for eid in b]
        v1, v2, sids = self.split_node(u, (part1, part2), singletons=(self.d, self.d))
        for child, sid, pick in ((v1, sids[0], 0), (v2, sids[1], 1)):
            profile = [Unit([sid], 0)]
            for (a, b), old in zip(halves, units):
                profile.append(Unit(a if pick == 0 else b, old.power))
            self.profiles[child] = profile
        return v1, v2

    def extend_staircase(self, u: int, r: int, s: int) -> None:
        """s - r unit-increase rounds below u: fresh units of lengths 1..s-r and
        the old units lengthened by s - r on every resulting branch."""
        if not (r <= s <= self.log_d + 1):
            raise OutOfRange(f"need r <= s <= log d + 1, got r={r}, s={s}")
        for unit in self.profiles[u]:
            if unit.length(self) > r:
                raise UnitTooLong("profile exceeds the staircase offset r")
        frontier = [u]
        for _ in range(s - r):
            frontier = [c for f in frontier for c in self.unit_increase_split(f)]

    def merge_units(self, u: int, unit_indices: list[int]) -> None:
        """Trade 2^t equal-power units for one unit of power k + t on every
        branch below u; unselected units fall out of bottom status."""
        units = self.profiles[u]
        selected = [units[i] for i in unit_indices]
        if not _is_pow2(len(selected)):
            raise NotPowerOfTwo(f"selected {len(selected)} units")
        powers = {unit.power for unit in selected}
        if len(powers) != 1:
            raise MixedPower(f"selected powers {sorted(powers)}")
        frontier = [(u, selected)]
        while len(frontier[0][1]) > 1:
            nxt = []
            for leaf, sel in frontier:
                half = len(sel) // 2
                first, second = sel[:half], sel[half:]
                p1 = [m for unit in first for m in unit.members]
                p2 = [m for unit in second for m in unit.members]
                v1, v2, _ = self.split_node(leaf, (p1, p2))
                self.profiles[v1] = [Unit(list(unit.members), unit.power + 1) for unit in first]
                self.profiles[v2] = [Unit(list(unit.members), unit.power + 1) for unit in second]
                nxt.append((v1, self.profiles[v1]))
                nxt.append((v2, self.profiles[v2]))
            frontier = nxt

    def halve_unit(self, u: int, index: int = 0) -> tuple[int, int]:
        """Split u so each branch keeps half the unit (length + 1, same power)."""
        unit = self.profiles[u][index]
        if unit.cardinality(self) < 2:
            raise SingletonUnit("unit cardinality is already 1")
        a, b = self._halve_members(unit)
        power = unit.power
        v1, v2, _ = self.split_node(u, (a, b))
        self.profiles[v1] = [Unit(a, power)]
        self.profiles[v2] = [Unit(b, power)]
        return v1, v2

    def repartition(self, tag: str = ACTIVE) -> None:
        """Regroup every positive-power unit into two half-units of power - 1
        (same edges, same lengths; pure bookkeeping on the profile)."""
        for v in self.leaves_with(tag):
            out = []
            for unit in self.profiles[v]:
                if unit.power is not None and unit.power >= 1:
                    a, b = self._halve_members(unit)
                    out.append(Unit(a, unit.power - 1))
                    out.append(Unit(b, unit.power - 1))
                else:
                    out.append(unit)
            self.profiles[v] = out

    def sort_profiles(self, tag: str = ACTIVE) -> None:
        for v in self.leaves_with(tag):
            self.profiles[v].sort(key=lambda u: (u.length(self), u.power))

    # --- bulk forms used by the pipelines ---

    def unit_round(self, tag: str = ACTIVE) -> None:
        for v in self.leaves_with(tag):
            self.unit_increase_split(v)

    def extend_rounds(self, tag: str, r: int, s: int) -> None:
        for v in self.leaves_with(tag):
            self.extend_staircase(v, r, s)

    def cut_split(self, tag: str, cut: int, limit: int | None = None,
                  tags: tuple[str, str] = ("v", "w")) -> None:
        """Split each tagged leaf: units [0:cut] go wholly to the first child,
        [cut:limit] to the second (power + 1 each); the rest fall dead."""
        for u in self.leaves_with(tag):
            units = self.profiles[u]
            lim = len(units) if limit is None else limit
            first, second = units[:cut], units[cut:lim]
            p1 = [m for unit in first for m in unit.members]
            p2 = [m for unit in second for m in unit.members]
            v1, v2, _ = self.split_node(u, (p1, p2))
            self.profiles[v1] = [Unit(list(x.members), x.power + 1) for x in first]
            self.profiles[v2] = [Unit(list(x.members), x.power + 1) for x in second]
            self.tags[v1] = tags[0]
            self.tags[v2] = tags[1]

    def collapse_to_uniform(self, n: int, tag: str | None = None) -> TreeHypergraph:
        """Per branch: merge 2^(n - log d - 1 - k) units and halve to singletons,
        then drop every edge that did not reach full size.  Returns the frozen
        n-uniform hypergraph."""
        from .errors import InsufficientUnits

        target = n - self.log_d - 1
        leaves = sorted(self.tags) if tag is None else sorted(self.leaves_with(tag))
        for u in leaves:
            if not self.h.is_leaf(u):
                continue
            units = self.profiles[u]
            powers = {unit.power for unit in units}
            if len(powers) != 1:
                raise MixedPower(f"leaf {u} mixes unit powers {sorted(powers)}")
            k = powers.pop()
            l = len(units)
            if k + (l.bit_length() - 1) < target:
                raise InsufficientUnits(
                    f"leaf {u}: k={k}, l={l}: k + floor(log l) = "
                    f"{k + l.bit_length() - 1} < {target}"
                )
            s = target - k
            before = set(self.tags)
            if s > 0:
                self.merge_units(u, list(range(1 << s)))
                frontier = [v for v in self.tags if v not in before and self.h.is_leaf(v)]
            else:
                frontier = [u]
            # halve the surviving unit down to a single full-size edge
            while frontier:
                nxt = []
                for f in frontier:
                    unit = self.profiles[f][0]
                    if unit.cardinality(self) > 1:
                        nxt.extend(self.halve_unit(f, 0))
                    elif len(self.profiles[f]) > 1:
                        self.profiles[f] = [unit]
                frontier = nxt
        self.pre_removal_max_degree = self.h.max_degree()
        keep: set[int] = set()
        for v in self.tags:
            if self.h.is_leaf(v):
                for unit in self.profiles[v]:
                    keep.update(unit.members)
        self.h.remove_edges(i for i in range(len(self.h.edges)) if i not in keep)
        remap = {old: new for new, old in enumerate(sorted(keep))}
        for v in self.tags:
            if self.h.is_leaf(v):
                for unit in self.profiles[v]:
                    unit.members = [remap[m] for m in unit.members]
        self.h.uniformity_target = n
        return self.h.freeze()


# --- spec-level convenience builders ---


def build_staircase(i: int, d: int, budget: int | None = None) -> UnitHypergraph:
    """i unit-increase rounds from a bare root: every branch profile (1, 2, .., i)."""
    if i < 1 or i > (d.bit_length() - 1) + 1:
        raise OutOfRange(f"need 1 <= i <= log d + 1, got {i}")
    uh = UnitHypergraph(d, budget=budget)
    if (1 << (i + 1)) - 1 > uh.budget:
        raise TooLarge(f"staircase({i}) needs {(1 << (i + 1)) - 1} vertices")
    for _ in range(i):
        uh.unit_round()
    return uh


# --- the weaker (2^(n+1)/n) pipeline ---


def weak_lemma_first(d: int, budget: int | None = None) -> UnitHypergraph:
    """Complete tree with log d + 1 levels; every ancestor-to-leaf path is an
    edge of multiplicity 2^level.  Each branch then ends one bottom unit of
    every length 1 .. log d + 1."""
    uh = UnitHypergraph(d, budget=budget)
    log_d = uh.log_d
    if (1 << (log_d + 1)) - 1 > uh.budget:
        raise TooLarge(f"needs {(1 << (log_d + 1)) - 1} vertices")
    h = uh.h
    frontier = [0]
    for _ in range(log_d):
        frontier = [h.add_vertex(v) for v in frontier for _ in range(2)]
    uh.profiles.clear()
    uh.tags.clear()
    for leaf in frontier:
        profile = []
        for size in range(1, log_d + 2):
            anc = h.ancestor_at_level(leaf, log_d + 1 - size)
            eid = h.add_path_edge(anc, leaf, 1 << (log_d + 1 - size))
            profile.append(Unit([eid], 0))
        uh.profiles[leaf] = profile
        uh.tags[leaf] = ACTIVE
    return uh


def weak_attach_power(uh: UnitHypergraph) -> UnitHypergraph:
    """Hang a height-floor(log log d) tree under each leaf and route unit class
    i (the one with 2^i edges) along the branch to the i-th new leaf; classes
    with no branch left fall dead."""
    log_d = uh.log_d
    h2 = (log_d.bit_length() - 1) if log_d >= 1 else 0
    h = uh.h
    for u in uh.leaves_with(ACTIVE):
        units = uh.profiles[u]
        if len(units) != log_d + 1:
            raise ShapeMismatch(f"leaf {u} has {len(units)} units, wanted {log_d + 1}")
        by_class = {}
        for unit in units:
            card = unit.cardinality(uh)
            if not _is_pow2(card):
                raise ShapeMismatch("unit cardinality is not a power of two")
            by_class[card.bit_length() - 1] = unit
        if sorted(by_class) != list(range(log_d + 1)):
            raise ShapeMismatch(f"leaf {u} classes are {sorted(by_class)}")
        if h.n_vertices + (1 << (h2 + 1)) - 2 > uh.budget:
            raise TooLarge(f"vertex budget {uh.budget} exhausted")
        frontier = [u]
        for _ in range(h2):
            frontier = [h.add_vertex(v) for v in frontier for _ in range(2)]
        tag = uh.tags.pop(u)
        uh.profiles.pop(u)
        for i, leaf in enumerate(frontier):
            if i > log_d:
                continue
            unit = by_class[i]
            chain = []
            v = leaf
            while v != u:
                chain.append(v)
                v = h.parent[v]
            for step in reversed(chain):
                for eid in unit.members:
                    h.extend_edge(eid, step)
            uh.profiles[leaf] = [Unit(list(unit.members), h2)]
            uh.tags[leaf] = tag
    return uh


def weak_equalize(uh: UnitHypergraph) -> UnitHypergraph:
    """Halve each leaf's single unit down to one edge per branch, so every full
    branch ends exactly one bottom edge of size log d + 1 + floor(log log d)."""
    for u in uh.leaves_with(ACTIVE):
        if len(uh.profiles[u]) != 1:
            raise ShapeMismatch(f"leaf {u} should end exactly one unit")
        frontier = [u]
        while frontier:
            nxt = []
            for f in frontier:
                if uh.profiles[f][0].cardinality(uh) > 1:
                    nxt.extend(uh.halve_unit(f, 0))
            frontier = nxt
    return uh


def build_weak(n: int, budget: int | None = None) -> TreeHypergraph:
    """n-uniform hypergraph with maximum degree <= 2^(n+1)/n and every full
    branch covered, by the three-stage weak pipeline."""
    if n not in (4, 8, 16):
        raise OutOfRange(f"n must be one of 4, 8, 16; got {n}")
    d = (1 << n) // n
    uh = weak_pipeline(d, budget=budget)
    log_d = uh.log_d
    h2 = log_d.bit_length() - 1
    assert log_d + 1 + h2 == n, "size arithmetic must close for the guarded n"
    return uh.collapse_to_uniform(n)


def weak_pipeline(d: int, budget: int | None = None) -> UnitHypergraph:
    uh = weak_lemma_first(d, budget=budget)
    weak_attach_power(uh)
    weak_equalize(uh)
    return uh
