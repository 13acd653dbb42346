"""Unit calculus, symbolic backend.

Tracks branch classes instead of materialized vertices: every leaf whose
profile and history agree is represented once, with a big-integer leaf count
and an exact running maximum degree.  Profiles are ordered run lists
(length, power, count); the cardinality of a unit is always
2^(log d + 1 + power - length), so runs determine the class completely.

`run_pipeline` executes the same pipeline description on either backend, which
is how backend equivalence is checked.
"""

from __future__ import annotations

from .errors import (
    InsufficientUnits,
    MixedPower,
    NotPowerOfTwo,
    OutOfRange,
    ShapeMismatch,
    SingletonUnit,
    UnitTooLong,
)
from . import units as _units

ACTIVE = "active"


class LeafClass:
    """Leaf count is stored as leaf_mul * 2^leaf_exp; every pipeline operation
    scales it by a power of two, so leaf_mul only departs from 1 at collapse."""

    __slots__ = ("runs", "leaf_exp", "leaf_mul", "tag", "covered_above")

    def __init__(self, runs, tag, leaf_exp=0, leaf_mul=1, covered_above=False):
        self.runs = runs
        self.leaf_exp = leaf_exp
        self.leaf_mul = leaf_mul
        self.tag = tag
        self.covered_above = covered_above

    def leafs(self) -> int:
        return self.leaf_mul << self.leaf_exp

    def leaf_bits(self) -> int:
        return self.leaf_mul.bit_length() - 1 + self.leaf_exp

    def unit_count(self) -> int:
        return sum(c for _L, _k, c in self.runs)

    def covered(self) -> bool:
        return self.covered_above or bool(self.runs)


class SymbolicState:
    def __init__(self, d: int):
        if d < 2 or d & (d - 1):
            raise OutOfRange(f"d must be a power of two >= 2, got {d}")
        self.d = d
        self.log_d = d.bit_length() - 1
        self.classes: list[LeafClass] = [LeafClass([], ACTIVE)]
        self.max_deg = 0

    # --- helpers ---

    def _card(self, L: int, k: int) -> int:
        exp = self.log_d + 1 + k - L
        if exp < 0:
            raise ShapeMismatch(f"unit (length {L}, power {k}) has no valid cardinality")
        return 1 << exp

    def _sum_cards(self, runs) -> int:
        return sum(c * self._card(L, k) for L, k, c in runs)

    def classes_with(self, tag: str) -> list[LeafClass]:
        return [cls for cls in self.classes if cls.tag == tag]

    def retag(self, src: str, dst: str) -> None:
        for cls in self.classes:
            if cls.tag == src:
                cls.tag = dst

    def drop(self, tag: str) -> None:
        self.classes = [cls for cls in self.classes if cls.tag != tag]

    def max_degree(self) -> int:
        return self.max_deg

    def covered(self) -> bool:
        return bool(self.classes) and all(cls.covered() for cls in self.classes)

    def profile_runs(self, tag: str):
        """(key, ordered (length, power, count) runs, leaf-count bit length)."""
        return [(i, cls.runs, cls.leaf_bits()) for i, cls in enumerate(self.classes)
                if cls.tag == tag]

    def class_table(self) -> list[tuple]:
        groups: dict[tuple, int] = {}
        for cls in self.classes:
            sig = []
            for L, k, c in cls.runs:
                sig.extend(((L, k, self._card(L, k)),) * c)
            key = (tuple(sig), cls.tag)
            groups[key] = groups.get(key, 0) + cls.leafs()
        return sorted((sig, tag, cnt) for (sig, tag), cnt in groups.items())

    # --- bulk operations, mirroring the explicit backend ---

    def unit_round(self, tag: str = ACTIVE) -> None:
        for cls in self.classes_with(tag):
            for L, _k, _c in cls.runs:
                if L > self.log_d:
                    raise UnitTooLong(f"unit of length {L} exceeds log d = {self.log_d}")
            total = self._sum_cards(cls.runs)
            cls.runs = [(1, 0, 1)] + [(L + 1, k, c) for L, k, c in cls.runs]
            cls.leaf_exp += 1
            child_deg = self.d + total // 2
            if child_deg > self.max_deg:
                self.max_deg = child_deg

    def extend_rounds(self, tag: str, r: int, s: int, enforce: bool = True) -> None:
        if not (r <= s <= self.log_d + 1):
            raise OutOfRange(f"need r <= s <= log d + 1, got r={r}, s={s}")
        t = s - r
        if t == 0:
            return
        for cls in self.classes_with(tag):
            if enforce:
                for L, _k, _c in cls.runs:
                    if L > r:
                        raise UnitTooLong(f"unit of length {L} exceeds r={r}")
            s0 = self._sum_cards(cls.runs)
            # leaf degree after round j is 2d - 2^(log d + 1 - j) + s0 / 2^j,
            # monotone in j since the increments share one sign
            def deg_after(j: int) -> int:
                return 2 * self.d - (1 << (self.log_d + 1 - j)) + (s0 >> j)

            self.max_deg = max(self.max_deg, deg_after(1), deg_after(t))
            cls.runs = [(x, 0, 1) for x in range(1, t + 1)] + [
                (L + t, k, c) for L, k, c in cls.runs
            ]
            cls.leaf_exp += t

    def _split_prefix(self, runs, count):
        """(runs for the first `count` units, runs for the rest)."""
        first, rest = [], []
        need = count
        for L, k, c in runs:
            if need >= c:
                first.append((L, k, c))
                need -= c
            elif need > 0:
                first.append((L, k, need))
                rest.append((L, k, c - need))
                need = 0
            else:
                rest.append((L, k, c))
        if need:
            raise ShapeMismatch(f"profile has fewer than {count} units")
        return first, rest

    def cut_split(self, tag: str, cut: int, limit: int | None = None,
                  tags: tuple[str, str] = ("v", "w")) -> None:
        out: list[LeafClass] = []
        for cls in self.classes:
            if cls.tag != tag:
                out.append(cls)
                continue
            total = cls.unit_count()
            lim = total if limit is None else min(limit, total)
            first, rest = self._split_prefix(cls.runs, min(cut, lim))
            kept, dropped = self._split_prefix(rest, lim - min(cut, lim))
            covered = cls.covered_above or bool(dropped)
            for side_runs, side_tag in ((first, tags[0]), (kept, tags[1])):
                lifted = [(L + 1, k + 1, c) for L, k, c in side_runs]
                child = LeafClass(lifted, side_tag, cls.leaf_exp, cls.leaf_mul, covered)
                self.max_deg = max(self.max_deg, self._sum_cards(lifted))
                out.append(child)
        self.classes = out

    def repartition(self, tag: str) -> None:
        for cls in self.classes_with(tag):
            runs = []
            for L, k, c in cls.runs:
                if k >= 1:
                    if self.log_d + 1 + k - L < 1:
                        raise SingletonUnit("cannot halve a unit of cardinality 1")
                    runs.append((L, k - 1, 2 * c))
                else:
                    runs.append((L, k, c))
            cls.runs = runs

    def sort_profiles(self, tag: str) -> None:
        for cls in self.classes_with(tag):
            merged: list[tuple[int, int, int]] = []
            for L, k, c in sorted(cls.runs):
                if merged and merged[-1][0] == L and merged[-1][1] == k:
                    merged[-1] = (L, k, merged[-1][2] + c)
                else:
                    merged.append((L, k, c))
            cls.runs = merged

    def collapse(self, n: int, tag: str | None = None) -> "SymbolicState":
        target = n - self.log_d - 1
        for cls in self.classes:
            if tag is not None and cls.tag != tag:
                continue
            powers = {k for _L, k, _c in cls.runs}
            if len(powers) != 1:
                raise MixedPower(f"class mixes unit powers {sorted(powers)}")
            k = powers.pop()
            l = cls.unit_count()
            if k + (l.bit_length() - 1) < target:
                raise InsufficientUnits(
                    f"k={k}, l={l}: k + floor(log l) = {k + l.bit_length() - 1} < {target}"
                )
            s = target - k
            selected, _rest = self._split_prefix(cls.runs, 1 << s)
            cls.leaf_mul *= self._sum_cards(selected)
            cls.runs = [(n, target, 1)]
        return self


# --- symbolic twins of the bespoke builders ---


def sym_staircase(i: int, d: int) -> SymbolicState:
    log_d = d.bit_length() - 1
    if i < 1 or i > log_d + 1:
        raise OutOfRange(f"need 1 <= i <= log d + 1, got {i}")
    st = SymbolicState(d)
    for _ in range(i):
        st.unit_round()
    return st


def sym_weak_first(d: int) -> SymbolicState:
    st = SymbolicState(d)
    log_d = st.log_d
    st.classes = [LeafClass([(L, 0, 1) for L in range(1, log_d + 2)], ACTIVE,
                            leaf_exp=log_d)]
    st.max_deg = 2 * d - 1  # leaves end 2^0 + ... + 2^log d = 2d - 1 edge copies
    return st


def sym_weak_attach(st: SymbolicState) -> SymbolicState:
    log_d = st.log_d
    h2 = log_d.bit_length() - 1 if log_d >= 1 else 0
    out: list[LeafClass] = []
    for cls in st.classes:
        if cls.tag != ACTIVE:
            out.append(cls)
            continue
        if cls.unit_count() != log_d + 1:
            raise ShapeMismatch(f"expected {log_d + 1} units, found {cls.unit_count()}")
        by_class = {}
        for L, k, c in cls.runs:
            if c != 1 or k != 0:
                raise ShapeMismatch("profile is not a first-stage weak profile")
            by_class[st.log_d + 1 - L] = L
        if sorted(by_class) != list(range(log_d + 1)):
            raise ShapeMismatch(f"unit classes are {sorted(by_class)}")
        for i in range(1 << h2):
            if i > log_d:
                continue
            out.append(LeafClass([(by_class[i] + h2, h2, 1)], ACTIVE,
                                 cls.leaf_exp, cls.leaf_mul, True))
        # interior vertices of the attached trees cover contiguous class blocks
        for t in range(1, h2 + 1):
            width = 1 << (h2 - t)
            hi = min(1 << h2, log_d + 1)
            lo = hi - width
            block = sum(1 << i for i in range(max(lo, 0), hi))
            if block > st.max_deg:
                st.max_deg = block
    st.classes = out
    return st


def sym_weak_equalize(st: SymbolicState) -> SymbolicState:
    for cls in st.classes_with(ACTIVE):
        if cls.unit_count() != 1:
            raise ShapeMismatch("each branch should end exactly one unit")
        L, k, _c = cls.runs[0]
        i = st.log_d + 1 + k - L  # log cardinality
        cls.runs = [(L + i, k, 1)]
        cls.leaf_exp += i
    return st


def sym_build_weak(n: int) -> SymbolicState:
    if n not in (4, 8, 16):
        raise OutOfRange(f"n must be one of 4, 8, 16; got {n}")
    d = (1 << n) // n
    st = sym_weak_first(d)
    sym_weak_attach(st)
    sym_weak_equalize(st)
    return st.collapse(n)


# --- pipeline executor shared by both backends ---


def run_pipeline(steps, d: int, backend: str = "symbolic", budget: int | None = None):
    """Execute a pipeline description on the chosen backend.

    Steps are (name, kwargs) pairs; the first step must be a builder
    (staircase or weak_first).  Returns the final state.
    """
    symbolic = backend == "symbolic"
    if backend not in ("symbolic", "explicit"):
        raise OutOfRange(f"unknown backend {backend!r}")
    state = None
    for name, kwargs in steps:
        if name == "staircase":
            state = (sym_staircase(kwargs["i"], d) if symbolic
                     else _units.build_staircase(kwargs["i"], d, budget=budget))
        elif name == "weak_first":
            state = (sym_weak_first(d) if symbolic
                     else _units.weak_lemma_first(d, budget=budget))
        elif name == "weak_attach":
            state = sym_weak_attach(state) if symbolic else _units.weak_attach_power(state)
        elif name == "weak_equalize":
            state = sym_weak_equalize(state) if symbolic else _units.weak_equalize(state)
        elif name == "unit_round":
            state.unit_round(kwargs.get("tag", ACTIVE))
        elif name == "extend_rounds":
            state.extend_rounds(kwargs.get("tag", ACTIVE), kwargs["r"], kwargs["s"])
        elif name == "cut_split":
            state.cut_split(kwargs.get("tag", ACTIVE), kwargs["cut"],
                            kwargs.get("limit"), tuple(kwargs.get("tags", ("v", "w"))))
        elif name == "repartition":
            state.repartition(kwargs.get("tag", ACTIVE))
        elif name == "sort":
            state.sort_profiles(kwargs.get("tag", ACTIVE))
        elif name == "retag":
            state.retag(kwargs["src"], kwargs["dst"])
        elif name == "collapse":
            if symbolic:
                state.collapse(kwargs["n"], kwargs.get("tag"))
            else:
                state.collapse_to_uniform(kwargs["n"], kwargs.get("tag"))
        else:
            raise OutOfRange(f"unknown pipeline step {name!r}")
    return state


def pipeline_report(state) -> dict:
    """Backend-independent summary used for equivalence checks."""
    if isinstance(state, SymbolicState):
        return {
            "backend": "symbolic",
            "max_degree": state.max_degree(),
            "covered": state.covered(),
            "class_table": state.class_table(),
        }
    max_deg = getattr(state, "pre_removal_max_degree", None)
    if max_deg is None:
        max_deg = state.max_degree()
    return {
        "backend": "explicit",
        "max_degree": max_deg,
        "covered": state.covered(),
        "class_table": state.class_table(),
    }


def symbolic_run(steps, d: int) -> dict:
    """Run a pipeline symbolically and return its JSON-ready report."""
    state = run_pipeline(steps, d, backend="symbolic")
    report = pipeline_report(state)
    report["class_table"] = [
        {"profile": [list(u) for u in sig], "tag": tag, "leaves": cnt}
        for sig, tag, cnt in report["class_table"]
    ]
    return report
