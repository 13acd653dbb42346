"""The 2^(n-1)/n maximum-degree pipeline and its exact inequality auditor.

Starting from a staircase of log d units (d = 2^(n-2)/n), each step splits the
active branch class in two: the w-side is certified against property P (its
first log d sorted unit lengths stay below (1-c) log d) and frozen, while the
v-side is repartitioned into power-0 units and re-extended to a full staircase.
The finish stage cuts every frozen class at (1-c/4) log d units, re-extends the
short side, and asserts the collapse inequality k + floor(log l) >= n-log d-1
on every terminal class.

Every inequality the construction relies on is recorded with its exact margin;
`strict` turns violations into exceptions, otherwise the run continues and
reports the first violation.  The symbolic backend audits astronomically large
n; the explicit one materializes real trees and only fits toy parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InsufficientUnits,
    MixedPower,
    OutOfRange,
    PropertyPViolation,
    ShapeMismatch,
    TooLarge,
    UnitTooLong,
)
from .symbolic import ACTIVE, SymbolicState, sym_staircase
from .tree_model import vertex_budget
from .units import build_staircase


def _safe_float(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.inf if x > 0 else -math.inf


@dataclass
class StrongParams:
    n: int
    c: Fraction = Fraction(1, 8)
    strict: bool = True
    budget: int | None = None
    record: list = field(default_factory=list)

    def __post_init__(self):
        n = self.n
        if n < 16 or n & (n - 1):
            raise OutOfRange(f"n must be a power of two >= 16, got {n}")
        d, rem = divmod(1 << (n - 2), n)
        if rem or d & (d - 1):
            raise OutOfRange(f"2^(n-2)/n is not a power of two for n={n}")
        self.d = d
        self.log_d = d.bit_length() - 1
        if self.log_d % 2:
            raise OutOfRange(f"log d = {self.log_d} must be even for the phase split")
        self.c = Fraction(self.c)
        if not (0 < self.c < 1):
            raise OutOfRange(f"c must lie in (0, 1), got {self.c}")

    @property
    def target(self) -> int:
        """Collapse threshold n - log d - 1 (equals log n + 1 here)."""
        return self.n - self.log_d - 1

    @property
    def keep_units(self) -> int:
        """Units kept per frozen class at the finish: 2 log d - 6."""
        return 2 * self.log_d - 6

    @property
    def finish_cut(self) -> int:
        """Finish cut position floor((1 - c/4) log d)."""
        return int((1 - self.c / 4) * self.log_d)

    @property
    def finish_r(self) -> int:
        """Staircase offset floor((1 - c) log d) + 1 for the final v-extension."""
        return int((1 - self.c) * self.log_d) + 1


def _record(params: StrongParams, name: str, where: str, ok, margin,
            err_cls, message: str) -> None:
    params.record.append(
        {"name": name, "where": where, "ok": bool(ok), "margin": _safe_float(margin)}
    )
    if not ok and params.strict:
        raise err_cls(f"{where}: {message}")


def _check_shape(state, tag: str, expected: int, where: str) -> None:
    for key, runs, _bits in state.profile_runs(tag):
        got = sum(c for _L, _k, c in runs)
        if got != expected:
            raise ShapeMismatch(f"{where}: class {key} has {got} units, expected {expected}")


def _freeze_side(state, tag: str, params: StrongParams, where: str) -> None:
    """Repartition to power 0, sort, check property P, and mark frozen."""
    state.repartition(tag)
    state.sort_profiles(tag)
    bound = (1 - params.c) * params.log_d
    for key, runs, _bits in state.profile_runs(tag):
        need = params.log_d
        length = None
        for L, _k, c in runs:  # sorted ascending
            if need <= c:
                length = L
                break
            need -= c
        if length is None:
            raise ShapeMismatch(f"{where}: class {key} has fewer than log d units")
        _record(
            params, "property-P", where, Fraction(length) <= bound, bound - length,
            PropertyPViolation,
            f"unit length {length} exceeds (1-c) log d = {bound}",
        )
    state.retag(tag, "frozen")


def _checked_extend(state, tag: str, r: int, s: int, params: StrongParams,
                    where: str) -> None:
    for _key, runs, _bits in state.profile_runs(tag):
        longest = max((L for L, _k, _c in runs), default=0)
        _record(
            params, "extend-precondition", where, longest <= r, r - longest,
            UnitTooLong, f"unit length {longest} exceeds the staircase offset r={r}",
        )
    if isinstance(state, SymbolicState):
        state.extend_rounds(tag, r, s, enforce=False)
    else:
        state.extend_rounds(tag, r, s)


def _ledger(state, params: StrongParams, where: str) -> None:
    md = state.max_degree()
    params.record.append({
        "name": "degree-ledger",
        "where": where,
        "ok": md <= 2 * params.d,
        "margin": _safe_float(2 * params.d - md),
    })


def strong_phase1_step(state, i: int, params: StrongParams):
    log_d = params.log_d
    if not (0 <= i <= log_d // 2 - 2):
        raise ShapeMismatch(f"phase-1 index {i} outside 0..{log_d // 2 - 2}")
    where = f"phase1[i={i}]"
    _check_shape(state, ACTIVE, log_d + i, where)
    state.cut_split(ACTIVE, i + 2, tags=("v-side", "w-side"))
    _freeze_side(state, "w-side", params, where)
    state.repartition("v-side")
    _checked_extend(state, "v-side", i + 3, log_d, params, where)
    state.retag("v-side", ACTIVE)
    _ledger(state, params, where)
    return state


def strong_phase2_step(state, i: int, params: StrongParams):
    log_d = params.log_d
    if not (log_d // 2 - 1 <= i <= log_d - 7):
        raise ShapeMismatch(f"phase-2 index {i} outside {log_d // 2 - 1}..{log_d - 7}")
    where = f"phase2[i={i}]"
    _check_shape(state, ACTIVE, log_d + i, where)
    state.cut_split(ACTIVE, i + 3, tags=("v-side", "w-side"))
    _freeze_side(state, "w-side", params, where)
    state.repartition("v-side")
    _checked_extend(state, "v-side", i + 5, log_d, params, where)
    state.retag("v-side", ACTIVE)
    _ledger(state, params, where)
    return state


def strong_finish(state, params: StrongParams):
    """Cut every frozen class at (1 - c/4) log d of its first 2 log d - 6 units,
    re-extend the short side, and check the collapse inequality on both sides."""
    p = params
    where = "finish"
    M, K = p.keep_units, p.finish_cut
    state.sort_profiles("frozen")
    for key, runs, _bits in state.profile_runs("frozen"):
        count = sum(c for _L, _k, c in runs)
        _record(
            p, "finish-unit-count", where, count >= M, count - M,
            InsufficientUnits, f"class {key} has {count} < {M} units",
        )
    c2 = p.c / 4 - Fraction(6, p.log_d)  # the computed positive slack constant
    w_count = M - K
    _record(
        p, "finish-w-count", where,
        w_count >= (1 + c2) * p.log_d, w_count - (1 + c2) * p.log_d,
        InsufficientUnits,
        f"w-side keeps {w_count} units, below (1+c'') log d with c''={c2}",
    )
    state.cut_split("frozen", K, M, tags=("final-v", "final-w"))
    state.repartition("final-v")
    _checked_extend(state, "final-v", p.finish_r, p.log_d + 1, p, where)
    for side in ("final-v", "final-w"):
        for key, runs, _bits in state.profile_runs(side):
            powers = {k for _L, k, _c in runs}
            if len(powers) != 1:
                raise MixedPower(f"{where}: class {key} mixes powers {sorted(powers)}")
            k = powers.pop()
            l = sum(c for _L, _k, c in runs)
            margin = k + (l.bit_length() - 1) - p.target
            _record(
                p, "observation", f"{where}:{side}", margin >= 0, margin,
                InsufficientUnits,
                f"class {key}: k={k}, l={l} misses the collapse threshold by {-margin}",
            )
    _ledger(state, p, where)
    state.retag("final-v", "terminal")
    state.retag("final-w", "terminal")
    return state


def _depth_estimate(params: StrongParams) -> int:
    """Tree depth of the fully materialized pipeline (leaves ~ 2^depth)."""
    log_d = params.log_d
    depth = log_d
    for i in range(0, log_d // 2 - 1):
        depth += 1 + (log_d - (i + 3))
    for i in range(log_d // 2 - 1, log_d - 6):
        depth += 1 + (log_d - (i + 5))
    depth += 1 + (log_d + 1 - params.finish_r)  # finish split + extension
    depth += params.target + log_d  # collapse merging and halving, upper bound
    return depth


def build_strong(n: int, c=Fraction(1, 8), backend: str = "symbolic",
                 budget: int | None = None, strict: bool | None = None):
    """Run the full pipeline.  The symbolic backend returns the audit report
    (certification or the first violated inequality); the explicit backend
    returns the materialized uniform hypergraph when it fits the budget."""
    if backend not in ("symbolic", "explicit"):
        raise OutOfRange(f"unknown backend {backend!r}")
    explicit = backend == "explicit"
    params = StrongParams(
        n=n, c=Fraction(c), strict=explicit if strict is None else strict,
        budget=budget,
    )
    log_d = params.log_d
    if explicit:
        cap = vertex_budget() if budget is None else budget
        depth = _depth_estimate(params)
        if depth + 1 >= cap.bit_length():
            raise TooLarge(
                f"explicit build would reach about 2^{depth} leaves, "
                f"far beyond the vertex budget {cap}"
            )
        state = build_staircase(log_d, params.d, budget=cap)
    else:
        state = sym_staircase(log_d, params.d)
    for i in range(0, log_d // 2 - 1):
        strong_phase1_step(state, i, params)
    for i in range(log_d // 2 - 1, log_d - 6):
        strong_phase2_step(state, i, params)
    _freeze_side(state, ACTIVE, params, "phase2[final]")
    strong_finish(state, params)
    certified = all(r["ok"] for r in params.record)
    if explicit:
        state.collapse_to_uniform(n)
        return state.h
    if certified:
        state.collapse(n, tag="terminal")
    return _report(state, params, certified)


def _report(state: SymbolicState, params: StrongParams, certified: bool) -> dict:
    first = next((r for r in params.record if not r["ok"]), None)
    tags: dict[str, int] = {}
    for cls in state.classes:
        tags[cls.tag] = tags.get(cls.tag, 0) + 1
    return {
        "n": params.n,
        "c": str(params.c),
        "log_d": params.log_d,
        "certified": certified,
        "first_violation": first,
        "inequalities": params.record,
        "class_counts": tags,
        "max_degree_bits": state.max_degree().bit_length(),
        "degree_ledger_ok": all(
            r["ok"] for r in params.record if r["name"] == "degree-ledger"
        ),
        "covered": state.covered(),
    }


def audit_strong(n: int, c=Fraction(1, 8)) -> dict:
    """Non-raising symbolic audit: all inequality margins for one (n, c)."""
    return build_strong(n, c=c, backend="symbolic", strict=False)


def audit_strong_sweep(ns=(64, 256, 1024, 4096),
                       cs=(Fraction(1, 16), Fraction(1, 8), Fraction(1, 4), Fraction(3, 8))) -> dict:
    """Audit every (n, c) combination and report the minimal certified pair."""
    runs = []
    minimal = None
    for n in ns:
        for c in cs:
            rep = audit_strong(n, c)
            summary = {
                "n": n,
                "c": str(Fraction(c)),
                "certified": rep["certified"],
                "first_violation": rep["first_violation"],
                "degree_ledger_ok": rep["degree_ledger_ok"],
                "max_degree_bits": rep["max_degree_bits"],
            }
            runs.append(summary)
            if rep["certified"] and minimal is None:
                minimal = {"n": n, "c": str(Fraction(c))}
    return {"runs": runs, "minimal_certified": minimal}
