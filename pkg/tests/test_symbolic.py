"""Symbolic unit calculus and its equivalence with the explicit backend."""

import json

import pytest
from conftest import gen_random_pipeline
from hypothesis import given, settings
from hypothesis import strategies as st

from makerforge.errors import (
    InsufficientUnits,
    MixedPower,
    OutOfRange,
    ShapeMismatch,
    SingletonUnit,
    UnitTooLong,
)
from makerforge.symbolic import (
    ACTIVE,
    LeafClass,
    SymbolicState,
    pipeline_report,
    run_pipeline,
    sym_build_weak,
    sym_staircase,
    sym_weak_first,
    symbolic_run,
)
from makerforge.units import build_weak


def equivalent(steps, d, budget=None):
    sym = pipeline_report(run_pipeline(steps, d, backend="symbolic"))
    exp = pipeline_report(run_pipeline(steps, d, backend="explicit", budget=budget))
    assert sym["max_degree"] == exp["max_degree"]
    assert sym["covered"] == exp["covered"]
    assert sym["class_table"] == exp["class_table"]


class TestLeafClass:
    def test_counters(self):
        cls = LeafClass([(2, 0, 3), (3, 1, 1)], ACTIVE, leaf_exp=5, leaf_mul=3)
        assert cls.leafs() == 96
        assert cls.leaf_bits() == 6
        assert cls.unit_count() == 4
        assert cls.covered()

    def test_coverage(self):
        assert not LeafClass([], ACTIVE).covered()
        assert LeafClass([], ACTIVE, covered_above=True).covered()


class TestSymbolicOps:
    def test_bad_d(self):
        with pytest.raises(OutOfRange):
            SymbolicState(5)

    def test_staircase_runs(self):
        st_ = sym_staircase(3, 8)
        [(_, runs, bits)] = st_.profile_runs(ACTIVE)
        assert runs == [(1, 0, 1), (2, 0, 1), (3, 0, 1)]
        assert bits == 3
        assert st_.max_degree() == 8 + 4 + 2
        with pytest.raises(OutOfRange):
            sym_staircase(0, 8)

    def test_unit_round_too_long(self):
        st_ = sym_staircase(4, 8)
        with pytest.raises(UnitTooLong):
            st_.unit_round()

    def test_extend_guards(self):
        st_ = sym_staircase(2, 8)
        with pytest.raises(OutOfRange):
            st_.extend_rounds(ACTIVE, 3, 2)
        with pytest.raises(UnitTooLong):
            st_.extend_rounds(ACTIVE, 1, 3)
        st_.extend_rounds(ACTIVE, 1, 3, enforce=False)  # audit mode continues

    def test_cut_split_marks_dropped_as_covering(self):
        st_ = sym_staircase(3, 8)
        st_.cut_split(ACTIVE, 1, limit=2, tags=("v", "w"))
        for tag in ("v", "w"):
            [cls] = st_.classes_with(tag)
            assert cls.covered_above

    def test_cut_beyond_count_takes_everything(self):
        st_ = sym_staircase(2, 8)
        st_.cut_split(ACTIVE, 5, limit=7, tags=("v", "w"))
        [v] = st_.classes_with("v")
        assert v.runs == [(2, 1, 1), (3, 1, 1)]
        [w] = st_.classes_with("w")
        assert w.runs == []
        assert not st_.covered()  # the empty w class covers nothing

    def test_split_prefix_shortfall(self):
        st_ = sym_staircase(2, 8)
        with pytest.raises(ShapeMismatch):
            st_._split_prefix(st_.classes[0].runs, 5)

    def test_repartition_singleton(self):
        st_ = SymbolicState(4)
        st_.classes = [LeafClass([(4, 1, 1)], ACTIVE)]
        with pytest.raises(SingletonUnit):
            st_.repartition(ACTIVE)

    def test_sort_merges_equal_runs(self):
        st_ = SymbolicState(8)
        st_.classes = [LeafClass([(2, 0, 1), (1, 0, 1), (2, 0, 2)], ACTIVE)]
        st_.sort_profiles(ACTIVE)
        assert st_.classes[0].runs == [(1, 0, 1), (2, 0, 3)]

    def test_collapse_guards(self):
        st_ = sym_staircase(1, 4)
        with pytest.raises(InsufficientUnits):
            st_.collapse(4)
        st_ = SymbolicState(4)
        st_.classes = [LeafClass([(2, 0, 1), (2, 1, 1)], ACTIVE)]
        with pytest.raises(MixedPower):
            st_.collapse(4)

    def test_collapse_counts_leaves(self):
        st_ = sym_staircase(2, 4)
        st_.collapse(4)
        [cls] = st_.classes
        assert cls.runs == [(4, 1, 1)]
        assert cls.leafs() == (4 + 2) << 2  # selected cardinalities times branches

    def test_retag_and_drop(self):
        st_ = sym_staircase(1, 4)
        st_.retag(ACTIVE, "other")
        assert not st_.profile_runs(ACTIVE)
        st_.drop("other")
        assert not st_.covered()


class TestBuilders:
    def test_weak_first(self):
        st_ = sym_weak_first(8)
        [(_, runs, _)] = st_.profile_runs(ACTIVE)
        assert runs == [(L, 0, 1) for L in range(1, 5)]
        assert st_.max_degree() == 15

    def test_build_weak_matches_explicit(self):
        st_ = sym_build_weak(4)
        h = build_weak(4)
        total = sum(cnt for _sig, _tag, cnt in st_.class_table())
        assert total == len(h.edges) == 12
        assert st_.covered()
        with pytest.raises(OutOfRange):
            sym_build_weak(5)

    def test_weak_16_is_symbolically_cheap(self):
        st_ = sym_build_weak(16)
        assert st_.max_degree() <= (1 << 17) // 16
        assert st_.covered()


class TestBackendEquivalence:
    def test_staircases(self):
        for i, d in ((1, 4), (3, 4), (2, 8), (4, 8), (3, 16)):
            equivalent([("staircase", {"i": i})], d)

    def test_weak_pipelines(self):
        for n in (4, 8):
            d = (1 << n) // n
            steps = [("weak_first", {}), ("weak_attach", {}),
                     ("weak_equalize", {}), ("collapse", {"n": n})]
            equivalent(steps, d)

    def test_mixed_pipeline(self):
        steps = [
            ("staircase", {"i": 3}),
            ("cut_split", {"cut": 1, "tags": ["v", "w"]}),
            ("repartition", {"tag": "v"}),
            ("sort", {"tag": "v"}),
            ("extend_rounds", {"tag": "v", "r": 2, "s": 4}),
            ("retag", {"src": "v", "dst": "active"}),
        ]
        equivalent(steps, 16)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_random_pipelines(self, seed):
        steps, d = gen_random_pipeline(seed)
        equivalent(steps, d)

    def test_unknown_step_and_backend(self):
        with pytest.raises(OutOfRange):
            run_pipeline([("nope", {})], 4)
        with pytest.raises(OutOfRange):
            run_pipeline([("staircase", {"i": 1})], 4, backend="quantum")


def test_symbolic_run_is_json_ready():
    report = symbolic_run([("staircase", {"i": 2})], 8)
    text = json.dumps(report)
    back = json.loads(text)
    assert back["backend"] == "symbolic"
    assert back["max_degree"] == 12
    assert back["class_table"] == [
        {"profile": [[1, 0, 8], [2, 0, 4]], "tag": "active", "leaves": 4}]
