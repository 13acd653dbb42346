"""makerforge: a workbench for Maker-Breaker games on tree-path hypergraphs.

Builds the extremal Erdos-Selfridge boards, the maximum-neighborhood
counterexample family, and the low-maximum-degree Maker-win pipelines (explicit
and symbolic); plays and solves the games; and 2-colors bounded-degree boards.
"""

from .constructions import es_extremal_tree, neighborhood_census, theorem1_counterexample
from .errors import MakerforgeError
from .game import (
    breaker_potential_strategy,
    breaker_random_strategy,
    maker_tree_strategy,
    minimax_value,
    play_match,
    verify_maker_wins,
)
from .strong import audit_strong, audit_strong_sweep, build_strong
from .symbolic import symbolic_run
from .tree_model import TreeHypergraph, from_document, load, store, to_document
from .units import build_staircase, build_weak

__version__ = "1.0.0"

__all__ = [
    "MakerforgeError",
    "TreeHypergraph",
    "audit_strong",
    "audit_strong_sweep",
    "breaker_potential_strategy",
    "breaker_random_strategy",
    "build_staircase",
    "build_strong",
    "build_weak",
    "es_extremal_tree",
    "from_document",
    "load",
    "maker_tree_strategy",
    "minimax_value",
    "neighborhood_census",
    "play_match",
    "store",
    "symbolic_run",
    "theorem1_counterexample",
    "to_document",
    "verify_maker_wins",
]
