"""Maker/Breaker referee, strategies, and an exact minimax oracle.

Maker moves first and wins by owning every vertex of some hyperedge; Breaker
wins once the whole board is claimed without that happening.  Multiplicities
are irrelevant to play, so the referee collapses the edge multiset to its
distinct vertex supports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import EmptyBoard, IllegalMove, MakerforgeError, NoSafeChild, TooLarge
from .tree_model import TreeHypergraph

MAKER = "maker"
BREAKER = "breaker"


def _supports(h: TreeHypergraph):
    """Distinct edge supports with a representative edge id, cached on h."""
    cached = getattr(h, "_game_supports", None)
    if cached is not None:
        return cached
    seen: dict[frozenset, int] = {}
    for i in range(len(h.edges)):
        sup = h.edge_support(i)
        seen.setdefault(sup, i)
    sups = [(sup, rep) for sup, rep in seen.items()]
    by_vertex: dict[int, list[int]] = {}
    for k, (sup, _rep) in enumerate(sups):
        for v in sup:
            by_vertex.setdefault(v, []).append(k)
    h._game_supports = (sups, by_vertex)
    return h._game_supports


class GameState:
    def __init__(self, h: TreeHypergraph):
        if not h.frozen:
            h = h.freeze()
        self.h = h
        self.maker_set: set[int] = set()
        self.breaker_set: set[int] = set()
        self.unclaimed: set[int] = set(range(h.n_vertices))
        self.to_move = MAKER
        self.status = "ongoing"
        self.winning_edge: int | None = None

    def claim(self, vertex: int) -> None:
        if self.status != "ongoing":
            raise IllegalMove("game is over")
        if vertex not in self.unclaimed:
            raise IllegalMove(f"vertex {vertex!r} is not available")
        self.unclaimed.discard(vertex)
        if self.to_move == MAKER:
            self.maker_set.add(vertex)
            self._check_maker_win(vertex)
            self.to_move = BREAKER
        else:
            self.breaker_set.add(vertex)
            self.to_move = MAKER
        if self.status == "ongoing" and not self.unclaimed:
            self.status = "breaker_win"

    def _check_maker_win(self, vertex: int) -> None:
        sups, by_vertex = _supports(self.h)
        for k in by_vertex.get(vertex, ()):
            sup, rep = sups[k]
            if sup <= self.maker_set:
                self.status = "maker_win"
                self.winning_edge = rep
                return


@dataclass
class Transcript:
    moves: list = field(default_factory=list)
    winner: str | None = None
    seed: int | None = None
    forfeited_by: str | None = None
    winning_edge: int | None = None

    def to_json(self) -> dict:
        return {
            "moves": [[role, v] for role, v in self.moves],
            "winner": self.winner,
            "seed": self.seed,
            "forfeited_by": self.forfeited_by,
            "winning_edge": self.winning_edge,
        }


def play_match(h: TreeHypergraph, maker, breaker, seed: int = 0) -> Transcript:
    """Referee one match; an illegal strategy move forfeits to the opponent."""
    if h.n_vertices < 1:
        raise EmptyBoard("hypergraph has no vertices")
    state = GameState(h)
    rng = random.Random(seed)
    t = Transcript(seed=seed)
    while state.status == "ongoing":
        role = state.to_move
        strategy = maker if role == MAKER else breaker
        try:
            vertex = strategy(state, rng)
            state.claim(vertex)
        except (IllegalMove, NoSafeChild) as exc:
            t.forfeited_by = role
            t.winner = BREAKER if role == MAKER else MAKER
            t.moves.append([role, f"forfeit:{exc}"])
            return t
        t.moves.append([role, vertex])
    t.winner = MAKER if state.status == "maker_win" else BREAKER
    t.winning_edge = state.winning_edge
    return t


# --- strategies ---


def _require_class_c(h: TreeHypergraph) -> None:
    ok = getattr(h, "_class_c_ok", None)
    if ok is None:
        ok = not h.validate_class_c()
        h._class_c_ok = ok
    if not ok:
        raise MakerforgeError("maker_tree_strategy requires a class-C hypergraph")


def maker_tree_strategy(state: GameState, rng=None) -> int:
    """Claim the root, then walk into the child whose subtree is Breaker-free."""
    h = state.h
    _require_class_c(h)
    root = h.root()
    if root not in state.maker_set:
        return root
    cur = root
    while True:
        nxt = [c for c in h.children[cur] if c in state.maker_set]
        if not nxt:
            break
        cur = nxt[0]
    safe = [
        c
        for c in h.children[cur]
        if c in state.unclaimed
        and not any(h.is_ancestor_or_self(c, b) for b in state.breaker_set)
    ]
    if safe:
        return min(safe)
    if not h.children[cur]:
        # walk reached a leaf without completing an edge (uncovered branch);
        # nothing principled left to do, take the lowest free vertex
        return min(state.unclaimed)
    raise NoSafeChild(f"both subtrees below {cur} contain Breaker vertices")


def random_strategy(state: GameState, rng) -> int:
    if not state.unclaimed:
        raise EmptyBoard("no unclaimed vertex")
    return rng.choice(sorted(state.unclaimed))


breaker_random_strategy = random_strategy
random_maker_strategy = random_strategy


def breaker_potential_strategy(state: GameState, rng=None) -> int:
    """Erdos-Selfridge rule: maximize the total 2^-(unclaimed) weight of alive
    edges through the chosen vertex; ties go to the lowest vertex id."""
    if not state.unclaimed:
        raise EmptyBoard("no unclaimed vertex")
    sups, _by_vertex = _supports(state.h)
    score: dict[int, int] = {v: 0 for v in state.unclaimed}
    cap = max((len(s) for s, _ in sups), default=0)
    for sup, _rep in sups:
        if sup & state.breaker_set:
            continue
        open_vs = sup & state.unclaimed
        if not open_vs:
            continue
        w = 1 << (cap - len(open_vs)) if cap >= len(open_vs) else 0
        for v in open_vs:
            score[v] += w
    best = max(score.values())
    return min(v for v, s in score.items() if s == best)


# --- exact oracle ---


def minimax_value(h: TreeHypergraph, vertex_budget: int = 24) -> str:
    """Exact game value under optimal play, 'maker_win' or 'breaker_win'."""
    if h.n_vertices > vertex_budget:
        raise TooLarge(f"{h.n_vertices} vertices exceed the oracle budget {vertex_budget}")
    masks = _support_masks(h)
    full = (1 << h.n_vertices) - 1
    memo: dict[tuple[int, int], bool] = {}
    return "maker_win" if _maker_wins(masks, 0, 0, True, full, memo) else "breaker_win"


def _support_masks(h: TreeHypergraph) -> list[int]:
    if not h.frozen:
        h.freeze()
    out = set()
    for i in range(len(h.edges)):
        m = 0
        for v in h.edge_support(i):
            m |= 1 << v
        out.add(m)
    return sorted(out)


def _maker_wins(masks, maker, breaker, maker_to_move, full, memo) -> bool:
    key = (maker, breaker)
    hit = memo.get(key)
    if hit is not None:
        return hit
    alive = [m for m in masks if not (m & breaker)]
    result = None
    for m in alive:
        if m & ~maker == 0:
            result = True
            break
    if result is None and not alive:
        result = False
    if result is None and (maker | breaker) == full:
        result = False
    if result is None:
        free = full & ~(maker | breaker)
        moves = []
        f = free
        while f:
            bit = f & -f
            moves.append(bit)
            f ^= bit
        if maker_to_move:
            result = any(
                _maker_wins(masks, maker | b, breaker, False, full, memo) for b in moves
            )
        else:
            result = all(
                _maker_wins(masks, maker, breaker | b, True, full, memo) for b in moves
            )
    memo[key] = result
    return result


def optimal_breaker_strategy(h: TreeHypergraph, vertex_budget: int = 24):
    """Strategy closure playing minimax-optimal Breaker moves."""
    if h.n_vertices > vertex_budget:
        raise TooLarge(f"{h.n_vertices} vertices exceed the oracle budget {vertex_budget}")
    masks = _support_masks(h)
    full = (1 << h.n_vertices) - 1
    memo: dict[tuple[int, int], bool] = {}

    def strategy(state: GameState, rng=None) -> int:
        maker = sum(1 << v for v in state.maker_set)
        breaker = sum(1 << v for v in state.breaker_set)
        best_v, best_val = None, None
        for v in sorted(state.unclaimed):
            val = _maker_wins(masks, maker, breaker | (1 << v), True, full, memo)
            if not val:
                return v
            if best_v is None:
                best_v, best_val = v, val
        return best_v

    return strategy


def verify_maker_wins(h: TreeHypergraph, adversaries, trials: int = 1, base_seed: int = 0) -> dict:
    """Play the tree strategy against each adversary over `trials` seeds.

    `adversaries` is a list of (name, strategy) pairs.  Reports per-adversary
    wins and game lengths; flags (without asserting) a failed branch audit.
    """
    audit = h.audit_branches()
    report = {
        "every_branch_covered": audit.every_branch_covered,
        "adversaries": {},
        "all_maker_wins": True,
    }
    for name, adversary in adversaries:
        wins = 0
        lengths = []
        for t in range(trials):
            tr = play_match(h, maker_tree_strategy, adversary, seed=base_seed + t)
            if tr.winner == MAKER:
                wins += 1
            lengths.append(len(tr.moves))
        report["adversaries"][name] = {
            "trials": trials,
            "maker_wins": wins,
            "min_length": min(lengths),
            "max_length": max(lengths),
        }
        if wins != trials:
            report["all_maker_wins"] = False
    return report
