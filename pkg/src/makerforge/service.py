"""HTTP game service: play Breaker against the tree strategy over JSON.

Versioned under /v1.  Games live in an in-memory table with per-game locks;
Maker always follows maker_tree_strategy and moves first.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .constructions import es_extremal_tree, theorem1_counterexample
from .errors import MakerforgeError, NoSafeChild
from .game import BREAKER, MAKER, GameState, maker_tree_strategy
from .tree_model import TreeHypergraph, to_document
from .units import build_weak

_BUILDERS = {
    "es": es_extremal_tree,
    "theorem1": theorem1_counterexample,
    "weak": build_weak,
}


class CreateGame(BaseModel):
    construction: str
    n: int
    seed: int = 0


class BreakerMove(BaseModel):
    vertex: int


class _Game:
    def __init__(self, h: TreeHypergraph, doc: dict):
        self.state = GameState(h)
        self.doc = doc
        self.lock = threading.Lock()


def _claimed(state: GameState) -> dict:
    return {
        "maker": sorted(state.maker_set),
        "breaker": sorted(state.breaker_set),
    }


def _view(game_id: str, game: _Game, include_tree: bool = True) -> dict:
    s = game.state
    view = {
        "game_id": game_id,
        "status": s.status,
        "to_move": s.to_move if s.status == "ongoing" else None,
        "claimed": _claimed(s),
        "winning_edge": s.winning_edge,
        "winning_path": (
            sorted(s.h.edge_support(s.winning_edge)) if s.winning_edge is not None else None
        ),
    }
    if include_tree:
        view["tree"] = game.doc
    return view


def create_app() -> FastAPI:
    app = FastAPI(title="makerforge game service")
    games: dict[str, _Game] = {}
    table_lock = threading.Lock()

    def get_game(game_id: str) -> _Game:
        game = games.get(game_id)
        if game is None:
            raise HTTPException(status_code=404, detail=f"no game {game_id}")
        return game

    def maker_move(game: _Game) -> int | None:
        s = game.state
        if s.status != "ongoing" or s.to_move != MAKER:
            return None
        try:
            vertex = maker_tree_strategy(s)
        except NoSafeChild as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc
        s.claim(vertex)
        return vertex

    @app.post("/v1/games", status_code=201)
    def create_game(body: CreateGame) -> dict:
        builder = _BUILDERS.get(body.construction)
        if builder is None:
            raise HTTPException(
                status_code=422,
                detail=f"unknown construction {body.construction!r}; "
                       f"expected one of {sorted(_BUILDERS)}",
            )
        try:
            h = builder(body.n)
        except MakerforgeError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        game = _Game(h, to_document(h))
        first = maker_move(game)
        game_id = uuid.uuid4().hex
        with table_lock:
            games[game_id] = game
        view = _view(game_id, game)
        view["maker_first_move"] = first
        return view

    @app.post("/v1/games/{game_id}/breaker-move")
    def breaker_move(game_id: str, body: BreakerMove) -> dict:
        game = get_game(game_id)
        with game.lock:
            s = game.state
            if s.status != "ongoing":
                raise HTTPException(status_code=409, detail=f"game is over ({s.status})")
            if s.to_move != BREAKER:
                raise HTTPException(status_code=409, detail="it is not Breaker's turn")
            if not (0 <= body.vertex < s.h.n_vertices):
                raise HTTPException(
                    status_code=409, detail=f"no vertex {body.vertex} on this board"
                )
            if body.vertex not in s.unclaimed:
                raise HTTPException(
                    status_code=409, detail=f"vertex {body.vertex} is already claimed"
                )
            s.claim(body.vertex)
            reply = maker_move(game)
            view = _view(game_id, game, include_tree=False)
            view["maker_reply"] = reply
            return view

    @app.get("/v1/games/{game_id}")
    def get_state(game_id: str) -> dict:
        game = get_game(game_id)
        with game.lock:
            return _view(game_id, game)

    @app.delete("/v1/games/{game_id}", status_code=204)
    def delete_game(game_id: str) -> None:
        with table_lock:
            if game_id not in games:
                raise HTTPException(status_code=404, detail=f"no game {game_id}")
            del games[game_id]

    return app


def serve(port: int = 8000, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port)
