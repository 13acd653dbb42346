"""Record a real game-service session into a JSON fixture for the UI tests.

Breaker plays to make the game as long as the board permits: it blocks the
vertex that would let Maker finish immediately, otherwise it burns moves far
from Maker's chain.  One deliberately illegal request (the claimed root) is
recorded mid-game to capture the 409 shape.
"""

import json
import pathlib

from fastapi.testclient import TestClient

from makerforge.constructions import theorem1_counterexample
from makerforge.service import create_app


def completion_children(h, chain_end, maker_set):
    """Unclaimed children of Maker's chain end that would complete an edge."""
    out = []
    for c in h.children[chain_end]:
        would = set(maker_set) | {c}
        for i in range(len(h.edges)):
            sup = h.edge_support(i)
            if c in sup and sup <= would:
                out.append(c)
                break
    return out


def main() -> None:
    h = theorem1_counterexample(4)
    client = TestClient(create_app())
    fixture = {"requests": []}

    resp = client.post("/v1/games", json={"construction": "theorem1", "n": 4})
    created = resp.json()
    gid = created["game_id"]
    fixture["create"] = {"status": resp.status_code, "body": created}

    maker = set(created["claimed"]["maker"])
    breaker = set()
    moves = []
    illegal = None
    while True:
        state = client.get(f"/v1/games/{gid}").json()
        if state["status"] != "ongoing":
            break
        maker = set(state["claimed"]["maker"])
        breaker = set(state["claimed"]["breaker"])
        # find maker's chain end
        cur = 0
        while True:
            nxt = [c for c in h.children[cur] if c in maker]
            if not nxt:
                break
            cur = nxt[0]
        threats = completion_children(h, cur, maker)
        if threats:
            vertex = min(threats)
        else:
            # predict Maker's next step and burn a move outside that subtree
            safe = [
                c for c in h.children[cur]
                if c not in breaker
                and not any(h.is_ancestor_or_self(c, b) for b in breaker)
            ]
            chosen = min(safe) if safe else cur
            candidates = [
                v for v in range(h.n_vertices)
                if v not in maker and v not in breaker
                and not h.is_ancestor_or_self(chosen, v)
            ]
            vertex = max(candidates)
        if illegal is None and len(moves) == 2:
            # capture the conflict shape once, mid-session
            bad = client.post(f"/v1/games/{gid}/breaker-move", json={"vertex": 0})
            illegal = {"status": bad.status_code, "body": bad.json(), "vertex": 0}
        resp = client.post(f"/v1/games/{gid}/breaker-move", json={"vertex": vertex})
        moves.append({"vertex": vertex, "status": resp.status_code,
                      "body": resp.json()})

    final = client.get(f"/v1/games/{gid}").json()
    fixture["moves"] = moves
    fixture["illegal"] = illegal
    fixture["final"] = {"status": 200, "body": final}
    fixture["summary"] = {
        "breaker_moves": len(moves),
        "final_status": final["status"],
        "winning_path": final["winning_path"],
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixture.json"
    out.write_text(json.dumps(fixture, indent=2) + "\n")
    print(json.dumps(fixture["summary"]))


if __name__ == "__main__":
    main()
