/** Session state: a pure view of the game plus the move workflow.
 *
 * The view is always reconstructable from GET /v1/games/{id}; after any
 * conflict the session re-syncs to the server state, so it can never desync.
 */

import { ApiError, GameClient } from './client.js';
import type { Construction, GameStatus, GameView, TreeDocument } from './types.js';

export interface SessionView {
  gameId: string;
  status: GameStatus;
  toMove: 'maker' | 'breaker' | null;
  maker: ReadonlySet<number>;
  breaker: ReadonlySet<number>;
  tree: TreeDocument;
  winningEdge: number | null;
  winningPath: number[] | null;
  lastMakerMove: number | null;
  /** Human-readable toast for the last rejected action, if any. */
  error: string | null;
}

export function viewFromCreate(body: GameView): SessionView {
  if (!body.tree) {
    throw new Error('create response is missing the board document');
  }
  return {
    gameId: body.game_id,
    status: body.status,
    toMove: body.to_move,
    maker: new Set(body.claimed.maker),
    breaker: new Set(body.claimed.breaker),
    tree: body.tree,
    winningEdge: body.winning_edge,
    winningPath: body.winning_path,
    lastMakerMove: body.maker_first_move ?? null,
    error: null,
  };
}

/** Fold a server response (move reply or full GET) into the view. */
export function applyServerView(view: SessionView, body: GameView): SessionView {
  return {
    ...view,
    status: body.status,
    toMove: body.to_move,
    maker: new Set(body.claimed.maker),
    breaker: new Set(body.claimed.breaker),
    tree: body.tree ?? view.tree,
    winningEdge: body.winning_edge,
    winningPath: body.winning_path,
    lastMakerMove: body.maker_reply ?? view.lastMakerMove,
    error: null,
  };
}

export function isClaimed(view: SessionView, vertex: number): boolean {
  return view.maker.has(vertex) || view.breaker.has(vertex);
}

/** Client-side pre-validation; the server re-validates in any case. */
export function rejectReason(view: SessionView, vertex: number): string | null {
  if (view.status !== 'ongoing') {
    return `game is over (${view.status})`;
  }
  if (view.toMove !== 'breaker') {
    return 'waiting for Maker';
  }
  if (!Number.isInteger(vertex) || vertex < 0 || vertex >= view.tree.nodes.length) {
    return `no vertex ${vertex} on this board`;
  }
  if (isClaimed(view, vertex)) {
    return `vertex ${vertex} is already claimed`;
  }
  return null;
}

export function statusBanner(view: SessionView): string {
  if (view.status === 'maker_win') {
    return 'Maker wins — the completed hyperedge is highlighted';
  }
  if (view.status === 'breaker_win') {
    return 'Breaker wins — the board filled up';
  }
  return view.toMove === 'breaker'
    ? 'Your move: click an unclaimed vertex'
    : 'Maker is thinking';
}

export class Session {
  private constructor(
    private readonly client: GameClient,
    public view: SessionView,
  ) {}

  static async create(
    client: GameClient,
    construction: Construction,
    n: number,
    seed = 0,
  ): Promise<Session> {
    const body = await client.createGame(construction, n, seed);
    return new Session(client, viewFromCreate(body));
  }

  /** Submit a Breaker click. Pre-validated locally; a server 409 is surfaced
   * on the view and followed by a re-sync, so client and server never drift. */
  async submitBreakerMove(vertex: number): Promise<SessionView> {
    const reason = rejectReason(this.view, vertex);
    if (reason !== null) {
      this.view = { ...this.view, error: reason };
      return this.view;
    }
    try {
      const body = await this.client.breakerMove(this.view.gameId, vertex);
      this.view = applyServerView(this.view, body);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await this.resync();
        this.view = { ...this.view, error: `illegal move: ${err.detail}` };
      } else {
        throw err;
      }
    }
    return this.view;
  }

  async resync(): Promise<SessionView> {
    const body = await this.client.getGame(this.view.gameId);
    this.view = applyServerView(this.view, body);
    return this.view;
  }
}
