/** Typed fetch client for the /v1 game service. */

import type { Construction, GameView } from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = 'ApiError';
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow(resp: Response): Promise<GameView> {
  if (resp.status === 204) {
    return undefined as unknown as GameView;
  }
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const detail =
      typeof body?.detail === 'string' ? body.detail : JSON.stringify(body);
    throw new ApiError(resp.status, detail);
  }
  return body as GameView;
}

export class GameClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, '')}/v1${path}`;
  }

  createGame(construction: Construction, n: number, seed = 0): Promise<GameView> {
    return this.fetchFn(this.url('/games'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ construction, n, seed }),
    }).then(parseOrThrow);
  }

  breakerMove(gameId: string, vertex: number): Promise<GameView> {
    return this.fetchFn(this.url(`/games/${gameId}/breaker-move`), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ vertex }),
    }).then(parseOrThrow);
  }

  getGame(gameId: string): Promise<GameView> {
    return this.fetchFn(this.url(`/games/${gameId}`)).then(parseOrThrow);
  }

  async deleteGame(gameId: string): Promise<void> {
    const resp = await this.fetchFn(this.url(`/games/${gameId}`), {
      method: 'DELETE',
    });
    if (!resp.ok && resp.status !== 204) {
      const body = await resp.json().catch(() => ({}));
      throw new ApiError(resp.status, body?.detail ?? 'delete failed');
    }
  }
}
