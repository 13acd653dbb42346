/** Replay the recorded service session as a FetchLike for offline tests. */

import fixture from './fixture.json';
import type { FetchLike } from '../src/client.js';
import type { GameView } from '../src/types.js';

type Fixture = typeof fixture;

function jsonResponse(body: unknown, status: number): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

export class FakeServer {
  requests: { method: string; url: string; body?: unknown }[] = [];
  private moveIndex = 0;
  private lastView: GameView;

  constructor(private readonly fixture_: Fixture = fixture) {
    this.lastView = fixture_.create.body as unknown as GameView;
  }

  /** The full state a GET would return right now. */
  currentView(): GameView {
    return {
      ...this.lastView,
      tree: (this.fixture_.create.body as unknown as GameView).tree,
    };
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, url, body });

    if (method === 'POST' && url.endsWith('/v1/games')) {
      return jsonResponse(this.fixture_.create.body, this.fixture_.create.status);
    }
    if (method === 'POST' && url.endsWith('/breaker-move')) {
      const expected = this.fixture_.moves[this.moveIndex];
      if (expected !== undefined && body.vertex === expected.vertex) {
        this.moveIndex += 1;
        this.lastView = expected.body as unknown as GameView;
        return jsonResponse(expected.body, expected.status);
      }
      const claimed = new Set([
        ...this.lastView.claimed.maker,
        ...this.lastView.claimed.breaker,
      ]);
      if (claimed.has(body.vertex)) {
        return jsonResponse(
          { detail: `vertex ${body.vertex} is already claimed` },
          409,
        );
      }
      throw new Error(`fixture has no scripted reply for vertex ${body.vertex}`);
    }
    if (method === 'GET') {
      return jsonResponse(this.currentView(), 200);
    }
    if (method === 'DELETE') {
      return new Response(null, { status: 204 });
    }
    throw new Error(`unexpected request ${method} ${url}`);
  };
}

export { fixture };
