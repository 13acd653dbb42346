import { describe, expect, it } from 'vitest';

import { ApiError, GameClient } from '../src/client.js';
import type { FetchLike } from '../src/client.js';

function recordingFetch(status: number, body: unknown) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({ url, init });
    return new Response(body === null ? null : JSON.stringify(body), { status });
  };
  return { calls, fetchFn };
}

const VIEW = {
  game_id: 'g1',
  status: 'ongoing',
  to_move: 'breaker',
  claimed: { maker: [0], breaker: [] },
  winning_edge: null,
  winning_path: null,
};

describe('GameClient', () => {
  it('posts game creation under the /v1 prefix', async () => {
    const { calls, fetchFn } = recordingFetch(201, VIEW);
    const client = new GameClient('http://host:9000', fetchFn);
    const body = await client.createGame('theorem1', 4, 7);
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe('http://host:9000/v1/games');
    expect(calls[0].init?.method).toBe('POST');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      construction: 'theorem1',
      n: 4,
      seed: 7,
    });
    expect(body.game_id).toBe('g1');
  });

  it('strips a trailing slash from the base url', async () => {
    const { calls, fetchFn } = recordingFetch(200, VIEW);
    await new GameClient('http://host/', fetchFn).getGame('g1');
    expect(calls[0].url).toBe('http://host/v1/games/g1');
  });

  it('posts breaker moves with the vertex in the body', async () => {
    const { calls, fetchFn } = recordingFetch(200, VIEW);
    await new GameClient('', fetchFn).breakerMove('g1', 42);
    expect(calls[0].url).toBe('/v1/games/g1/breaker-move');
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({ vertex: 42 });
  });

  it('turns a 409 into an ApiError carrying the detail', async () => {
    const { fetchFn } = recordingFetch(409, { detail: 'vertex 0 is already claimed' });
    const err = await new GameClient('', fetchFn)
      .breakerMove('g1', 0)
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.detail).toBe('vertex 0 is already claimed');
  });

  it('turns a 404 into an ApiError', async () => {
    const { fetchFn } = recordingFetch(404, { detail: 'no such game' });
    await expect(new GameClient('', fetchFn).getGame('nope')).rejects.toMatchObject({
      status: 404,
      detail: 'no such game',
    });
  });

  it('stringifies a bodiless error response', async () => {
    const { fetchFn } = recordingFetch(422, { errors: ['n too small'] });
    const err = await new GameClient('', fetchFn)
      .createGame('theorem1', 1)
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.detail).toContain('n too small');
  });

  it('treats 204 on delete as success', async () => {
    const { calls, fetchFn } = recordingFetch(204, null);
    await new GameClient('', fetchFn).deleteGame('g1');
    expect(calls[0].init?.method).toBe('DELETE');
  });

  it('raises on delete of an unknown game', async () => {
    const { fetchFn } = recordingFetch(404, { detail: 'no such game' });
    await expect(new GameClient('', fetchFn).deleteGame('nope')).rejects.toMatchObject({
      status: 404,
    });
  });
});
