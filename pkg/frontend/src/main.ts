/** Browser bootstrap: wire the session workflow to the DOM. */

import { GameClient } from './client.js';
import { renderSvg } from './render.js';
import { Session } from './session.js';
import type { Construction } from './types.js';

export function init(root: HTMLElement, baseUrl = ''): void {
  const client = new GameClient(baseUrl);
  let session: Session | null = null;

  root.innerHTML = `
    <form id="create-form">
      <select id="construction">
        <option value="theorem1">theorem1</option>
        <option value="es">es</option>
        <option value="weak">weak</option>
      </select>
      <input id="n" type="number" value="4" min="2"/>
      <button type="submit">New game</button>
      <span id="create-error" class="error"></span>
    </form>
    <div id="board"></div>
  `;
  const board = root.querySelector('#board') as HTMLElement;
  const createError = root.querySelector('#create-error') as HTMLElement;

  const redraw = () => {
    if (session !== null) {
      board.innerHTML = renderSvg(session.view);
    }
  };

  root.querySelector('#create-form')!.addEventListener('submit', async (ev) => {
    ev.preventDefault();
    const construction = (root.querySelector('#construction') as HTMLSelectElement)
      .value as Construction;
    const n = Number((root.querySelector('#n') as HTMLInputElement).value);
    createError.textContent = '';
    try {
      session = await Session.create(client, construction, n);
      redraw();
    } catch (err) {
      // 422 parameter errors stay inline; no session is created
      createError.textContent = err instanceof Error ? err.message : String(err);
    }
  });

  board.addEventListener('click', async (ev) => {
    const target = ev.target as Element;
    const raw = target.getAttribute?.('data-vertex');
    if (raw === null || raw === undefined || session === null) {
      return;
    }
    await session.submitBreakerMove(Number(raw));
    redraw();
  });
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  init(document.getElementById('app')!);
}
