/** Tidy layered tree layout with leaves at their true depths. */

import type { TreeDocument } from './types.js';

export interface Layout {
  x: number[];
  y: number[];
  width: number;
  height: number;
}

export const H_STEP = 24;
export const V_STEP = 48;
export const MARGIN = 24;

export function layoutTree(tree: TreeDocument): Layout {
  const n = tree.nodes.length;
  const children: number[][] = Array.from({ length: n }, () => []);
  const depth = new Array<number>(n).fill(0);
  for (const node of tree.nodes) {
    if (node.parent !== null) {
      children[node.parent].push(node.id);
      depth[node.id] = depth[node.parent] + 1;
    }
  }
  const x = new Array<number>(n).fill(0);
  let nextLeaf = 0;
  // in-order: a leaf takes the next slot, an interior vertex centers on its kids
  const place = (v: number): number => {
    if (children[v].length === 0) {
      x[v] = nextLeaf++;
      return x[v];
    }
    const xs = children[v].map(place);
    x[v] = (Math.min(...xs) + Math.max(...xs)) / 2;
    return x[v];
  };
  if (n > 0) {
    place(0);
  }
  const maxDepth = n > 0 ? Math.max(...depth) : 0;
  return {
    x: x.map((v) => MARGIN + v * H_STEP),
    y: depth.map((d) => MARGIN + d * V_STEP),
    width: 2 * MARGIN + Math.max(0, nextLeaf - 1) * H_STEP,
    height: 2 * MARGIN + maxDepth * V_STEP,
  };
}
