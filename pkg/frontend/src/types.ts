/** Wire types of the /v1 game service. The server is the source of truth. */

export interface TreeNode {
  id: number;
  parent: number | null;
}

export interface PathEdge {
  start: number;
  end: number;
  mult: number;
}

export interface TreeDocument {
  format: string;
  n: number | null;
  nodes: TreeNode[];
  edges: PathEdge[];
}

export type GameStatus = 'ongoing' | 'maker_win' | 'breaker_win';

export interface ClaimedSets {
  maker: number[];
  breaker: number[];
}

export interface GameView {
  game_id: string;
  status: GameStatus;
  to_move: 'maker' | 'breaker' | null;
  claimed: ClaimedSets;
  winning_edge: number | null;
  winning_path: number[] | null;
  tree?: TreeDocument;
  maker_first_move?: number | null;
  maker_reply?: number | null;
}

export type Construction = 'es' | 'theorem1' | 'weak';
