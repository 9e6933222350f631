// Payload shapes of the game service API.

export interface VertexInfo {
  id: number;
  gen: number;
  burning: boolean;
  burn_turn: number | null;
}

export interface SeriesPoint {
  n: number;
  vertices: number;
  burning: number;
  density: number;
}

export interface GameState {
  game_id: string;
  turn: number;
  awaiting: "builder-move" | "arsonist-move" | null;
  human_role: "builder" | "arsonist" | "none";
  required_count: number | null;
  vertex_count: number;
  burning_count: number;
  since: number;
  vertices: VertexInfo[];
  edges: [number, number][];
  series: SeriesPoint[];
}

export interface CreateRequest {
  schedule: Record<string, unknown>;
  human_role: "builder" | "arsonist" | "none";
  builder: string;
  arsonist: string;
  seed: number;
}

export interface ApiError {
  code: string;
  message: string;
  detail: unknown;
}

export interface MoveDraft {
  count: number;
  edges: [number, number][];
}
