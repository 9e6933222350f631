// Thin fetch client for the game service.

import type { ApiError, CreateRequest, GameState, MoveDraft } from "./types.js";

export class ServiceError extends Error {
  code: string;
  status: number;

  constructor(status: number, payload: ApiError) {
    super(payload.message);
    this.code = payload.code;
    this.status = status;
  }
}

export class Client {
  base: string;

  constructor(base: string) {
    this.base = base.replace(/\/$/, "");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!res.ok) {
      let payload: ApiError;
      try {
        payload = (await res.json()) as ApiError;
      } catch {
        payload = { code: "http", message: `${res.status}`, detail: null };
      }
      throw new ServiceError(res.status, payload);
    }
    return (await res.json()) as T;
  }

  createGame(req: CreateRequest): Promise<{ game_id: string; state: GameState }> {
    return this.request("/api/games", { method: "POST", body: JSON.stringify(req) });
  }

  getState(id: string, since = 0): Promise<GameState> {
    return this.request(`/api/games/${id}?since=${since}`);
  }

  ignite(id: string, vertex: number): Promise<GameState> {
    return this.request(`/api/games/${id}/move`, {
      method: "POST",
      body: JSON.stringify({ vertex }),
    });
  }

  submitBuild(id: string, draft: MoveDraft): Promise<GameState> {
    return this.request(`/api/games/${id}/move`, {
      method: "POST",
      body: JSON.stringify(draft),
    });
  }

  step(id: string): Promise<GameState> {
    return this.request(`/api/games/${id}/step`, { method: "POST" });
  }

  async traceCsv(id: string): Promise<string> {
    const res = await fetch(`${this.base}/api/games/${id}/trace.csv`);
    if (!res.ok) throw new ServiceError(res.status, await res.json());
    return res.text();
  }

  presets(): Promise<Record<string, unknown>> {
    return this.request("/api/presets");
  }
}
