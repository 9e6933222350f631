// View state and interaction wiring for interactive play.

import { Client, ServiceError } from "./api.js";
import { DensityChart } from "./chart.js";
import { COLLAPSE_THRESHOLD, Layout, generationBuckets } from "./layout.js";
import type { GameState, MoveDraft } from "./types.js";
import { validateDraft } from "./validate.js";

const POLL_MS = 500;

interface DraftNode {
  id: number;
  x: number;
  y: number;
}

export class App {
  client: Client;
  gameId: string | null = null;
  state: GameState | null = null;
  layout = new Layout();
  chart = new DensityChart();
  burning = new Set<number>();
  generations = new Map<number, number>();
  knownEdges: [number, number][] = [];
  seenTurn = 0;
  requiredCount = 0;
  // builder draft
  draftNodes: DraftNode[] = [];
  draftEdges: [number, number][] = [];
  edgeAnchor: number | null = null; // vertex id awaiting its edge partner
  private pollTimer: number | null = null;
  private inFlight = false;

  graphCanvas: HTMLCanvasElement;
  chartCanvas: HTMLCanvasElement;
  statusEl: HTMLElement;
  bannerEl: HTMLElement;

  constructor(
    client: Client,
    graphCanvas: HTMLCanvasElement,
    chartCanvas: HTMLCanvasElement,
    statusEl: HTMLElement,
    bannerEl: HTMLElement,
  ) {
    this.client = client;
    this.graphCanvas = graphCanvas;
    this.chartCanvas = chartCanvas;
    this.statusEl = statusEl;
    this.bannerEl = bannerEl;
    graphCanvas.addEventListener("click", (ev) => this.onCanvasClick(ev));
  }

  async create(schedule: Record<string, unknown>, role: "builder" | "arsonist" | "none", seed: number): Promise<void> {
    const req = {
      schedule,
      human_role: role,
      builder: role === "builder" ? "human" : "path",
      arsonist: role === "arsonist" ? "human" : "greedy",
      seed,
    };
    const { game_id, state } = await this.client.createGame(req);
    this.gameId = game_id;
    this.resetView();
    this.renderState(state);
    this.startPolling();
  }

  resetView(): void {
    this.layout = new Layout();
    this.chart = new DensityChart();
    this.burning.clear();
    this.generations.clear();
    this.knownEdges = [];
    this.seenTurn = 0;
    this.clearDraft();
  }

  // -- rendering ---------------------------------------------------------------

  renderState(state: GameState): void {
    this.state = state;
    this.requiredCount = state.required_count ?? 0;
    const newEdges = state.edges.filter(
      ([u, v]) => !this.knownEdges.some(([a, b]) => a === u && b === v),
    );
    for (const [u, v] of newEdges) {
      this.layout.addEdge(u, v);
      this.knownEdges.push([u, v]);
    }
    const placed: number[] = [];
    for (const v of state.vertices) {
      this.generations.set(v.id, v.gen);
      if (v.burning) this.burning.add(v.id);
      if (!this.layout.has(v.id)) {
        this.layout.place(v.id);
        placed.push(v.id);
      }
    }
    if (placed.length && state.vertex_count <= COLLAPSE_THRESHOLD) {
      this.layout.relax(placed);
    }
    this.chart.append(state.series);
    this.seenTurn = Math.max(this.seenTurn, state.turn);
    this.draw();
    this.updateStatus();
  }

  draw(): void {
    const canvas = this.graphCanvas;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (this.generations.size > COLLAPSE_THRESHOLD) {
      this.drawCollapsed(ctx, canvas);
    } else {
      this.drawGraph(ctx, canvas);
    }
    this.chart.draw(this.chartCanvas);
  }

  private viewTransform(canvas: HTMLCanvasElement) {
    const b = this.layout.bounds();
    const pad = 30;
    const sx = (canvas.width - 2 * pad) / Math.max(1, b.maxX - b.minX);
    const sy = (canvas.height - 2 * pad) / Math.max(1, b.maxY - b.minY);
    const s = Math.min(sx, sy, 2.5);
    return {
      apply: (x: number, y: number) => ({
        x: pad + (x - b.minX) * s,
        y: pad + (y - b.minY) * s,
      }),
      invert: (x: number, y: number) => ({
        x: b.minX + (x - pad) / s,
        y: b.minY + (y - pad) / s,
      }),
    };
  }

  private drawGraph(ctx: CanvasRenderingContext2D, canvas: HTMLCanvasElement): void {
    const t = this.viewTransform(canvas);
    ctx.strokeStyle = "#b0bec5";
    ctx.lineWidth = 1;
    ctx.beginPath();
    for (const [u, v] of this.knownEdges) {
      const p = this.layout.positions.get(u);
      const q = this.layout.positions.get(v);
      if (!p || !q) continue;
      const a = t.apply(p.x, p.y);
      const b = t.apply(q.x, q.y);
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
    }
    ctx.stroke();
    for (const [id, p] of this.layout.positions) {
      const c = t.apply(p.x, p.y);
      ctx.beginPath();
      ctx.arc(c.x, c.y, 5, 0, 2 * Math.PI);
      ctx.fillStyle = this.burning.has(id) ? "#e25822" : "#4878a8";
      ctx.fill();
    }
    // draft overlay
    ctx.strokeStyle = "#7cb342";
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    for (const [u, v] of this.draftEdges) {
      const p = this.draftPos(u, t);
      const q = this.draftPos(v, t);
      if (!p || !q) continue;
      ctx.moveTo(p.x, p.y);
      ctx.lineTo(q.x, q.y);
    }
    ctx.stroke();
    ctx.setLineDash([]);
    for (const d of this.draftNodes) {
      ctx.beginPath();
      ctx.arc(d.x, d.y, 6, 0, 2 * Math.PI);
      ctx.fillStyle = this.edgeAnchor === d.id ? "#33691e" : "#7cb342";
      ctx.fill();
    }
  }

  private draftPos(id: number, t: { apply: (x: number, y: number) => { x: number; y: number } }) {
    const draft = this.draftNodes.find((d) => d.id === id);
    if (draft) return { x: draft.x, y: draft.y };
    const p = this.layout.positions.get(id);
    return p ? t.apply(p.x, p.y) : null;
  }

  private drawCollapsed(ctx: CanvasRenderingContext2D, canvas: HTMLCanvasElement): void {
    const buckets = generationBuckets(this.generations, this.burning);
    const cx = canvas.width / 2;
    const cy = canvas.height / 2;
    const total = buckets.reduce((s, b) => s + b.size, 0) || 1;
    let r = 24;
    for (const bucket of buckets) {
      const thickness = 6 + (40 * bucket.size) / total;
      const frac = bucket.size ? bucket.burned / bucket.size : 0;
      ctx.beginPath();
      ctx.arc(cx, cy, r, 0, 2 * Math.PI);
      ctx.lineWidth = thickness;
      ctx.strokeStyle = `rgb(${Math.round(72 + frac * 154)}, ${Math.round(
        120 - frac * 32,
      )}, ${Math.round(168 - frac * 134)})`;
      ctx.stroke();
      r += thickness + 4;
    }
    ctx.fillStyle = "#333";
    ctx.font = "12px sans-serif";
    ctx.fillText(
      `${this.generations.size} vertices (collapsed view)`,
      12,
      canvas.height - 12,
    );
  }

  private updateStatus(): void {
    if (!this.state) return;
    const s = this.state;
    const density = s.vertex_count ? s.burning_count / s.vertex_count : 0;
    let action = "engine thinking…";
    if (s.awaiting === "arsonist-move") action = "your move: click an unburned vertex";
    if (s.awaiting === "builder-move") {
      action = `your move: place ${this.requiredCount} vertices (${this.draftNodes.length} drafted), connect them, then submit`;
    }
    this.statusEl.textContent =
      `turn ${s.turn} · ${s.vertex_count} vertices · ${s.burning_count} burning ` +
      `(density ${density.toFixed(4)}) · ${action}`;
  }

  banner(message: string | null): void {
    this.bannerEl.textContent = message ?? "";
    this.bannerEl.style.display = message ? "block" : "none";
  }

  // -- polling -------------------------------------------------------------------

  startPolling(): void {
    if (this.pollTimer !== null) window.clearInterval(this.pollTimer);
    this.pollTimer = window.setInterval(() => void this.poll(), POLL_MS);
  }

  async poll(): Promise<void> {
    if (!this.gameId || this.inFlight) return;
    if (this.state?.awaiting) return; // our turn: nothing to poll for
    this.inFlight = true;
    try {
      const state = await this.client.getState(this.gameId, this.seenTurn);
      this.renderState(state);
    } catch (err) {
      this.banner(err instanceof Error ? err.message : String(err));
    } finally {
      this.inFlight = false;
    }
  }

  // -- interactions ----------------------------------------------------------------

  private onCanvasClick(ev: MouseEvent): void {
    if (!this.state) return;
    const rect = this.graphCanvas.getBoundingClientRect();
    const x = ((ev.clientX - rect.left) * this.graphCanvas.width) / rect.width;
    const y = ((ev.clientY - rect.top) * this.graphCanvas.height) / rect.height;
    if (this.state.awaiting === "arsonist-move") {
      const hit = this.hitTest(x, y);
      if (hit !== null) void this.igniteClicked(hit);
    } else if (this.state.awaiting === "builder-move") {
      this.builderClick(x, y);
    }
  }

  private hitTest(x: number, y: number): number | null {
    const t = this.viewTransform(this.graphCanvas);
    let best: number | null = null;
    let bestD = 144; // 12px radius
    for (const [id, p] of this.layout.positions) {
      const c = t.apply(p.x, p.y);
      const d = (c.x - x) ** 2 + (c.y - y) ** 2;
      if (d < bestD) {
        best = id;
        bestD = d;
      }
    }
    return best;
  }

  private hitTestDraft(x: number, y: number): number | null {
    for (const d of this.draftNodes) {
      if ((d.x - x) ** 2 + (d.y - y) ** 2 < 144) return d.id;
    }
    return null;
  }

  async igniteClicked(vertex: number): Promise<void> {
    if (!this.gameId || !this.state) return;
    if (this.burning.has(vertex)) {
      this.banner(`vertex ${vertex} is already burning`);
      return;
    }
    this.banner(null);
    try {
      const state = await this.client.ignite(this.gameId, vertex);
      this.renderState(state);
    } catch (err) {
      this.banner(err instanceof ServiceError ? `${err.code}: ${err.message}` : String(err));
    }
  }

  /** Builder clicks: empty space drops a draft node (until f(n) reached);
   * clicking two nodes in a row drafts an edge between them. */
  builderClick(x: number, y: number): void {
    if (!this.state) return;
    const oldCount = this.state.vertex_count;
    const draftHit = this.hitTestDraft(x, y);
    const existingHit = draftHit === null ? this.hitTest(x, y) : null;
    const hit = draftHit ?? existingHit;
    if (hit === null) {
      if (this.draftNodes.length < this.requiredCount) {
        this.draftNodes.push({ id: oldCount + this.draftNodes.length, x, y });
      } else {
        this.banner(`already drafted all ${this.requiredCount} vertices`);
      }
    } else if (this.edgeAnchor === null) {
      this.edgeAnchor = hit;
    } else if (this.edgeAnchor !== hit) {
      this.draftEdges.push([this.edgeAnchor, hit]);
      this.edgeAnchor = null;
    } else {
      this.edgeAnchor = null;
    }
    this.draw();
    this.updateStatus();
  }

  clearDraft(): void {
    this.draftNodes = [];
    this.draftEdges = [];
    this.edgeAnchor = null;
  }

  currentDraft(): MoveDraft {
    return { count: this.draftNodes.length, edges: [...this.draftEdges] };
  }

  async submitDraft(): Promise<void> {
    if (!this.gameId || !this.state) return;
    const draft = this.currentDraft();
    const verdict = validateDraft(draft, this.state.vertex_count, this.requiredCount);
    if (!verdict.ok) {
      this.banner(`invalid move: ${verdict.reason}`);
      return;
    }
    this.banner(null);
    try {
      const state = await this.client.submitBuild(this.gameId, draft);
      this.clearDraft();
      this.renderState(state);
    } catch (err) {
      this.banner(err instanceof ServiceError ? `${err.code}: ${err.message}` : String(err));
    }
  }
}
