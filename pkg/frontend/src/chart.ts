// Live density chart on a bare canvas.

import type { SeriesPoint } from "./types.js";

export class DensityChart {
  points: SeriesPoint[] = [];
  private seen = new Set<number>();

  append(points: SeriesPoint[]): void {
    for (const p of points) {
      if (!this.seen.has(p.n)) {
        this.seen.add(p.n);
        this.points.push(p);
      }
    }
    this.points.sort((a, b) => a.n - b.n);
  }

  /** Chart values are exactly the service's 10-significant-digit densities. */
  densities(): number[] {
    return this.points.map((p) => p.density);
  }

  draw(canvas: HTMLCanvasElement): void {
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const { width: w, height: h } = canvas;
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = "#fafafa";
    ctx.fillRect(0, 0, w, h);
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    for (const frac of [0, 0.5, 1]) {
      const y = h - 14 - frac * (h - 28);
      ctx.moveTo(30, y);
      ctx.lineTo(w - 6, y);
    }
    ctx.stroke();
    ctx.fillStyle = "#666";
    ctx.font = "10px sans-serif";
    ctx.fillText("1.0", 6, 18);
    ctx.fillText("0.5", 6, h / 2 + 4);
    ctx.fillText("0.0", 6, h - 10);
    if (!this.points.length) return;
    const maxN = this.points[this.points.length - 1].n;
    ctx.strokeStyle = "#c0392b";
    ctx.lineWidth = 1.4;
    ctx.beginPath();
    this.points.forEach((p, i) => {
      const x = 30 + ((w - 36) * (p.n - 1)) / Math.max(1, maxN - 1);
      const y = h - 14 - p.density * (h - 28);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }
}
