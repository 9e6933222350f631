// Incremental graph layout: new vertices appear near their attachment
// point and a short local relaxation untangles the neighborhood. Above
// the interactive size cap the view collapses to generation rings.

export const COLLAPSE_THRESHOLD = 5000;

export interface Point {
  x: number;
  y: number;
}

export class Layout {
  positions = new Map<number, Point>();
  private adjacency = new Map<number, number[]>();

  has(id: number): boolean {
    return this.positions.has(id);
  }

  neighborsOf(id: number): number[] {
    return this.adjacency.get(id) ?? [];
  }

  addEdge(u: number, v: number): void {
    if (!this.adjacency.has(u)) this.adjacency.set(u, []);
    if (!this.adjacency.has(v)) this.adjacency.set(v, []);
    this.adjacency.get(u)!.push(v);
    this.adjacency.get(v)!.push(u);
  }

  /** Place a vertex near its first positioned neighbor, else on a spiral. */
  place(id: number): void {
    if (this.positions.has(id)) return;
    const anchors = this.neighborsOf(id).filter((n) => this.positions.has(n));
    if (anchors.length) {
      const a = this.positions.get(anchors[0])!;
      const angle = (id * 2.39996) % (2 * Math.PI); // golden-angle fan
      const r = 26 + (id % 7);
      this.positions.set(id, {
        x: a.x + r * Math.cos(angle),
        y: a.y + r * Math.sin(angle),
      });
    } else {
      const angle = id * 0.5;
      const r = 12 * Math.sqrt(id + 1);
      this.positions.set(id, { x: r * Math.cos(angle), y: r * Math.sin(angle) });
    }
  }

  /** A few spring iterations restricted to the given vertices. */
  relax(ids: number[], rounds = 12): void {
    const active = ids.filter((v) => this.positions.has(v));
    for (let it = 0; it < rounds; it++) {
      for (const v of active) {
        const p = this.positions.get(v)!;
        let fx = 0;
        let fy = 0;
        for (const n of this.neighborsOf(v)) {
          const q = this.positions.get(n);
          if (!q) continue;
          const dx = q.x - p.x;
          const dy = q.y - p.y;
          const d = Math.hypot(dx, dy) || 1;
          const pull = (d - 34) / d;
          fx += 0.25 * pull * dx;
          fy += 0.25 * pull * dy;
        }
        // light repulsion from other active vertices
        for (const w of active) {
          if (w === v) continue;
          const q = this.positions.get(w)!;
          const dx = p.x - q.x;
          const dy = p.y - q.y;
          const d2 = dx * dx + dy * dy || 1;
          if (d2 < 2500) {
            fx += (220 * dx) / d2;
            fy += (220 * dy) / d2;
          }
        }
        p.x += Math.max(-8, Math.min(8, fx));
        p.y += Math.max(-8, Math.min(8, fy));
      }
    }
  }

  bounds(): { minX: number; minY: number; maxX: number; maxY: number } {
    let minX = Infinity;
    let minY = Infinity;
    let maxX = -Infinity;
    let maxY = -Infinity;
    for (const p of this.positions.values()) {
      minX = Math.min(minX, p.x);
      minY = Math.min(minY, p.y);
      maxX = Math.max(maxX, p.x);
      maxY = Math.max(maxY, p.y);
    }
    if (minX > maxX) return { minX: -1, minY: -1, maxX: 1, maxY: 1 };
    return { minX, minY, maxX, maxY };
  }
}

/** Generation buckets for the collapsed ring view. */
export function generationBuckets(
  gens: Map<number, number>,
  burning: Set<number>,
  bucketCount = 24,
): { size: number; burned: number }[] {
  let maxGen = 1;
  for (const g of gens.values()) maxGen = Math.max(maxGen, g);
  const width = Math.max(1, Math.ceil(maxGen / bucketCount));
  const buckets = Array.from({ length: Math.ceil(maxGen / width) }, () => ({
    size: 0,
    burned: 0,
  }));
  for (const [id, g] of gens) {
    const b = buckets[Math.min(buckets.length - 1, Math.floor((g - 1) / width))];
    b.size += 1;
    if (burning.has(id)) b.burned += 1;
  }
  return buckets;
}
