// Client-side builder-move validation: the same rules the engine
// enforces, so a draft that passes here is never rejected server-side.

import type { MoveDraft } from "./types.js";

export interface ValidationResult {
  ok: boolean;
  reason: string | null;
}

const ok: ValidationResult = { ok: true, reason: null };

function fail(reason: string): ValidationResult {
  return { ok: false, reason };
}

class UnionFind {
  parent: number[];

  constructor(n: number) {
    this.parent = Array.from({ length: n }, (_, i) => i);
  }

  find(x: number): number {
    let root = x;
    while (this.parent[root] !== root) root = this.parent[root];
    while (this.parent[x] !== root) {
      const next = this.parent[x];
      this.parent[x] = root;
      x = next;
    }
    return root;
  }

  union(a: number, b: number): void {
    this.parent[this.find(b)] = this.find(a);
  }
}

/**
 * Validate a builder draft against the current vertex count and the
 * schedule's required count. New vertices are the ids
 * oldCount .. oldCount+draft.count-1.
 */
export function validateDraft(
  draft: MoveDraft,
  oldCount: number,
  requiredCount: number,
): ValidationResult {
  if (draft.count !== requiredCount) {
    return fail(`move adds ${draft.count} vertices, schedule says ${requiredCount}`);
  }
  if (requiredCount === 0) {
    return draft.edges.length === 0 ? ok : fail("a 0-vertex turn must be the empty move");
  }
  const total = oldCount + draft.count;
  const seen = new Set<number>();
  for (const [u, v] of draft.edges) {
    if (!Number.isInteger(u) || !Number.isInteger(v) || u < 0 || v < 0 || u >= total || v >= total) {
      return fail(`edge (${u}, ${v}) references an unknown vertex`);
    }
    if (u === v) return fail(`self-loop at ${u}`);
    if (u < oldCount && v < oldCount) {
      return fail(`edge (${u}, ${v}) joins two pre-existing vertices`);
    }
    const key = Math.min(u, v) * total + Math.max(u, v);
    if (seen.has(key)) return fail(`duplicate edge (${u}, ${v})`);
    seen.add(key);
  }
  // connectivity: old graph contracted to one node, every new vertex
  // must reach it (or, on the very first turn, form one component)
  const hasOld = oldCount > 0;
  const nodes = draft.count + (hasOld ? 1 : 0);
  const uf = new UnionFind(nodes);
  const nodeOf = (x: number) => (hasOld ? (x < oldCount ? 0 : x - oldCount + 1) : x);
  for (const [u, v] of draft.edges) uf.union(nodeOf(u), nodeOf(v));
  const root = uf.find(0);
  for (let i = 1; i < nodes; i++) {
    if (uf.find(i) !== root) {
      return fail("the grown graph would be disconnected");
    }
  }
  return ok;
}
