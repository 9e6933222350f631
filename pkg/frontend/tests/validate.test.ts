// Client-side validation parity: on a corpus of 50 drafts, the client
// accepts exactly the drafts the server accepts.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Client, ServiceError } from "../src/api.js";
import type { GameState, MoveDraft } from "../src/types.js";
import { validateDraft } from "../src/validate.js";
import { ServiceHandle, startService, xorshift } from "./helpers.js";

let service: ServiceHandle;

beforeAll(async () => {
  service = await startService(8741);
}, 40_000);

afterAll(async () => {
  await service?.stop();
});

function corpusDraft(rand: () => number, oldCount: number, required: number): MoveDraft {
  const kind = Math.floor(rand() * 8);
  const total = oldCount + required;
  const newIds = Array.from({ length: required }, (_, i) => oldCount + i);
  const chain: [number, number][] = [];
  if (required > 0) {
    chain.push([Math.floor(rand() * oldCount), newIds[0]]);
    for (let i = 1; i < required; i++) chain.push([newIds[i - 1], newIds[i]]);
  }
  switch (kind) {
    case 0: // valid chain
      return { count: required, edges: chain };
    case 1: // valid fan onto one old vertex
      return {
        count: required,
        edges: newIds.map((id) => [Math.floor(rand() * oldCount), id]),
      };
    case 2: // wrong count
      return { count: required + 1, edges: chain };
    case 3: // self loop
      return { count: required, edges: [...chain, [newIds[0], newIds[0]]] };
    case 4: // duplicate edge (reversed)
      return chain.length
        ? { count: required, edges: [...chain, [chain[0][1], chain[0][0]]] }
        : { count: required, edges: chain };
    case 5: // edge between two old vertices
      return oldCount >= 2
        ? { count: required, edges: [...chain, [0, 1]] }
        : { count: required, edges: chain };
    case 6: // unknown endpoint
      return { count: required, edges: [...chain, [total + 3, newIds[0]]] };
    default: // disconnected: drop the attachment to the old graph
      return { count: required, edges: chain.slice(1) };
  }
}

describe("client validation matches the server", () => {
  it("agrees on a 50-draft corpus", async () => {
    const rand = xorshift(0xbeef);
    let agreements = 0;
    for (let i = 0; i < 50; i++) {
      // fresh session per draft: identical state by determinism
      const client = new Client(service.base);
      const { game_id, state } = await client.createGame({
        schedule: { kind: "constant", value: 3 },
        human_role: "builder",
        builder: "human",
        arsonist: "greedy",
        seed: 99,
      });
      expect(state.awaiting).toBe("builder-move");
      const required = state.required_count ?? 0;
      // play one scripted valid turn so drafts face a non-trivial graph
      const first: MoveDraft = {
        count: required,
        edges: [[0, 1], [1, 2]] as [number, number][],
      };
      const afterFirst = await client.submitBuild(game_id, first);
      expect(afterFirst.turn).toBe(1);
      const ready = afterFirst.awaiting
        ? afterFirst
        : await client.getState(game_id, 0);
      expect(ready.awaiting).toBe("builder-move");

      const draft = corpusDraft(rand, ready.vertex_count, ready.required_count ?? 0);
      const clientVerdict = validateDraft(
        draft,
        ready.vertex_count,
        ready.required_count ?? 0,
      );
      let serverAccepted: boolean;
      try {
        await client.submitBuild(game_id, draft);
        serverAccepted = true;
      } catch (err) {
        if (err instanceof ServiceError && err.status === 400) {
          serverAccepted = false;
        } else {
          throw err;
        }
      }
      expect(clientVerdict.ok, `draft ${i}: client=${String(clientVerdict.ok)} server=${String(serverAccepted)} ${JSON.stringify(draft)} reason=${clientVerdict.reason}`).toBe(serverAccepted);
      agreements++;
    }
    expect(agreements).toBe(50);
  }, 120_000);

  it("rejects obviously bad drafts locally", () => {
    expect(validateDraft({ count: 2, edges: [] }, 5, 2).ok).toBe(false); // disconnected
    expect(validateDraft({ count: 1, edges: [[0, 5]] }, 5, 2).ok).toBe(false); // wrong count
    expect(validateDraft({ count: 2, edges: [[0, 1]] }, 2, 2).ok).toBe(false); // old-old
    expect(validateDraft({ count: 2, edges: [[1, 2], [2, 3]] }, 2, 2).ok).toBe(true);
    expect(validateDraft({ count: 0, edges: [] }, 4, 0).ok).toBe(true);
  });
});
