// Test scaffolding: spawn the python game service and wait for readiness.

import { spawn, ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface ServiceHandle {
  base: string;
  proc: ChildProcess;
  stop: () => Promise<void>;
}

export async function startService(port: number): Promise<ServiceHandle> {
  const dataDir = mkdtempSync(join(tmpdir(), "pyreline-ui-test-"));
  const code = [
    "import uvicorn",
    "from pyreline.service import create_app",
    `uvicorn.run(create_app(${JSON.stringify(dataDir)}), host="127.0.0.1", port=${port}, log_level="error")`,
  ].join("\n");
  const proc = spawn("python3", ["-c", code], { stdio: ["ignore", "pipe", "pipe"] });
  let stderr = "";
  proc.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });
  const base = `http://127.0.0.1:${port}`;
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${base}/api/presets`);
      if (res.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      proc.kill();
      throw new Error(`service did not come up on ${port}\n${stderr}`);
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  return {
    base,
    proc,
    stop: () =>
      new Promise<void>((resolve) => {
        proc.on("exit", () => resolve());
        proc.kill("SIGTERM");
        setTimeout(() => {
          proc.kill("SIGKILL");
          resolve();
        }, 3000).unref();
      }),
  };
}

/** Deterministic 32-bit PRNG so corpus drafts are reproducible. */
export function xorshift(seed: number): () => number {
  let s = seed >>> 0 || 1;
  return () => {
    s ^= s << 13;
    s >>>= 0;
    s ^= s >> 17;
    s ^= s << 5;
    s >>>= 0;
    return s / 0x100000000;
  };
}
