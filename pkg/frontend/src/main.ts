import { App } from "./app.js";
import { Client } from "./api.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const client = new Client(
  (document.querySelector("meta[name=service-base]") as HTMLMetaElement)?.content ??
    "http://127.0.0.1:8321",
);

const app = new App(
  client,
  el<HTMLCanvasElement>("graph"),
  el<HTMLCanvasElement>("chart"),
  el("status"),
  el("banner"),
);

el<HTMLButtonElement>("new-game").addEventListener("click", () => {
  const role = el<HTMLSelectElement>("role").value as "builder" | "arsonist" | "none";
  const kind = el<HTMLSelectElement>("schedule").value;
  const seed = Number(el<HTMLInputElement>("seed").value) || 0;
  const schedules: Record<string, Record<string, unknown>> = {
    "constant-2": { kind: "constant", value: 2 },
    "constant-3": { kind: "constant", value: 3 },
    "sqrt": { kind: "poly", c: 1.0, alpha: 0.5 },
    "linear": { kind: "linear", c: 1.0 },
  };
  void app.create(schedules[kind] ?? schedules["constant-2"], role, seed).catch((err) => {
    app.banner(String(err));
  });
});

el<HTMLButtonElement>("submit-draft").addEventListener("click", () => void app.submitDraft());
el<HTMLButtonElement>("clear-draft").addEventListener("click", () => {
  app.clearDraft();
  app.draw();
});
el<HTMLButtonElement>("step").addEventListener("click", () => {
  if (app.gameId) {
    void client.step(app.gameId).then((s) => app.renderState(s)).catch((e) => app.banner(String(e)));
  }
});
