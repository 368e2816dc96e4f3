/** Shared wiring for tab tests: fixture-backed API, state, DOM flushing. */

import { ApiClient } from "../src/api.js";
import { RequestLog } from "../src/log.js";
import { SessionState } from "../src/state.js";
import { fixtureTransport } from "./mockTransport.js";

export function makeApi(): { api: ApiClient; log: RequestLog } {
  const log = new RequestLog();
  return { api: new ApiClient(fixtureTransport(), log), log };
}

/** Wait for every promise chain started by event handlers to settle. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

export const FEM = ["she", "woman", "mother", "girl"];
export const MASC = ["he", "man", "father", "boy"];
export const OLDER = ["old", "elder"];
export const YOUNGER = ["young", "youth"];

/** The lists the fixtures were recorded against. */
export function seedLists(state: SessionState): void {
  state.upsertList({ name: "fem", words: [...FEM] });
  state.upsertList({ name: "masc", words: [...MASC] });
  state.upsertList({ name: "older", words: [...OLDER] });
  state.upsertList({ name: "younger", words: [...YOUNGER] });
  state.colors.set("fem", "#c2410c");
  state.colors.set("masc", "#1d4ed8");
}

export function mount(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

/** All numbers anywhere in a JSON document. */
export function numericLeaves(doc: unknown, out: number[] = []): number[] {
  if (typeof doc === "number") {
    out.push(doc);
  } else if (Array.isArray(doc)) {
    for (const item of doc) numericLeaves(item, out);
  } else if (typeof doc === "object" && doc !== null) {
    for (const value of Object.values(doc)) numericLeaves(value, out);
  }
  return out;
}
