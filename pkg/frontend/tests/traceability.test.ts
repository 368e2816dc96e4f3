/**
 * Traceability: after driving every tab against recorded fixtures, each
 * number on screen must point (data-seq) at a request-log entry whose
 * response contains exactly the raw value displayed (data-raw).
 */

import { beforeEach, describe, expect, it } from "vitest";

import { RequestLog } from "../src/log.js";
import { SessionState } from "../src/state.js";
import { DataTab } from "../src/tabs/dataTab.js";
import { ExploreTab } from "../src/tabs/exploreTab.js";
import { SentenceBiasTab } from "../src/tabs/sentenceBiasTab.js";
import { WordBiasTab } from "../src/tabs/wordBiasTab.js";
import {
  FEM,
  MASC,
  OLDER,
  YOUNGER,
  flush,
  makeApi,
  mount,
  numericLeaves,
} from "./helpers.js";

async function driveAllTabs(): Promise<RequestLog> {
  const { api, log } = makeApi();
  const state = new SessionState();
  state.upsertList({ name: "fem", words: [...FEM] });
  state.upsertList({ name: "masc", words: [...MASC] });

  const dataRoot = mount();
  const dataTab = new DataTab(dataRoot, api, state);
  await dataTab.init();
  dataRoot.querySelector<HTMLInputElement>("[data-role=word]")!.value = "nurse";
  dataRoot.querySelector<HTMLButtonElement>("[data-role=lookup]")!.click();
  await flush();

  const exploreRoot = mount();
  const exploreTab = new ExploreTab(exploreRoot, api, state);
  await exploreTab.init();
  exploreRoot.querySelector<HTMLInputElement>("[data-role=related]")!.click();
  exploreRoot.querySelector<HTMLButtonElement>("[data-role=plot]")!.click();
  await flush();

  state.upsertList({ name: "older", words: [...OLDER] });
  state.upsertList({ name: "younger", words: [...YOUNGER] });

  const wordsRoot = mount();
  const wordsTab = new WordBiasTab(wordsRoot, api, state);
  await wordsTab.init();
  wordsRoot.querySelector<HTMLSelectElement>("[data-role=list-c]")!.value = "older";
  wordsRoot.querySelector<HTMLSelectElement>("[data-role=list-d]")!.value =
    "younger";
  wordsRoot.querySelector<HTMLInputElement>("[data-role=words]")!.value =
    "nurse doctor engineer ghostword";
  wordsRoot.querySelector<HTMLButtonElement>("[data-role=run]")!.click();
  await flush();

  const sentenceRoot = mount();
  const sentenceTab = new SentenceBiasTab(sentenceRoot, api);
  await sentenceTab.init();
  const template = sentenceRoot.querySelector<HTMLInputElement>(
    "[data-role=template]",
  )!;
  template.value = "the * is kind";
  template.dispatchEvent(new Event("input"));
  sentenceRoot.querySelector<HTMLInputElement>("[data-role=candidates]")!.value =
    "nurse doctor";
  sentenceRoot.querySelector<HTMLButtonElement>("[data-role=rank]")!.click();
  await flush();
  sentenceRoot.querySelector<HTMLInputElement>("[data-role=stereo]")!.value =
    "the nurse is kind";
  sentenceRoot.querySelector<HTMLInputElement>("[data-role=anti]")!.value =
    "the doctor is kind";
  sentenceRoot.querySelector<HTMLInputElement>("[data-role=tag]")!.value = "ui";
  sentenceRoot.querySelector<HTMLButtonElement>("[data-role=compare]")!.click();
  await flush();

  return log;
}

describe("traceability", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("every displayed number maps to a logged API response", async () => {
    const log = await driveAllTabs();

    const numbered = document.querySelectorAll<HTMLElement>("[data-raw]");
    expect(numbered.length).toBeGreaterThan(10);

    for (const element of numbered) {
      const seq = Number(element.dataset.seq);
      const raw = Number(element.dataset.raw);
      expect(Number.isFinite(seq), "data-raw elements need data-seq").toBe(true);
      const entry = log.bySeq(seq);
      expect(entry, `no log entry for seq ${seq}`).toBeDefined();
      expect(entry!.status).toBe(200);
      const leaves = numericLeaves(entry!.response);
      expect(
        leaves.includes(raw),
        `value ${raw} (shown as '${element.textContent}') not in response #${seq} ${entry!.path}`,
      ).toBe(true);
      expect(element.textContent!.trim().length).toBeGreaterThan(0);
    }
  });

  it("every data-seq annotation points at a logged entry", async () => {
    const log = await driveAllTabs();
    const annotated = document.querySelectorAll<Element>("[data-seq]");
    expect(annotated.length).toBeGreaterThan(10);
    for (const element of annotated) {
      const seq = Number(element.getAttribute("data-seq"));
      expect(log.bySeq(seq), `no log entry for seq ${seq}`).toBeDefined();
    }
  });

  it("the log records every request the tabs made, in issue order", async () => {
    const log = await driveAllTabs();
    const seqs = log.entries().map((e) => e.seq);
    expect(seqs).toEqual([...seqs].sort((a, b) => a - b));
    expect(new Set(seqs).size).toBe(seqs.length);
    for (const entry of log.entries()) {
      expect(entry.status).toBe(200);
    }
  });
});
