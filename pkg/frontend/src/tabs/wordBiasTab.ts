/**
 * Biases-in-words tab: two extreme lists define a bias direction; an
 * optional second pair adds a vertical axis.
 *
 * With two lists the scores render as signed horizontal bars (positive
 * toward the first list).  With four, the same words are also placed on
 * a 2-axis plane.  Out-of-vocabulary words are reported inline next to
 * whatever produced them: seed lists next to their selects, probe words
 * next to the probe input.
 */

import { ApiClient } from "../api.js";
import { signedBars, scatter, type BarItem } from "../charts.js";
import { clear, el, traced } from "../dom.js";
import { fmt } from "../format.js";
import { ViewGate } from "../log.js";
import { SessionState, type StoredList } from "../state.js";
import type { EmbeddingsDoc, ScoresDoc, Scores2dDoc, SpaceDoc } from "../types.js";

const NONE = "(none)";

export class WordBiasTab {
  private gate = new ViewGate();

  private embeddingSelect!: HTMLSelectElement;
  private selects: Record<"a" | "b" | "c" | "d", HTMLSelectElement> = {} as never;
  private warns: Record<"a" | "b" | "c" | "d", HTMLElement> = {} as never;
  private methodSelect!: HTMLSelectElement;
  private wordsInput!: HTMLInputElement;
  private wordsWarn!: HTMLElement;
  private barsBox!: HTMLElement;
  private planeBox!: HTMLElement;
  private statusBox!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: SessionState,
  ) {}

  async init(): Promise<void> {
    this.build();
    this.state.onChange(() => this.refreshListOptions());
    this.refreshListOptions();
    const reply = await this.api.get<EmbeddingsDoc>("/embeddings");
    clear(this.embeddingSelect);
    for (const emb of reply.data.embeddings) {
      this.embeddingSelect.appendChild(el("option", { value: emb.id }, emb.id));
    }
  }

  private build(): void {
    const controls = el("div", { class: "controls" });
    this.embeddingSelect = el("select", { "data-role": "embedding" });
    controls.append(el("label", {}, "embedding "), this.embeddingSelect);

    for (const slot of ["a", "b", "c", "d"] as const) {
      const select = el("select", { "data-role": `list-${slot}` });
      const warn = el("span", { class: "warn", "data-role": `warn-${slot}` });
      this.selects[slot] = select;
      this.warns[slot] = warn;
      const label = slot === "a" || slot === "b" ? `extreme ${slot} ` : `axis-2 ${slot} `;
      controls.append(el("label", {}, label), select, warn);
    }

    this.methodSelect = el("select", { "data-role": "method" });
    this.methodSelect.appendChild(el("option", { value: "centroid-diff" }, "centroid-diff"));
    this.methodSelect.appendChild(el("option", { value: "pca-pairs" }, "pca-pairs"));
    this.wordsInput = el("input", {
      "data-role": "words",
      placeholder: "words of interest",
    });
    this.wordsWarn = el("span", { class: "warn", "data-role": "warn-words" });
    const runBtn = el("button", { "data-role": "run" }, "score");
    runBtn.addEventListener("click", () => {
      void this.run();
    });
    controls.append(
      el("label", {}, " method "),
      this.methodSelect,
      el("label", {}, " words "),
      this.wordsInput,
      this.wordsWarn,
      runBtn,
    );

    this.statusBox = el("div", { class: "status", "data-role": "status" });
    this.barsBox = el("div", { "data-role": "bars" });
    this.planeBox = el("div", { "data-role": "plane" });
    this.root.append(controls, this.statusBox, this.barsBox, this.planeBox);
  }

  private refreshListOptions(): void {
    const names = this.state.lists().map((l) => l.name);
    for (const slot of ["a", "b", "c", "d"] as const) {
      const select = this.selects[slot];
      const previous = select.value;
      clear(select);
      if (slot === "c" || slot === "d") {
        select.appendChild(el("option", { value: NONE }, NONE));
      }
      for (const name of names) {
        select.appendChild(el("option", { value: name }, name));
      }
      const optional = slot === "c" || slot === "d";
      if (names.includes(previous) || (optional && previous === NONE)) {
        select.value = previous;
      } else if (optional) {
        select.value = NONE;
      } else if (slot === "b" && names.length > 1) {
        select.value = names[1];
      }
    }
  }

  /** {name, words[, language]} body fragment for one stored list. */
  private listDoc(list: StoredList): Record<string, unknown> {
    return {
      name: list.name,
      words: list.words,
      ...(list.language ? { language: list.language } : {}),
    };
  }

  async run(): Promise<void> {
    const listA = this.state.getList(this.selects.a.value);
    const listB = this.state.getList(this.selects.b.value);
    if (!listA || !listB) {
      this.statusBox.textContent = "pick two extreme lists first";
      return;
    }
    this.statusBox.textContent = "";
    const embedding = this.embeddingSelect.value;
    const method = this.methodSelect.value;
    const words = this.wordsInput.value.split(/\s+/).filter(Boolean);

    const spaceBody = {
      embedding_id: embedding,
      a: this.listDoc(listA),
      b: this.listDoc(listB),
      method,
    };
    const spaceReply = await this.api.post<SpaceDoc>("/bias/space", spaceBody);
    if (this.gate.apply("space", spaceReply.seq)) {
      this.showListWarn("a", spaceReply.data.space.a.missing);
      this.showListWarn("b", spaceReply.data.space.b.missing);
    }

    if (!words.length) {
      this.statusBox.textContent = "enter words of interest to score";
      return;
    }
    const scoresReply = await this.api.post<ScoresDoc>("/bias/scores", {
      ...spaceBody,
      words,
    });
    if (this.gate.apply("bars", scoresReply.seq)) {
      this.renderBars(scoresReply.seq, scoresReply.data, listA.name, listB.name);
    }

    const listC =
      this.selects.c.value !== NONE ? this.state.getList(this.selects.c.value) : undefined;
    const listD =
      this.selects.d.value !== NONE ? this.state.getList(this.selects.d.value) : undefined;
    if (listC && listD) {
      const planeReply = await this.api.post<Scores2dDoc>("/bias/scores2d", {
        embedding_id: embedding,
        x: { a: this.listDoc(listA), b: this.listDoc(listB), method },
        y: { a: this.listDoc(listC), b: this.listDoc(listD), method },
        words,
      });
      if (this.gate.apply("plane", planeReply.seq)) {
        this.renderPlane(planeReply.seq, planeReply.data, {
          x: `${listA.name} vs ${listB.name}`,
          y: `${listC.name} vs ${listD.name}`,
        });
      }
    } else {
      clear(this.planeBox);
    }
  }

  private showListWarn(slot: "a" | "b", missing: string[]): void {
    this.warns[slot].textContent = missing.length
      ? `not in vocabulary: ${missing.join(", ")}`
      : "";
  }

  private renderBars(
    seq: number,
    doc: ScoresDoc,
    nameA: string,
    nameB: string,
  ): void {
    clear(this.barsBox);
    this.barsBox.appendChild(
      el("div", { class: "axis-caption" }, `← ${nameB}   |   ${nameA} →`),
    );
    const items: BarItem[] = doc.scores.map((s) => ({
      label: s.token,
      value: s.score,
      valueSpan: traced({ seq, raw: s.score, text: fmt(s.score, 3) }),
    }));
    this.barsBox.appendChild(signedBars(items));
    this.wordsWarn.textContent = doc.missing.length
      ? `not in vocabulary: ${doc.missing.join(", ")}`
      : "";
  }

  private renderPlane(
    seq: number,
    doc: Scores2dDoc,
    labels: { x: string; y: string },
  ): void {
    clear(this.planeBox);
    const svg = scatter(
      doc.points.map((p) => ({
        label: p.token,
        x: p.x,
        y: p.y,
        color: "#1d4ed8",
        opacity: 1,
      })),
      { xLabel: labels.x, yLabel: labels.y },
    );
    svg.setAttribute("data-seq", String(seq));
    this.planeBox.appendChild(svg);
  }
}
