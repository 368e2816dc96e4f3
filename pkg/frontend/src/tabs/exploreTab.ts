/**
 * Explore-words tab: colored word lists flattened to a 2-D scatter.
 *
 * The "show related words" toggle asks the service to expand each query
 * word with its nearest neighbors; those arrive tagged with the word
 * that pulled them in and render de-emphasized at the neighbor opacity.
 * Opacity and label-size sliders re-render the last response without a
 * new request.
 */

import { ApiClient } from "../api.js";
import { scatter, type ScatterPoint } from "../charts.js";
import { clear, el, traced } from "../dom.js";
import { fmt } from "../format.js";
import { ViewGate } from "../log.js";
import { SessionState } from "../state.js";
import type { EmbeddingsDoc, ProjectionDoc } from "../types.js";

const PALETTE = ["#c2410c", "#1d4ed8", "#15803d", "#7c3aed", "#b91c1c", "#0e7490"];
const DEFAULT_COLOR = "#555555";

export class ExploreTab {
  private gate = new ViewGate();
  private last: { seq: number; doc: ProjectionDoc } | null = null;

  private listsBox!: HTMLElement;
  private embeddingSelect!: HTMLSelectElement;
  private relatedToggle!: HTMLInputElement;
  private relatedCount!: HTMLInputElement;
  private opacitySlider!: HTMLInputElement;
  private fontSlider!: HTMLInputElement;
  private chartBox!: HTMLElement;
  private varianceBox!: HTMLElement;
  private statusBox!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: SessionState,
  ) {}

  async init(): Promise<void> {
    this.build();
    this.state.onChange(() => this.renderListEditors());
    this.renderListEditors();
    const reply = await this.api.get<EmbeddingsDoc>("/embeddings");
    clear(this.embeddingSelect);
    for (const emb of reply.data.embeddings) {
      this.embeddingSelect.appendChild(el("option", { value: emb.id }, emb.id));
    }
    const first = reply.data.embeddings[0];
    if (first) this.state.activeEmbedding = first.id;
  }

  private build(): void {
    this.listsBox = el("div", { "data-role": "lists" });
    const addBtn = el("button", { "data-role": "addlist" }, "add list");
    addBtn.addEventListener("click", () => {
      const name = `list-${this.state.lists().length + 1}`;
      this.state.colors.set(
        name,
        PALETTE[this.state.lists().length % PALETTE.length],
      );
      this.state.upsertList({ name, words: [] });
    });

    const controls = el("div", { class: "controls" });
    this.embeddingSelect = el("select", { "data-role": "embedding" });
    this.embeddingSelect.addEventListener("change", () => {
      this.state.activeEmbedding = this.embeddingSelect.value;
    });
    this.relatedToggle = el("input", { type: "checkbox", "data-role": "related" });
    this.relatedCount = el("input", {
      type: "number",
      min: "1",
      max: "10",
      value: "2",
      "data-role": "related-count",
    });
    this.opacitySlider = el("input", {
      type: "range",
      min: "10",
      max: "100",
      value: "40",
      "data-role": "opacity",
    });
    this.fontSlider = el("input", {
      type: "range",
      min: "8",
      max: "24",
      value: "12",
      "data-role": "fontsize",
    });
    for (const slider of [this.opacitySlider, this.fontSlider]) {
      slider.addEventListener("input", () => {
        if (this.last) this.renderScatter(this.last.seq, this.last.doc);
      });
    }
    const plotBtn = el("button", { "data-role": "plot" }, "plot");
    plotBtn.addEventListener("click", () => {
      void this.plot();
    });

    const relatedLabel = el("label", {});
    relatedLabel.append(
      this.relatedToggle,
      el("span", {}, " show related words, up to "),
      this.relatedCount,
      el("span", {}, " each"),
    );
    controls.append(
      el("label", {}, "embedding "),
      this.embeddingSelect,
      relatedLabel,
      el("label", {}, " neighbor opacity "),
      this.opacitySlider,
      el("label", {}, " label size "),
      this.fontSlider,
      plotBtn,
    );

    this.statusBox = el("div", { class: "status", "data-role": "status" });
    this.chartBox = el("div", { "data-role": "chart" });
    this.varianceBox = el("div", { "data-role": "variance" });
    this.root.append(this.listsBox, addBtn, controls, this.statusBox, this.chartBox, this.varianceBox);
  }

  /** One editable row per word list: name, color, space-separated words. */
  private renderListEditors(): void {
    clear(this.listsBox);
    for (const list of this.state.lists()) {
      const row = el("div", { class: "list-row", "data-list": list.name });
      const nameSpan = el("span", { class: "list-name" }, list.name);
      const color = el("input", { type: "color", "data-role": "color" });
      color.value = this.state.colors.get(list.name) ?? DEFAULT_COLOR;
      color.addEventListener("input", () => {
        this.state.colors.set(list.name, color.value);
        if (this.last) this.renderScatter(this.last.seq, this.last.doc);
      });
      const words = el("input", {
        "data-role": "words",
        placeholder: "words separated by spaces",
      });
      words.value = list.words.join(" ");
      words.addEventListener("change", () => {
        this.state.upsertList({
          ...list,
          words: words.value.split(/\s+/).filter(Boolean),
        });
      });
      const remove = el("button", { "data-role": "remove" }, "remove");
      remove.addEventListener("click", () => this.state.removeList(list.name));
      row.append(nameSpan, color, words, remove);
      this.listsBox.appendChild(row);
    }
  }

  async plot(): Promise<void> {
    const tokens: string[] = [];
    for (const list of this.state.lists()) {
      for (const word of list.words) {
        if (!tokens.includes(word)) tokens.push(word);
      }
    }
    if (!tokens.length) {
      this.statusBox.textContent = "add some words to a list first";
      return;
    }
    const body: Record<string, unknown> = {
      embedding_id: this.embeddingSelect.value,
      tokens,
    };
    if (this.relatedToggle.checked) {
      body.include_neighbors = Number(this.relatedCount.value);
    }
    const reply = await this.api.post<ProjectionDoc>("/explore/projection", body);
    if (!this.gate.apply("projection", reply.seq)) return;
    this.last = { seq: reply.seq, doc: reply.data };
    this.renderScatter(reply.seq, reply.data);
  }

  private renderScatter(seq: number, doc: ProjectionDoc): void {
    const neighborOpacity = Number(this.opacitySlider.value) / 100;
    const fontSize = Number(this.fontSlider.value);
    const points: ScatterPoint[] = doc.points.map((p) => {
      const owner = p.source ?? p.token;
      const list = this.state.listOf(owner);
      const color = list
        ? (this.state.colors.get(list.name) ?? DEFAULT_COLOR)
        : DEFAULT_COLOR;
      return {
        label: p.token,
        x: p.x,
        y: p.y,
        color,
        opacity: p.source === null ? 1 : neighborOpacity,
        related: p.source !== null,
      };
    });
    clear(this.chartBox);
    const svg = scatter(points, { fontSize });
    svg.setAttribute("data-seq", String(seq));
    this.chartBox.appendChild(svg);

    clear(this.varianceBox);
    this.varianceBox.appendChild(el("span", {}, "explained variance: "));
    doc.explained_variance.forEach((v, i) => {
      if (i > 0) this.varianceBox.appendChild(el("span", {}, ", "));
      this.varianceBox.appendChild(traced({ seq, raw: v, text: fmt(v, 3) }));
    });
    this.statusBox.textContent = doc.missing.length
      ? `not in vocabulary: ${doc.missing.join(", ")}`
      : "";
  }
}
