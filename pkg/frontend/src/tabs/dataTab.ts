/**
 * Data tab: pick a corpus, look up a word, see where it lives.
 *
 * Post-conditions per lookup: the frequency histogram highlights the
 * bin holding the query word, per-collection counts and percents are
 * shown, and a seeded concordance sample is drawn.  Every click of
 * "new sample" bumps the seed, so each sample is fresh but the exact
 * request (and therefore the exact sample) is reproducible from the
 * request log.
 */

import { ApiClient } from "../api.js";
import { clear, el, traced } from "../dom.js";
import { fmt } from "../format.js";
import { histogram } from "../charts.js";
import { ViewGate } from "../log.js";
import { SessionState } from "../state.js";
import type { ConcordanceDoc, CorporaDoc, FrequencyDoc } from "../types.js";

export class DataTab {
  private gate = new ViewGate();
  private sampleCounter = 0;

  private corpusSelect!: HTMLSelectElement;
  private wordInput!: HTMLInputElement;
  private maxLines!: HTMLInputElement;
  private maxLinesValue!: HTMLSpanElement;
  private collectionsBox!: HTMLElement;
  private frequencyBox!: HTMLElement;
  private linesBox!: HTMLElement;
  private statusBox!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly state: SessionState,
  ) {}

  async init(): Promise<void> {
    this.build();
    const reply = await this.api.get<CorporaDoc>("/corpora");
    clear(this.corpusSelect);
    for (const corpus of reply.data.corpora) {
      this.corpusSelect.appendChild(el("option", { value: corpus.id }, corpus.id));
    }
    const first = reply.data.corpora[0];
    if (first) this.state.activeCorpus = first.id;
  }

  private build(): void {
    const controls = el("div", { class: "controls" });
    this.corpusSelect = el("select", { "data-role": "corpus" });
    this.corpusSelect.addEventListener("change", () => {
      this.state.activeCorpus = this.corpusSelect.value;
    });
    this.wordInput = el("input", {
      "data-role": "word",
      placeholder: "word to look up",
    });
    const lookupBtn = el("button", { "data-role": "lookup" }, "look up");
    lookupBtn.addEventListener("click", () => {
      void this.lookup();
    });
    this.maxLines = el("input", {
      type: "range",
      min: "1",
      max: "20",
      value: "5",
      "data-role": "maxlines",
    });
    this.maxLinesValue = el("span", { "data-role": "maxlines-value" }, "5");
    this.maxLines.addEventListener("input", () => {
      this.maxLinesValue.textContent = this.maxLines.value;
    });
    const sampleBtn = el("button", { "data-role": "sample" }, "new sample");
    sampleBtn.addEventListener("click", () => {
      void this.sample();
    });

    controls.append(
      el("label", {}, "corpus "),
      this.corpusSelect,
      el("label", {}, " word "),
      this.wordInput,
      lookupBtn,
      el("label", {}, " contexts "),
      this.maxLines,
      this.maxLinesValue,
      sampleBtn,
    );

    this.statusBox = el("div", { class: "status", "data-role": "status" });
    this.collectionsBox = el("div", { "data-role": "collections" });
    this.frequencyBox = el("div", { "data-role": "frequency" });
    this.linesBox = el("div", { "data-role": "lines" });
    this.root.append(
      controls,
      this.statusBox,
      this.frequencyBox,
      this.collectionsBox,
      this.linesBox,
    );
  }

  async lookup(): Promise<void> {
    const word = this.wordInput.value.trim();
    if (!word) {
      this.statusBox.textContent = "enter a word first";
      return;
    }
    this.statusBox.textContent = "";
    const corpus = this.corpusSelect.value;
    const freq = this.api.get<FrequencyDoc>("/data/frequency", {
      corpus_id: corpus,
      token: word,
    });
    const lines = this.sample();
    const reply = await freq;
    if (this.gate.apply("frequency", reply.seq)) {
      this.renderFrequency(reply.seq, reply.data);
    }
    await lines;
  }

  async sample(): Promise<void> {
    const word = this.wordInput.value.trim();
    if (!word) return;
    const seed = ++this.sampleCounter;
    const checked = this.checkedCollections();
    const reply = await this.api.get<ConcordanceDoc>("/data/concordance", {
      corpus_id: this.corpusSelect.value,
      token: word,
      max_lines: Number(this.maxLines.value),
      seed,
      collections: checked,
    });
    if (this.gate.apply("lines", reply.seq)) {
      this.renderLines(reply.seq, reply.data);
    }
  }

  /** Comma-joined subset, or undefined when every box is checked. */
  private checkedCollections(): string | undefined {
    const boxes = [
      ...this.collectionsBox.querySelectorAll<HTMLInputElement>("input[type=checkbox]"),
    ];
    if (!boxes.length) return undefined;
    const checked = boxes.filter((b) => b.checked).map((b) => b.value);
    if (checked.length === boxes.length || checked.length === 0) return undefined;
    return checked.join(",");
  }

  private renderFrequency(seq: number, doc: FrequencyDoc): void {
    clear(this.frequencyBox);
    const summary = el("div", { class: "freq-summary" });
    summary.append(
      el("span", {}, `'${doc.token}': `),
      traced({ seq, raw: doc.total_count, text: String(doc.total_count) }),
      el("span", {}, " occurrences"),
    );
    if (doc.rank !== null) {
      summary.append(
        el("span", {}, ", frequency rank "),
        traced({ seq, raw: doc.rank, text: String(doc.rank) }),
      );
    }
    this.frequencyBox.appendChild(summary);
    this.frequencyBox.appendChild(histogram(doc.distribution, doc.token_bin));

    const table = el("div", { class: "per-collection" });
    for (const row of doc.per_collection) {
      const line = el("div", { class: "collection-row" });
      line.append(
        el("span", { class: "collection-name" }, row.collection),
        traced({ seq, raw: row.count, text: String(row.count) }),
        el("span", {}, " ("),
        traced({ seq, raw: row.percent, text: fmt(row.percent, 1) + "%" }),
        el("span", {}, ")"),
      );
      table.appendChild(line);
    }
    this.frequencyBox.appendChild(table);
    this.rebuildCollectionFilters(doc);
  }

  private rebuildCollectionFilters(doc: FrequencyDoc): void {
    clear(this.collectionsBox);
    if (!doc.per_collection.length) return;
    this.collectionsBox.appendChild(el("span", {}, "collections: "));
    for (const row of doc.per_collection) {
      const label = el("label", { class: "col-filter" });
      const box = el("input", { type: "checkbox", value: row.collection });
      box.checked = true;
      label.append(box, el("span", {}, row.collection));
      this.collectionsBox.appendChild(label);
    }
  }

  private renderLines(seq: number, doc: ConcordanceDoc): void {
    clear(this.linesBox);
    if (!doc.lines.length) {
      this.linesBox.appendChild(
        el("div", { class: "status" }, `no sentences contain '${doc.token}'`),
      );
      return;
    }
    for (const line of doc.lines) {
      const row = el(
        "div",
        { class: "concordance-line" },
        `[${line.collection}/${line.doc_id}] ${line.sentence}`,
      );
      row.dataset.seq = String(seq);
      this.linesBox.appendChild(row);
    }
  }
}
