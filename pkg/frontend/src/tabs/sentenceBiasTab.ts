/**
 * Biases-in-sentences tab: blank filling and sentence-pair preference.
 *
 * The template must contain exactly one '*'; validation runs on every
 * keystroke and an invalid template never reaches the service.  Ranked
 * completions show renormalized shares (bars sum to 100% over what is
 * shown) while the hover title and data-raw carry the service's raw
 * probability and log-probability.
 */

import { ApiClient } from "../api.js";
import { clear, el, traced } from "../dom.js";
import { fmt, pct, renormalize } from "../format.js";
import { ViewGate } from "../log.js";
import { templateError } from "../template.js";
import type { BlankDoc, LmsDoc, PairDoc } from "../types.js";

export class SentenceBiasTab {
  private gate = new ViewGate();

  private lmSelect!: HTMLSelectElement;
  private templateInput!: HTMLInputElement;
  private templateErrorBox!: HTMLElement;
  private candidatesInput!: HTMLInputElement;
  private unwantedInput!: HTMLInputElement;
  private noFunctionToggle!: HTMLInputElement;
  private topNInput!: HTMLInputElement;
  private rankBtn!: HTMLButtonElement;
  private rankedBox!: HTMLElement;
  private stereoInput!: HTMLInputElement;
  private antiInput!: HTMLInputElement;
  private tagInput!: HTMLInputElement;
  private pairBox!: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async init(): Promise<void> {
    this.build();
    const reply = await this.api.get<LmsDoc>("/lms");
    clear(this.lmSelect);
    for (const lm of reply.data.lms) {
      this.lmSelect.appendChild(
        el("option", { value: lm.id }, `${lm.id} (order ${lm.order})`),
      );
    }
  }

  private build(): void {
    const blank = el("div", { class: "controls" });
    this.lmSelect = el("select", { "data-role": "lm" });
    this.templateInput = el("input", {
      "data-role": "template",
      placeholder: "sentence with one * blank",
    });
    this.templateErrorBox = el("span", {
      class: "warn",
      "data-role": "template-error",
    });
    this.templateInput.addEventListener("input", () => this.validateTemplate());
    this.candidatesInput = el("input", {
      "data-role": "candidates",
      placeholder: "candidates (optional)",
    });
    this.unwantedInput = el("input", {
      "data-role": "unwanted",
      placeholder: "unwanted (optional)",
    });
    this.noFunctionToggle = el("input", {
      type: "checkbox",
      "data-role": "nofunction",
    });
    this.topNInput = el("input", {
      type: "number",
      min: "1",
      value: "5",
      "data-role": "topn",
    });
    this.rankBtn = el("button", { "data-role": "rank" }, "rank completions");
    this.rankBtn.addEventListener("click", () => {
      void this.rank();
    });
    const noFunctionLabel = el("label", {});
    noFunctionLabel.append(this.noFunctionToggle, el("span", {}, " skip function words"));
    blank.append(
      el("label", {}, "scorer "),
      this.lmSelect,
      el("label", {}, " template "),
      this.templateInput,
      this.templateErrorBox,
      el("label", {}, " candidates "),
      this.candidatesInput,
      el("label", {}, " unwanted "),
      this.unwantedInput,
      noFunctionLabel,
      el("label", {}, " top "),
      this.topNInput,
      this.rankBtn,
    );
    this.rankedBox = el("div", { "data-role": "ranked" });

    const pair = el("div", { class: "controls" });
    this.stereoInput = el("input", {
      "data-role": "stereo",
      placeholder: "first sentence",
    });
    this.antiInput = el("input", {
      "data-role": "anti",
      placeholder: "second sentence",
    });
    this.tagInput = el("input", { "data-role": "tag", placeholder: "tag (optional)" });
    const compareBtn = el("button", { "data-role": "compare" }, "compare pair");
    compareBtn.addEventListener("click", () => {
      void this.compare();
    });
    pair.append(
      el("label", {}, "pair "),
      this.stereoInput,
      this.antiInput,
      this.tagInput,
      compareBtn,
    );
    this.pairBox = el("div", { "data-role": "pair" });

    this.root.append(
      el("h3", {}, "fill a blank"),
      blank,
      this.rankedBox,
      el("h3", {}, "compare a sentence pair"),
      pair,
      this.pairBox,
    );
  }

  /** Live validation; an invalid template disables the rank button. */
  private validateTemplate(): string | null {
    const err = templateError(this.templateInput.value);
    this.templateErrorBox.textContent = err ?? "";
    this.rankBtn.disabled = err !== null;
    return err;
  }

  async rank(): Promise<void> {
    if (this.validateTemplate() !== null) return;
    const body: Record<string, unknown> = {
      lm_id: this.lmSelect.value,
      template: this.templateInput.value,
      top_n: Number(this.topNInput.value),
    };
    const candidates = this.candidatesInput.value.split(/\s+/).filter(Boolean);
    if (candidates.length) body.candidates = candidates;
    const unwanted = this.unwantedInput.value.split(/\s+/).filter(Boolean);
    if (unwanted.length) body.unwanted = unwanted;
    if (this.noFunctionToggle.checked) body.exclude_function_words = true;

    const reply = await this.api.post<BlankDoc>("/sentences/blank", body);
    if (this.gate.apply("ranked", reply.seq)) {
      this.renderRanked(reply.seq, reply.data);
    }
  }

  private renderRanked(seq: number, doc: BlankDoc): void {
    clear(this.rankedBox);
    const shares = renormalize(doc.ranked.map((r) => r.probability));
    doc.ranked.forEach((ranked, i) => {
      const row = el("div", { class: "ranked-row" });
      row.append(el("span", { class: "ranked-word" }, ranked.word));
      const track = el("div", { class: "share-track" });
      const bar = el("div", { class: "share-fill" });
      bar.style.width = `${(shares[i] * 100).toFixed(2)}%`;
      track.appendChild(bar);
      row.appendChild(track);
      row.appendChild(
        traced({
          seq,
          raw: ranked.probability,
          text: pct(shares[i]),
          title:
            `raw p=${ranked.probability} ` +
            `logp=${ranked.log_probability} ` +
            `(share of the ${doc.ranked.length} shown)`,
        }),
      );
      this.rankedBox.appendChild(row);
    });
  }

  async compare(): Promise<void> {
    const stereo = this.stereoInput.value.trim();
    const anti = this.antiInput.value.trim();
    if (!stereo || !anti) {
      this.pairBox.textContent = "both sentences are required";
      return;
    }
    const body: Record<string, unknown> = {
      lm_id: this.lmSelect.value,
      stereo,
      anti,
    };
    const tag = this.tagInput.value.trim();
    if (tag) body.tag = tag;
    const reply = await this.api.post<PairDoc>("/sentences/pair", body);
    if (this.gate.apply("pair", reply.seq)) {
      this.renderPair(reply.seq, reply.data);
    }
  }

  private renderPair(seq: number, doc: PairDoc): void {
    clear(this.pairBox);
    const verdict =
      doc.preference > 0
        ? "the scorer prefers the first sentence"
        : doc.preference < 0
          ? "the scorer prefers the second sentence"
          : "no preference";
    const summary = el("div", { class: "pair-summary" });
    summary.append(
      el("span", {}, "preference "),
      traced({ seq, raw: doc.preference, text: fmt(doc.preference, 4) }),
      el("span", {}, ` — ${verdict}`),
    );
    const detail = el("div", { class: "pair-detail" });
    detail.append(
      el("span", {}, `"${doc.stereo}": `),
      traced({ seq, raw: doc.stereo_score, text: fmt(doc.stereo_score, 4) }),
      el("span", {}, ` per token; "${doc.anti}": `),
      traced({ seq, raw: doc.anti_score, text: fmt(doc.anti_score, 4) }),
      el("span", {}, " per token"),
    );
    this.pairBox.append(summary, detail);
  }
}
