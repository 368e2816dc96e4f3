/**
 * Page bootstrap: wires the transport, request log, session state, the
 * four tabs, the request-log panel, and session export/import.
 */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { RequestLog } from "./log.js";
import { SessionState } from "./state.js";
import { httpTransport } from "./transport.js";
import { DataTab } from "./tabs/dataTab.js";
import { ExploreTab } from "./tabs/exploreTab.js";
import { SentenceBiasTab } from "./tabs/sentenceBiasTab.js";
import { WordBiasTab } from "./tabs/wordBiasTab.js";
import type { SessionDoc } from "./types.js";

const TAB_NAMES = [
  "Data",
  "Explore Words",
  "Biases in Words",
  "Biases in Sentences",
] as const;

function renderLogPanel(panel: HTMLElement, log: RequestLog): void {
  clear(panel);
  panel.appendChild(el("h3", {}, "request log"));
  const entries = [...log.entries()].slice(-30).reverse();
  for (const entry of entries) {
    panel.appendChild(
      el(
        "div",
        { class: "log-entry" },
        `#${entry.seq} ${entry.method} ${entry.path} → ${entry.status ?? "…"}`,
      ),
    );
  }
}

function startApp(baseUrl: string): void {
  const appRoot = document.querySelector<HTMLElement>("#app");
  if (!appRoot) throw new Error("missing #app container");
  clear(appRoot);

  const log = new RequestLog();
  const api = new ApiClient(httpTransport(baseUrl), log);
  const state = new SessionState();

  const tabBar = el("div", { class: "tab-bar" });
  const panes: HTMLElement[] = [];
  TAB_NAMES.forEach((name, i) => {
    const btn = el("button", { class: i === 0 ? "tab-btn active" : "tab-btn" }, name);
    btn.addEventListener("click", () => {
      tabBar.querySelectorAll(".tab-btn").forEach((b, j) => {
        b.classList.toggle("active", j === i);
        panes[j].style.display = j === i ? "" : "none";
      });
    });
    tabBar.appendChild(btn);
    const pane = el("div", { class: "tab-pane" });
    pane.style.display = i === 0 ? "" : "none";
    panes.push(pane);
  });

  const toolbar = el("div", { class: "session-toolbar" });
  const exportBtn = el("button", {}, "export session");
  exportBtn.addEventListener("click", () => {
    const blob = new Blob([JSON.stringify(state.exportManifest(), null, 2)], {
      type: "application/json",
    });
    const a = el("a", { download: "session-manifest.json" });
    a.href = URL.createObjectURL(blob);
    a.click();
    URL.revokeObjectURL(a.href);
  });
  const importInput = el("input", { type: "file", accept: ".json" });
  importInput.addEventListener("change", () => {
    const file = importInput.files?.[0];
    if (!file) return;
    void file.text().then((text) => {
      try {
        state.importManifest(JSON.parse(text));
        status.textContent = "session imported";
      } catch (err) {
        status.textContent = `import failed: ${(err as Error).message}`;
      }
    });
  });
  const saveBtn = el("button", {}, "save to service");
  saveBtn.addEventListener("click", () => {
    void (async () => {
      const created = await api.post<SessionDoc>("/sessions", { name: "workbench" });
      const id = created.data.session.session_id;
      for (const list of state.lists()) {
        await api.put(`/sessions/${id}/lists/${list.name}`, {
          words: list.words,
          ...(list.language ? { language: list.language } : {}),
        });
      }
      status.textContent = `saved as ${id}`;
    })().catch((err: Error) => {
      status.textContent = `save failed: ${err.message}`;
    });
  });
  const status = el("span", { class: "status" });
  toolbar.append(exportBtn, importInput, saveBtn, status);

  const logPanel = el("div", { class: "log-panel" });
  log.onChange(() => renderLogPanel(logPanel, log));
  renderLogPanel(logPanel, log);

  appRoot.append(toolbar, tabBar, ...panes, logPanel);

  const tabs = [
    new DataTab(panes[0], api, state),
    new ExploreTab(panes[1], api, state),
    new WordBiasTab(panes[2], api, state),
    new SentenceBiasTab(panes[3], api),
  ];
  for (const tab of tabs) {
    tab.init().catch((err: Error) => {
      status.textContent = `startup request failed: ${err.message}`;
    });
  }
}

function boot(): void {
  const form = document.querySelector<HTMLElement>("#connect");
  if (!form) return;
  const input = form.querySelector<HTMLInputElement>("input");
  const button = form.querySelector<HTMLButtonElement>("button");
  if (!input || !button) return;
  button.addEventListener("click", () => startApp(input.value.trim()));
}

boot();
