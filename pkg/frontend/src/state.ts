/**
 * Session state shared by the tabs: named word lists, bias space
 * definitions, words of interest, and the active artifact ids.
 *
 * Export/import uses the same manifest document the service's session
 * export and the audit runner consume, so a saved session file can be
 * re-imported here, replayed as an audit, or inspected as plain JSON.
 * List colors are a display concern and stay out of the manifest.
 */

import type { ManifestList, ManifestSpace, SessionManifest } from "./types.js";

export interface StoredList {
  name: string;
  words: string[];
  language?: string;
}

export class SessionState {
  private listMap = new Map<string, StoredList>();
  /** UI-only list colors, keyed by list name. */
  readonly colors = new Map<string, string>();
  spaces: ManifestSpace[] = [];
  wordsOfInterest: string[] = [];
  activeEmbedding: string | null = null;
  activeCorpus: string | null = null;
  activeLm: string | null = null;

  private listeners: (() => void)[] = [];

  lists(): StoredList[] {
    return [...this.listMap.values()];
  }

  getList(name: string): StoredList | undefined {
    return this.listMap.get(name);
  }

  upsertList(list: StoredList): void {
    if (!list.name) throw new Error("a word list needs a name");
    this.listMap.set(list.name, {
      name: list.name,
      words: [...list.words],
      ...(list.language ? { language: list.language } : {}),
    });
    this.notify();
  }

  removeList(name: string): void {
    this.listMap.delete(name);
    this.colors.delete(name);
    this.notify();
  }

  /** The list (if any) that contains a word; used for point coloring. */
  listOf(word: string): StoredList | undefined {
    for (const list of this.listMap.values()) {
      if (list.words.includes(word)) return list;
    }
    return undefined;
  }

  exportManifest(): SessionManifest {
    const lists: ManifestList[] = this.lists().map((l) => ({
      name: l.name,
      words: [...l.words],
      ...(l.language ? { language: l.language } : {}),
    }));
    return {
      seed: 0,
      embeddings: this.activeEmbedding
        ? [{ id: this.activeEmbedding, path: "" }]
        : [],
      lists,
      spaces: this.spaces.map((s) => ({ ...s })),
      words_of_interest: [...this.wordsOfInterest],
    };
  }

  /** Replace the session with a manifest document; throws on bad shape. */
  importManifest(doc: unknown): void {
    if (typeof doc !== "object" || doc === null) {
      throw new Error("a session manifest must be a JSON object");
    }
    const m = doc as Partial<SessionManifest>;
    if (!Array.isArray(m.lists)) {
      throw new Error("manifest field 'lists' must be an array");
    }
    const lists: StoredList[] = m.lists.map((l, i) => {
      if (typeof l !== "object" || l === null || typeof l.name !== "string") {
        throw new Error(`manifest list ${i} needs a string 'name'`);
      }
      if (!Array.isArray(l.words) || l.words.some((w) => typeof w !== "string")) {
        throw new Error(`manifest list '${l.name}' needs string 'words'`);
      }
      return {
        name: l.name,
        words: [...l.words],
        ...(typeof l.language === "string" ? { language: l.language } : {}),
      };
    });
    const spaces = Array.isArray(m.spaces) ? m.spaces : [];
    for (const s of spaces) {
      if (
        typeof s !== "object" ||
        s === null ||
        typeof s.name !== "string" ||
        typeof s.a !== "string" ||
        typeof s.b !== "string"
      ) {
        throw new Error("each manifest space needs string 'name', 'a', 'b'");
      }
    }
    const words = Array.isArray(m.words_of_interest) ? m.words_of_interest : [];
    if (words.some((w) => typeof w !== "string")) {
      throw new Error("manifest field 'words_of_interest' must hold strings");
    }

    this.listMap.clear();
    for (const list of lists) this.listMap.set(list.name, list);
    this.spaces = spaces.map((s) => ({ ...s }));
    this.wordsOfInterest = [...words];
    const embeddings = Array.isArray(m.embeddings) ? m.embeddings : [];
    const first = embeddings[0];
    if (first && typeof first === "object" && typeof first.id === "string") {
      this.activeEmbedding = first.id;
    }
    this.notify();
  }

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }
}
