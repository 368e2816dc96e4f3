/** Small DOM builders; every displayed API number goes through traced(). */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

export interface TracedValue {
  /** Seq of the log entry the value came from. */
  seq: number;
  /** The raw number exactly as the API sent it. */
  raw: number;
  /** What to show (usually a rounded rendering of raw). */
  text: string;
  title?: string;
}

/**
 * A span displaying a number from an API response.  data-seq points at
 * the request-log entry, data-raw holds the unrounded value, and the
 * title shows it on hover.
 */
export function traced(value: TracedValue, className = "num"): HTMLSpanElement {
  const span = el("span", { class: className }, value.text);
  span.dataset.seq = String(value.seq);
  span.dataset.raw = String(value.raw);
  span.title = value.title ?? String(value.raw);
  return span;
}
