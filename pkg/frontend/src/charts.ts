/**
 * Hand-rolled charts.  The histogram and scatter are SVG built directly
 * with createElementNS; the signed bar chart is plain HTML so its value
 * labels can carry traceability attributes.  No chart renders a number
 * as text on its own; numeric labels are supplied by the tabs as
 * already-traced spans.
 */

import { el } from "./dom.js";

const SVG = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export interface HistogramBin {
  lo: number;
  hi: number;
  tokens: number;
}

/**
 * Frequency histogram: one bar per bin; the bin holding the query word
 * (if any) is marked with the "hl" class.
 */
export function histogram(
  bins: HistogramBin[],
  highlightBin: number | null,
  width = 440,
  height = 120,
): SVGElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });
  if (!bins.length) return svg;
  const maxTokens = Math.max(1, ...bins.map((b) => b.tokens));
  const barWidth = width / bins.length;
  bins.forEach((bin, i) => {
    const h = (bin.tokens / maxTokens) * (height - 4);
    const rect = svgEl("rect", {
      x: String(i * barWidth + 1),
      y: String(height - h),
      width: String(Math.max(1, barWidth - 2)),
      height: String(Math.max(bin.tokens > 0 ? 2 : 0, h)),
      class: i === highlightBin ? "bar hl" : "bar",
    });
    const title = svgEl("title", {});
    title.textContent = `${bin.tokens} tokens with count in [${bin.lo.toFixed(1)}, ${bin.hi.toFixed(1)})`;
    rect.appendChild(title);
    svg.appendChild(rect);
  });
  return svg;
}

export interface BarItem {
  label: string;
  value: number;
  /** Already-traced value span rendered next to the bar. */
  valueSpan: HTMLElement;
}

/**
 * Signed horizontal bars around a center line: negative values grow
 * left ("neg"), positive grow right ("pos").  Scale is the largest
 * absolute value.
 */
export function signedBars(items: BarItem[]): HTMLElement {
  const box = el("div", { class: "signed-bars" });
  const maxAbs = Math.max(1e-12, ...items.map((it) => Math.abs(it.value)));
  for (const item of items) {
    const row = el("div", { class: "bar-row" });
    row.appendChild(el("span", { class: "bar-label" }, item.label));
    const track = el("div", { class: "bar-track" });
    const half = Math.abs(item.value) / maxAbs / 2;
    const bar = el("div", {
      class: item.value < 0 ? "bar-fill neg" : "bar-fill pos",
    });
    bar.style.width = `${(half * 100).toFixed(2)}%`;
    if (item.value < 0) {
      bar.style.marginLeft = `${((0.5 - half) * 100).toFixed(2)}%`;
    } else {
      bar.style.marginLeft = "50%";
    }
    track.appendChild(bar);
    row.appendChild(track);
    row.appendChild(item.valueSpan);
    box.appendChild(row);
  }
  return box;
}

export interface ScatterPoint {
  label: string;
  x: number;
  y: number;
  color: string;
  opacity: number;
  /** Draw de-emphasized (related words pulled in as neighbors). */
  related?: boolean;
}

export interface ScatterOptions {
  width?: number;
  height?: number;
  fontSize?: number;
  xLabel?: string;
  yLabel?: string;
}

/** Labeled scatter with zero axes when 0 is inside the data range. */
export function scatter(points: ScatterPoint[], opts: ScatterOptions = {}): SVGElement {
  const width = opts.width ?? 460;
  const height = opts.height ?? 320;
  const fontSize = opts.fontSize ?? 12;
  const pad = 30;
  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });
  if (!points.length) return svg;

  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs, 0);
  const xMax = Math.max(...xs, 0);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys, 0);
  const xSpan = xMax - xMin || 1;
  const ySpan = yMax - yMin || 1;
  const sx = (x: number) => pad + ((x - xMin) / xSpan) * (width - 2 * pad);
  const sy = (y: number) => height - pad - ((y - yMin) / ySpan) * (height - 2 * pad);

  svg.appendChild(
    svgEl("line", {
      x1: String(sx(xMin)),
      y1: String(sy(0)),
      x2: String(sx(xMax)),
      y2: String(sy(0)),
      class: "axis",
    }),
  );
  svg.appendChild(
    svgEl("line", {
      x1: String(sx(0)),
      y1: String(sy(yMin)),
      x2: String(sx(0)),
      y2: String(sy(yMax)),
      class: "axis",
    }),
  );
  if (opts.xLabel) {
    const label = svgEl("text", {
      x: String(width - pad),
      y: String(height - 6),
      class: "axis-label",
      "text-anchor": "end",
      "font-size": String(fontSize),
    });
    label.textContent = opts.xLabel;
    svg.appendChild(label);
  }
  if (opts.yLabel) {
    const label = svgEl("text", {
      x: "6",
      y: String(pad - 8),
      class: "axis-label",
      "font-size": String(fontSize),
    });
    label.textContent = opts.yLabel;
    svg.appendChild(label);
  }

  for (const point of points) {
    const cls = point.related ? "pt related" : "pt";
    const dot = svgEl("circle", {
      cx: String(sx(point.x)),
      cy: String(sy(point.y)),
      r: point.related ? "3" : "4",
      fill: point.color,
      "fill-opacity": String(point.opacity),
      class: cls,
      "data-token": point.label,
    });
    const title = svgEl("title", {});
    title.textContent = `${point.label} (${point.x.toFixed(3)}, ${point.y.toFixed(3)})`;
    dot.appendChild(title);
    svg.appendChild(dot);
    const text = svgEl("text", {
      x: String(sx(point.x) + 6),
      y: String(sy(point.y) + 4),
      fill: point.color,
      "fill-opacity": String(point.opacity),
      "font-size": String(fontSize),
      class: cls,
    });
    text.textContent = point.label;
    svg.appendChild(text);
  }
  return svg;
}
