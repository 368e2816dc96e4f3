/** Number formatting and probability renormalization for display. */

export function fmt(x: number, digits = 3): string {
  return x.toFixed(digits);
}

export function pct(share: number, digits = 1): string {
  return (100 * share).toFixed(digits) + "%";
}

/**
 * Shares of each raw probability within the shown set.  The service
 * returns probabilities over the whole vocabulary; the visible ranking
 * is a subset, so bars show p_i / sum(shown) with the raw value kept
 * on hover.  An all-zero input stays all-zero.
 */
export function renormalize(raw: number[]): number[] {
  const total = raw.reduce((acc, p) => acc + p, 0);
  if (total <= 0) return raw.map(() => 0);
  return raw.map((p) => p / total);
}
