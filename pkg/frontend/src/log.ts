/**
 * Sequence-numbered request log.
 *
 * Every API call gets a seq at issue time.  Entries keep the request
 * and the response verbatim, which buys two properties:
 *
 *  - traceability: any number on screen carries the seq of the entry
 *    it came from (data-seq / data-raw attributes), so a reviewer can
 *    point at a pixel and find the API response behind it;
 *  - freshness: a view applies a response only when its seq is newer
 *    than the last one applied, so a slow response never overwrites a
 *    newer one (ViewGate below).
 */

export interface LogEntry {
  seq: number;
  method: string;
  path: string;
  request: unknown;
  /** null until the response (or failure) lands. */
  status: number | null;
  response: unknown;
}

export class RequestLog {
  private items: LogEntry[] = [];
  private nextSeq = 1;
  private listeners: (() => void)[] = [];

  /** Reserve a seq at issue time; ordering reflects issue order. */
  begin(method: string, path: string, request: unknown): number {
    const seq = this.nextSeq++;
    this.items.push({ seq, method, path, request, status: null, response: null });
    this.notify();
    return seq;
  }

  complete(seq: number, status: number, response: unknown): void {
    const entry = this.bySeq(seq);
    if (!entry) throw new Error(`no log entry with seq ${seq}`);
    entry.status = status;
    entry.response = response;
    this.notify();
  }

  entries(): readonly LogEntry[] {
    return this.items;
  }

  bySeq(seq: number): LogEntry | undefined {
    return this.items.find((e) => e.seq === seq);
  }

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }
}

/** Per-view monotonic seq filter: stale responses are discarded. */
export class ViewGate {
  private applied = new Map<string, number>();

  /** True when seq is newer than anything this view has shown. */
  apply(view: string, seq: number): boolean {
    const last = this.applied.get(view) ?? 0;
    if (seq <= last) return false;
    this.applied.set(view, seq);
    return true;
  }
}
