/**
 * Thin typed client over the transport.  Every call is logged before it
 * leaves and completed when it lands; callers get the response data plus
 * the seq for traceability and staleness checks.
 */

import type { Transport } from "./transport.js";
import { RequestLog } from "./log.js";

export interface ApiReply<T> {
  seq: number;
  data: T;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly seq: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type Params = Record<string, string | number | undefined>;

function buildQuery(params: Params): string {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value === undefined) continue;
    parts.push(`${key}=${encodeURIComponent(String(value))}`);
  }
  return parts.length ? `?${parts.join("&")}` : "";
}

export class ApiClient {
  constructor(
    private readonly transport: Transport,
    readonly log: RequestLog,
  ) {}

  get<T>(path: string, params: Params = {}): Promise<ApiReply<T>> {
    return this.send<T>("GET", path + buildQuery(params));
  }

  post<T>(path: string, body: unknown): Promise<ApiReply<T>> {
    return this.send<T>("POST", path, body);
  }

  put<T>(path: string, body: unknown): Promise<ApiReply<T>> {
    return this.send<T>("PUT", path, body);
  }

  private async send<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<ApiReply<T>> {
    const seq = this.log.begin(method, path, body ?? null);
    const res = await this.transport(method, path, body);
    this.log.complete(seq, res.status, res.body);
    if (res.status >= 400) {
      const envelope = res.body as { error?: { code?: string; message?: string } };
      throw new ApiError(
        envelope.error?.code ?? "unknown",
        envelope.error?.message ?? `request failed with status ${res.status}`,
        res.status,
        seq,
      );
    }
    return { seq, data: res.body as T };
  }
}
