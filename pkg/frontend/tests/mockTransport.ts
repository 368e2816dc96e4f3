/**
 * Transports for tests.
 *
 * fixtureTransport replays interactions recorded from the real service
 * (scripts/record_fixtures.py), matching on method + path + deep-equal
 * body; an unmatched request fails loudly so drift between the UI's
 * requests and the recordings is caught immediately.
 *
 * ManualTransport parks requests until the test resolves them, for
 * exercising out-of-order responses.
 */

import type { Transport, TransportResponse } from "../src/transport.js";
import fixturesJson from "./fixtures/recorded.json";

export interface Fixture {
  method: string;
  path: string;
  body: unknown;
  status: number;
  response: unknown;
}

export const fixtures = fixturesJson as Fixture[];

export function deepEqual(a: unknown, b: unknown): boolean {
  if (a === b) return true;
  if (typeof a !== typeof b) return false;
  if (Array.isArray(a) || Array.isArray(b)) {
    if (!Array.isArray(a) || !Array.isArray(b) || a.length !== b.length) {
      return false;
    }
    return a.every((item, i) => deepEqual(item, b[i]));
  }
  if (typeof a === "object" && a !== null && b !== null) {
    const left = a as Record<string, unknown>;
    const right = b as Record<string, unknown>;
    const keys = Object.keys(left);
    if (keys.length !== Object.keys(right).length) return false;
    return keys.every((k) => deepEqual(left[k], right[k]));
  }
  return false;
}

export function fixtureTransport(): Transport {
  return async (method, path, body) => {
    const hit = fixtures.find(
      (f) =>
        f.method === method &&
        f.path === path &&
        deepEqual(f.body ?? undefined, body),
    );
    if (!hit) {
      throw new Error(
        `no recorded fixture for ${method} ${path} body=${JSON.stringify(body)}`,
      );
    }
    return { status: hit.status, body: hit.response };
  };
}

interface Pending {
  method: string;
  path: string;
  body: unknown;
  resolve: (res: TransportResponse) => void;
}

export class ManualTransport {
  readonly pending: Pending[] = [];

  readonly transport: Transport = (method, path, body) =>
    new Promise<TransportResponse>((resolve) => {
      this.pending.push({ method, path, body, resolve });
    });

  resolve(index: number, status: number, body: unknown): void {
    const entry = this.pending[index];
    if (!entry) throw new Error(`no pending request at index ${index}`);
    entry.resolve({ status, body });
  }
}
