/**
 * Transport boundary: one function that moves a request to the service
 * and returns {status, body}.  The real app uses fetch; tests plug in a
 * fixture-replaying mock, so everything above this line is testable
 * without a network.
 */

export interface TransportResponse {
  status: number;
  body: unknown;
}

export type Transport = (
  method: string,
  path: string,
  body?: unknown,
) => Promise<TransportResponse>;

export function httpTransport(baseUrl: string): Transport {
  const base = baseUrl.replace(/\/+$/, "");
  return async (method, path, body) => {
    const res = await fetch(base + path, {
      method,
      headers:
        body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return { status: res.status, body: await res.json() };
  };
}
