// Test scaffolding: a fetch stub that records every request and serves
// canned envelopes, so tests can compare on-screen values against the
// intercepted payloads.

import { ApiClient } from "../src/api.js";

export interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

export type Responder = (url: string, init?: RequestInit) => unknown;

export function fakeApi(responder: Responder): { api: ApiClient; requests: Recorded[] } {
  const requests: Recorded[] = [];
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    requests.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : null,
    });
    const result = responder(url, init);
    if (result instanceof Error) throw result;
    const status = (result as { __status?: number }).__status ?? 200;
    return {
      status,
      json: async () => result,
    } as unknown as Response;
  };
  return { api: new ApiClient("", fetchFn), requests };
}

export function ok(data: unknown): unknown {
  return { ok: true, data, error: null };
}

export function fail(error: string, status = 400): unknown {
  return { ok: false, data: null, error, __status: status };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
