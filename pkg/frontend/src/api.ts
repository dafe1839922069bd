// Typed client for the lhc HTTP/JSON service. Every response arrives in the
// {ok, data, error} envelope; ApiError carries the server's message and
// status so views can distinguish "unknown term" (404) from other failures.

export interface StatementDoc {
  s: string;
  p: string;
  o: string;
  prov: string;
  weight: number;
  relevance?: number;
  match_terms?: string[];
  predicate_label?: string;
  derived?: boolean;
}

export interface TermDoc {
  id: string;
  label: string;
  kind: string;
  synonyms?: string[];
  statements?: number;
}

export interface NeighborhoodDoc {
  terms: TermDoc[];
  statements: StatementDoc[];
}

export interface HypothesisResponse {
  plausibility: number;
  evidence: StatementDoc[];
}

export interface ConceptDoc {
  id: string;
  label: string;
  members: string[];
}

export interface HealthDoc {
  statements: number;
  terms: number;
}

export type FeedbackDirection = "up" | "down";

export interface StatementKey {
  s: string;
  p: string;
  o: string;
  prov: string;
}

interface Envelope<T> {
  ok: boolean;
  data: T | null;
  error: string | null;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }

  get isNoMatch(): boolean {
    return this.status === 404;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`, 0);
    }
    let envelope: Envelope<T>;
    try {
      envelope = (await response.json()) as Envelope<T>;
    } catch {
      throw new ApiError(`bad response (${response.status})`, response.status);
    }
    if (!envelope.ok || envelope.data === null) {
      throw new ApiError(envelope.error ?? `request failed (${response.status})`, response.status);
    }
    return envelope.data;
  }

  health(): Promise<HealthDoc> {
    return this.request("/health");
  }

  search(query: string, limit = 10): Promise<StatementDoc[]> {
    return this.request(`/search?q=${encodeURIComponent(query)}&limit=${limit}`);
  }

  term(id: string): Promise<TermDoc> {
    return this.request(`/term/${encodeURIComponent(id)}`);
  }

  neighborhood(id: string, radius: 1 | 2, limit = 50): Promise<NeighborhoodDoc> {
    return this.request(
      `/term/${encodeURIComponent(id)}/neighborhood?radius=${radius}&limit=${limit}`,
    );
  }

  hypothesis(expr: unknown): Promise<HypothesisResponse> {
    return this.request("/hypothesis", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ expr }),
    });
  }

  feedback(key: StatementKey, direction: FeedbackDirection): Promise<StatementDoc> {
    return this.request("/feedback", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ...key, direction }),
    });
  }

  concepts(): Promise<ConceptDoc[]> {
    return this.request("/concepts");
  }
}

// Discards stale responses: each logical slot (e.g. "search box") keeps the
// id of its newest request; anything older resolves to null. State updates
// therefore apply in response-arrival order but only for the latest request.
export class LatestGate {
  private readonly ids = new Map<string, number>();
  private next = 0;

  async run<T>(slot: string, work: () => Promise<T>): Promise<T | null> {
    const id = ++this.next;
    this.ids.set(slot, id);
    const result = await work();
    return this.ids.get(slot) === id ? result : null;
  }
}

export function statementKey(st: StatementDoc): StatementKey {
  return { s: st.s, p: st.p, o: st.o, prov: st.prov };
}

export function keyString(key: StatementKey): string {
  return [key.s, key.p, key.o, key.prov].join("|");
}
