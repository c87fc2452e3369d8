// Thin typed client over the service API.  The fetch implementation is
// injectable so tests can feed recorded responses through the same path.

import type {
  Delta,
  EditOp,
  EditResponse,
  ErrorPayload,
  QueryResponse,
  SentenceDoc,
  TheoryView,
  WhatIfResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly payload: ErrorPayload,
    readonly status: number,
  ) {
    super(`${payload.type}: ${payload.reason}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    const body = await response.json();
    if (!response.ok) {
      const payload: ErrorPayload = body?.error ?? {
        type: "http_error",
        reason: `status ${response.status}`,
      };
      throw new ApiError(payload, response.status);
    }
    return body as T;
  }

  private post<T>(path: string, doc: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
  }

  getTheory(): Promise<TheoryView> {
    return this.request<TheoryView>("/theory");
  }

  loadSentences(
    sentences: SentenceDoc[],
    source: "gold" | "template" = "template",
  ): Promise<TheoryView> {
    return this.post<TheoryView>("/theory", { sentences, source });
  }

  edit(edits: EditOp[]): Promise<EditResponse> {
    return this.post<EditResponse>("/edit", { edits });
  }

  query(encoded: string): Promise<QueryResponse> {
    return this.post<QueryResponse>("/query", { query: encoded });
  }

  whatIf(edits: EditOp[], encoded: string): Promise<WhatIfResponse> {
    return this.post<WhatIfResponse>("/whatif", { edits, query: encoded });
  }

  implications(): Promise<{ implications: Array<{ encoded: string; depth: number }> }> {
    return this.request("/implications");
  }

  contradictions(): Promise<{ contradictions: unknown[] }> {
    return this.request("/contradictions");
  }

  abduce(encoded: string, maxSetSize = 2): Promise<{ hypotheses: unknown[][] }> {
    return this.post("/abduce", { query: encoded, max_set_size: maxSetSize });
  }
}

export type { Delta };
