// Thin typed client for the backend HTTP API. Non-2xx responses become
// ApiError values carrying the server's structured payload, so the UI can
// show server messages verbatim and treat 422 as a blocked mutation.

import {
  ErrorDoc,
  ErrorSchema,
  GraphDoc,
  GraphSchema,
  MutateResponse,
  MutateResponseSchema,
  QpDoc,
  QpSchema,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly payload: ErrorDoc | null;

  constructor(status: number, payload: ErrorDoc | null, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.payload = payload;
  }

  get kind(): string {
    return this.payload ? this.payload.error.type : "http";
  }

  get blocked(): boolean {
    return this.status === 422;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async qp(braid: string, strands?: number | null): Promise<QpDoc> {
    const params = new URLSearchParams({ braid });
    if (strands != null) params.set("strands", String(strands));
    const raw = await this.request(`/api/qp?${params}`, undefined);
    return QpSchema.parse(raw);
  }

  async mutate(qp: QpDoc, vertex: string): Promise<MutateResponse> {
    const raw = await this.request("/api/mutate", { qp, vertex });
    return MutateResponseSchema.parse(raw);
  }

  async explore(qp: QpDoc, depth: number, budget = 1000): Promise<GraphDoc> {
    const raw = await this.request("/api/explore", { qp, depth, budget });
    return GraphSchema.parse(raw);
  }

  async health(): Promise<boolean> {
    try {
      const res = await this.fetchImpl(`${this.base}/api/health`);
      return res.ok;
    } catch {
      return false;
    }
  }

  private async request(path: string, body: unknown): Promise<unknown> {
    const init: RequestInit =
      body === undefined
        ? {}
        : {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
          };
    const res = await this.fetchImpl(`${this.base}${path}`, init);
    if (!res.ok) {
      let payload: ErrorDoc | null = null;
      let message = `HTTP ${res.status}`;
      try {
        const parsed = ErrorSchema.safeParse(await res.json());
        if (parsed.success) {
          payload = parsed.data;
          message = parsed.data.error.message;
        }
      } catch {
        // non-JSON body: keep the generic message
      }
      throw new ApiError(res.status, payload, message);
    }
    return res.json();
  }
}
