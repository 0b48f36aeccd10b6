// Thin typed client for the service. fetch is injectable so tests can run
// without a network; errors split into ServiceError (the service answered
// with a stage-tagged message) and plain rejection (unreachable).

import type {
  BuildResponse,
  FlexResponse,
  NetResponse,
  ParamsDoc,
  SampleResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  readonly status: number;
  readonly stage: string;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = "ServiceError";
    this.status = status;
    this.stage = detail.includes(":") ? detail.slice(0, detail.indexOf(":")) : "service";
  }
}

// what the controller needs; tests substitute a scripted fake
export interface Api {
  build(params: ParamsDoc): Promise<BuildResponse>;
  flex(params: ParamsDoc, maxSamples?: number): Promise<FlexResponse>;
  sample(params: ParamsDoc, s: number): Promise<SampleResponse>;
  net(params: ParamsDoc): Promise<NetResponse>;
}

export class ApiClient implements Api {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  async health(): Promise<{ status: string; format: string }> {
    const r = await this.fetchFn(`${this.base}/health`);
    if (!r.ok) throw new ServiceError(r.status, `service: health check failed (${r.status})`);
    return r.json();
  }

  build(params: ParamsDoc): Promise<BuildResponse> {
    return this.post("/build", { params });
  }

  flex(params: ParamsDoc, maxSamples = 400): Promise<FlexResponse> {
    return this.post("/flex", { params, max_samples: maxSamples });
  }

  sample(params: ParamsDoc, s: number): Promise<SampleResponse> {
    return this.post("/sample", { params, s });
  }

  net(params: ParamsDoc): Promise<NetResponse> {
    return this.post("/net", { params });
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const r = await this.fetchFn(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!r.ok) throw new ServiceError(r.status, await detailOf(r));
    return r.json() as Promise<T>;
  }
}

async function detailOf(r: Response): Promise<string> {
  try {
    const body = await r.json();
    if (body && typeof body.detail === "string") return body.detail;
    return `service: HTTP ${r.status}`;
  } catch {
    return `service: HTTP ${r.status}`;
  }
}
