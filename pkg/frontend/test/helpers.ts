// Scripted service doubles and small document builders for the tests.
// Responses are canned but shaped exactly like the real payloads.

import type { Api } from "../src/api.js";
import type {
  BuildDiagnostics,
  BuildResponse,
  FlexResponse,
  MeshDoc,
  NetResponse,
  ParamsDoc,
  SampleResponse,
  TrajectorySample,
  Vec3,
} from "../src/types.js";

export function mkMesh(): MeshDoc {
  return {
    format: "polyflex/1",
    vertices: [
      { id: "a", xyz: [1, 1, 1] },
      { id: "b", xyz: [1, -1, -1] },
      { id: "c", xyz: [-1, 1, -1] },
      { id: "d", xyz: [-1, -1, 1] },
    ],
    faces: [
      ["a", "c", "b"],
      ["a", "b", "d"],
      ["a", "d", "c"],
      ["b", "c", "d"],
    ],
  };
}

export function mkDiagnostics(over: Partial<BuildDiagnostics> = {}): BuildDiagnostics {
  return {
    vertices: 8,
    edges: 18,
    faces: 12,
    volume: -16.2079443,
    tent_volume: -16.2079443,
    tent_face: ["B", "A'", "C"],
    range_edge: "B|C",
    flex_dimension: 1,
    intersections: 0,
    intersection_pairs: [],
    embedded: true,
    x: 4.826489407426479,
    y: 6.564678209935351,
    ...over,
  };
}

export function mkBuild(over: Partial<BuildDiagnostics> = {}): BuildResponse {
  return { mesh: mkMesh(), diagnostics: mkDiagnostics(over) };
}

export function mkSample(s: number, over: Partial<TrajectorySample> = {}): TrajectorySample {
  const config: Record<string, Vec3> = {};
  for (const v of mkMesh().vertices) {
    config[v.id] = [v.xyz[0] + s, v.xyz[1], v.xyz[2]];
  }
  return {
    s,
    config,
    volume: -16.2079443,
    max_residual: 3e-13,
    intersections: 0,
    folds: { "a|b": "mountain", "a|c": s < 0.5 ? "valley" : "mountain" },
    ...over,
  };
}

export function mkFlex(range = 0.5219, samples?: TrajectorySample[]): FlexResponse {
  return {
    format: "polyflex/1",
    driving: "B|C",
    samples: samples ?? [mkSample(0.0), mkSample(0.3), mkSample(0.7), mkSample(1.0)],
    range,
    range_edge: "B|C",
  };
}

type Result<T> = { ok: T } | { error: unknown };

class Channel<T> {
  calls: unknown[][] = [];
  private script: (Result<T> | (() => Promise<T>))[] = [];
  private fallback: Result<T> | null = null;

  respond(value: T): void {
    this.script.push({ ok: value });
  }

  reject(error: unknown): void {
    this.script.push({ error });
  }

  defer(): { resolve(value: T): void; reject(error: unknown): void } {
    let res!: (v: T) => void;
    let rej!: (e: unknown) => void;
    const promise = new Promise<T>((a, b) => {
      res = a;
      rej = b;
    });
    this.script.push(() => promise);
    return { resolve: res, reject: rej };
  }

  always(value: T): void {
    this.fallback = { ok: value };
  }

  alwaysReject(error: unknown): void {
    this.fallback = { error };
  }

  invoke(args: unknown[]): Promise<T> {
    this.calls.push(args);
    const next = this.script.shift() ?? this.fallback;
    if (next === null || next === undefined) {
      return Promise.reject(new Error("channel exhausted: no scripted response"));
    }
    if (typeof next === "function") return next();
    if ("ok" in next) return Promise.resolve(next.ok);
    return Promise.reject(next.error);
  }
}

export class FakeApi implements Api {
  readonly buildCh = new Channel<BuildResponse>();
  readonly flexCh = new Channel<FlexResponse>();
  readonly sampleCh = new Channel<SampleResponse>();
  readonly netCh = new Channel<NetResponse>();

  build(params: ParamsDoc): Promise<BuildResponse> {
    return this.buildCh.invoke([params]);
  }

  flex(params: ParamsDoc, maxSamples?: number): Promise<FlexResponse> {
    return this.flexCh.invoke([params, maxSamples]);
  }

  sample(params: ParamsDoc, s: number): Promise<SampleResponse> {
    return this.sampleCh.invoke([params, s]);
  }

  net(params: ParamsDoc): Promise<NetResponse> {
    return this.netCh.invoke([params]);
  }
}

export function happyApi(): FakeApi {
  const api = new FakeApi();
  api.buildCh.always(mkBuild());
  api.flexCh.always(mkFlex());
  api.netCh.always({ svg: "<svg>net</svg>" });
  const smp = mkSample(0.3);
  api.sampleCh.always({
    s: smp.s,
    config: smp.config,
    volume: smp.volume,
    max_residual: smp.max_residual,
    intersections: 0,
    intersection_pairs: [],
    folds: smp.folds,
  });
  return api;
}

// settle all queued microtasks without advancing fake timers
export async function flushMicrotasks(rounds = 8): Promise<void> {
  for (let i = 0; i < rounds; i++) await Promise.resolve();
}
