import { describe, expect, it } from "vitest";

import { ApiClient, ServiceError, type FetchLike } from "../src/api.js";
import { DEFAULT_PARAMS } from "../src/presets.js";
import { mkBuild } from "./helpers.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function recordingFetch(
  status: number,
  payload: unknown,
): { fetchFn: FetchLike; calls: Recorded[] } {
  const calls: Recorded[] = [];
  const fetchFn: FetchLike = (url, init) => {
    calls.push({ url, init });
    return Promise.resolve(
      new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      }),
    );
  };
  return { fetchFn, calls };
}

describe("ApiClient", () => {
  it("posts /build with params wrapped in a document", async () => {
    const { fetchFn, calls } = recordingFetch(200, mkBuild());
    const client = new ApiClient("http://127.0.0.1:8008", fetchFn);
    const r = await client.build(DEFAULT_PARAMS);
    expect(r.diagnostics.embedded).toBe(true);
    expect(calls).toHaveLength(1);
    expect(calls[0]!.url).toBe("http://127.0.0.1:8008/build");
    expect(calls[0]!.init?.method).toBe("POST");
    expect(JSON.parse(calls[0]!.init?.body as string)).toEqual({ params: DEFAULT_PARAMS });
  });

  it("posts /flex with an explicit sample budget", async () => {
    const { fetchFn, calls } = recordingFetch(200, { samples: [] });
    const client = new ApiClient("http://127.0.0.1:8008", fetchFn);
    await client.flex(DEFAULT_PARAMS, 37);
    expect(calls[0]!.url).toBe("http://127.0.0.1:8008/flex");
    expect(JSON.parse(calls[0]!.init?.body as string)).toEqual({
      params: DEFAULT_PARAMS,
      max_samples: 37,
    });
  });

  it("defaults the /flex sample budget when none is given", async () => {
    const { fetchFn, calls } = recordingFetch(200, { samples: [] });
    await new ApiClient("http://x", fetchFn).flex(DEFAULT_PARAMS);
    const body = JSON.parse(calls[0]!.init?.body as string);
    expect(body.max_samples).toBeGreaterThan(0);
  });

  it("posts /sample with the arc-length position", async () => {
    const { fetchFn, calls } = recordingFetch(200, {});
    await new ApiClient("http://x", fetchFn).sample(DEFAULT_PARAMS, 0.25);
    expect(calls[0]!.url).toBe("http://x/sample");
    expect(JSON.parse(calls[0]!.init?.body as string)).toEqual({
      params: DEFAULT_PARAMS,
      s: 0.25,
    });
  });

  it("posts /net and returns the svg document", async () => {
    const { fetchFn, calls } = recordingFetch(200, { svg: "<svg/>" });
    const r = await new ApiClient("http://x", fetchFn).net(DEFAULT_PARAMS);
    expect(r.svg).toBe("<svg/>");
    expect(calls[0]!.url).toBe("http://x/net");
  });

  it("trims a trailing slash from the base url", async () => {
    const { fetchFn, calls } = recordingFetch(200, { status: "ok", format: "polyflex/1" });
    await new ApiClient("http://127.0.0.1:8008/", fetchFn).health();
    expect(calls[0]!.url).toBe("http://127.0.0.1:8008/health");
  });

  it("turns a stage-tagged error body into a ServiceError with that stage", async () => {
    const detail = "bricard1: base shape infeasible: no consistent apex position";
    const { fetchFn } = recordingFetch(422, { detail });
    const client = new ApiClient("http://x", fetchFn);
    const err = await client.build(DEFAULT_PARAMS).catch((e) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect(err.status).toBe(422);
    expect(err.stage).toBe("bricard1");
    expect(err.message).toBe(detail);
  });

  it("tags a malformed-params rejection with the params stage", async () => {
    const { fetchFn } = recordingFetch(400, { detail: "params: missing field 'format'" });
    const err = await new ApiClient("http://x", fetchFn).build(DEFAULT_PARAMS).catch((e) => e);
    expect(err.status).toBe(400);
    expect(err.stage).toBe("params");
  });

  it("falls back to a generic stage when the error body is not a detail doc", async () => {
    const fetchFn: FetchLike = () =>
      Promise.resolve(new Response("gateway timeout", { status: 504 }));
    const err = await new ApiClient("http://x", fetchFn).build(DEFAULT_PARAMS).catch((e) => e);
    expect(err).toBeInstanceOf(ServiceError);
    expect(err.stage).toBe("service");
    expect(err.message).toBe("service: HTTP 504");
  });

  it("lets a network failure propagate untouched", async () => {
    const boom = new TypeError("fetch failed");
    const fetchFn: FetchLike = () => Promise.reject(boom);
    const err = await new ApiClient("http://x", fetchFn).build(DEFAULT_PARAMS).catch((e) => e);
    expect(err).toBe(boom);
    expect(err).not.toBeInstanceOf(ServiceError);
  });
});
