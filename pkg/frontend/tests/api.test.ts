import { describe, expect, it } from "vitest";
import {
  ApiError,
  lodRequest,
  maximinRequest,
  NetworkError,
  PanelFetcher,
  powerCurveRequest,
  powerPointRequest,
  StaleResponse,
  type FetchLike,
} from "../src/api.js";
import { DEFAULT_SCENARIO, type ScenarioConfig } from "../src/config.js";

const cfg: ScenarioConfig = { ...DEFAULT_SCENARIO };

describe("request builders", () => {
  it("builds the interaction LOD request", () => {
    const { path, body } = lodRequest(cfg);
    expect(path).toBe("/v1/lod/hte");
    expect(body).toEqual({
      cost: { total_budget: 100000, cluster_cost: 500, individual_cost: 50 },
      icc: { rho_y: 0.05, rho_x: 0.75 },
      scales: { var_y_given_x: 1, var_x: 1, var_w: 0.25 },
      design_space: { m_min: 2, m_max: null, n_min: 6 },
    });
  });

  it("routes by objective and carries lambda for compound", () => {
    expect(lodRequest({ ...cfg, objective: "ate" }).path).toBe("/v1/lod/ate");
    const compound = lodRequest({ ...cfg, objective: "compound", lambda: 0.6 });
    expect(compound.path).toBe("/v1/lod/compound");
    expect(compound.body["lambda"]).toBe(0.6);
    expect(lodRequest({ ...cfg, objective: "ate" }).body["rho_y"]).toBe(0.05);
  });

  it("builds maximin requests with an optional surface query", () => {
    expect(maximinRequest(cfg).path).toBe("/v1/maximin/hte");
    expect(maximinRequest(cfg, true).path).toBe("/v1/maximin/hte?surface=true");
    const body = maximinRequest(cfg).body;
    expect(body["space"]).toEqual({
      rho_y_range: [0.005, 0.2],
      rho_x_range: [0.1, 1.0],
      grid_steps: 40,
    });
  });

  it("gives the interaction power test an icc pair and the average test rho_y", () => {
    const hte = powerPointRequest(cfg, { m: 22, n: 62 }, "hte");
    expect(hte.body["icc"]).toEqual({ rho_y: 0.05, rho_x: 0.75 });
    const ate = powerPointRequest(cfg, { m: 22, n: 62 }, "ate");
    expect(ate.body["rho_y"]).toBe(0.05);
    expect(ate.body["icc"]).toBeUndefined();
  });

  it("passes explicit outcome-ICC levels to the curve", () => {
    const req = powerCurveRequest(cfg, { m: 22, n: 62 }, "hte", [0.01, 0.1]);
    expect(req.path).toBe("/v1/power/curve");
    expect(req.body["rho_y_values"]).toEqual([0.01, 0.1]);
  });
});

function jsonResponse(status: number, payload: unknown) {
  return { ok: status < 400, status, json: async () => payload };
}

describe("PanelFetcher", () => {
  it("returns the envelope on success", async () => {
    const fetchImpl: FetchLike = async () =>
      jsonResponse(200, { schema_version: "1", inputs: {}, compute_seconds: 0, result: { x: 1 } });
    const fetcher = new PanelFetcher("http://api", fetchImpl);
    const env = await fetcher.post<{ x: number }>("/v1/lod/hte", {});
    expect(env.result.x).toBe(1);
  });

  it("maps 400/422/413 to typed errors", async () => {
    const payloads: Record<number, unknown> = {
      400: { error: "validation", details: [{ field: "cost.individual_cost", message: "must be positive" }] },
      422: { error: "degenerate", message: "no admissible design" },
      413: { error: "too_large", message: "cap exceeded" },
    };
    for (const status of [400, 422, 413]) {
      const fetcher = new PanelFetcher("http://api", async () =>
        jsonResponse(status, payloads[status]),
      );
      const err = await fetcher.post("/x", {}).catch((e) => e);
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(status);
    }
    const fetcher = new PanelFetcher("http://api", async () =>
      jsonResponse(400, payloads[400]),
    );
    const err = (await fetcher.post("/x", {}).catch((e) => e)) as ApiError;
    expect(err.kind).toBe("validation");
    expect(err.details[0].field).toBe("cost.individual_cost");
  });

  it("wraps transport failures as NetworkError", async () => {
    const fetcher = new PanelFetcher("http://api", async () => {
      throw new Error("ECONNREFUSED");
    });
    const err = await fetcher.post("/x", {}).catch((e) => e);
    expect(err).toBeInstanceOf(NetworkError);
  });

  it("drops a response superseded by a newer request", async () => {
    let release!: () => void;
    const gate = new Promise<void>((resolve) => (release = resolve));
    let call = 0;
    const fetchImpl: FetchLike = async () => {
      call += 1;
      if (call === 1) await gate; // first request resolves only after the second lands
      return jsonResponse(200, {
        schema_version: "1",
        inputs: {},
        compute_seconds: 0,
        result: { call },
      });
    };
    const fetcher = new PanelFetcher("http://api", fetchImpl);
    const first = fetcher.post<{ call: number }>("/x", { v: 1 });
    const second = fetcher.post<{ call: number }>("/x", { v: 2 });
    release();
    await expect(first).rejects.toBeInstanceOf(StaleResponse);
    const env = await second;
    expect(env.result.call).toBe(2);
  });

  it("treats an identical re-request as fresh, not stale", async () => {
    const fetchImpl: FetchLike = async () =>
      jsonResponse(200, { schema_version: "1", inputs: {}, compute_seconds: 0, result: {} });
    const fetcher = new PanelFetcher("http://api", fetchImpl);
    await fetcher.post("/x", { v: 1 });
    await expect(fetcher.post("/x", { v: 1 })).resolves.toBeTruthy();
  });
});
