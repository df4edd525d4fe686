/** Typed request builders for the /v1 HTTP API and a per-panel fetcher
 *  that keeps at most one request in flight and drops stale responses. */

import type { ScenarioConfig } from "./config.js";
import { requestHash } from "./hash.js";

// ---------------------------------------------------------------------------
// Wire types (mirror the server's JSON schemas)
// ---------------------------------------------------------------------------

export interface CostModelIn {
  total_budget: number;
  cluster_cost: number;
  individual_cost: number;
}

export interface IccIn {
  rho_y: number;
  rho_x: number;
}

export interface ScalesIn {
  var_y_given_x: number;
  var_x: number;
  var_w: number;
}

export interface DesignSpaceIn {
  m_min: number;
  m_max: number | null;
  n_min: number;
}

export interface ParameterSpaceIn {
  rho_y_range: [number, number];
  rho_x_range: [number, number];
  grid_steps: number;
}

export interface EffectsIn {
  beta_ate: number;
  beta_hte: number;
  alpha: number;
}

export interface Envelope<R> {
  schema_version: string;
  inputs: unknown;
  compute_seconds: number;
  result: R;
}

export interface LodResult {
  design: { m: number; n: number };
  capped: boolean;
  condition_satisfied: boolean;
  m_continuous: number;
  objective_value: number;
}

export interface SurfaceRecord {
  m: number;
  n: number;
  rho_y: number;
  rho_x: number;
  value: number;
  kind: string;
  lambda: number | null;
}

export interface MaximinResult {
  design: { m: number; n: number };
  min_value: number;
  kind: string;
  lambda: number | null;
  worst_case_iccs: IccIn[];
  surface?: SurfaceRecord[];
}

export interface PowerPointResult {
  test: string;
  design: { m: number; n: number };
  power: number;
  standardized_effect: number;
  variance_used: number;
  alpha: number;
}

export interface PowerBoundsResult {
  test: string;
  design: { m: number; n: number };
  lower: number;
  upper: number;
  argmin_icc: IccIn;
  argmax_icc: IccIn;
  degenerate_iccs: IccIn[];
}

export interface CurveRecord {
  test: string;
  m: number;
  n: number;
  rho_y: number;
  rho_x: number;
  effect: number;
  alpha: number;
  power: number;
}

export interface ApiFieldError {
  field: string;
  message: string;
}

// ---------------------------------------------------------------------------
// Request builders from the UI scenario state
// ---------------------------------------------------------------------------

export function costOf(cfg: ScenarioConfig): CostModelIn {
  return {
    total_budget: cfg.budget,
    cluster_cost: cfg.clusterCost,
    individual_cost: cfg.indivCost,
  };
}

export function iccOf(cfg: ScenarioConfig): IccIn {
  return { rho_y: cfg.rhoY, rho_x: cfg.rhoX };
}

export function scalesOf(cfg: ScenarioConfig): ScalesIn {
  return { var_y_given_x: cfg.varY, var_x: cfg.varX, var_w: cfg.varW };
}

export function designSpaceOf(cfg: ScenarioConfig): DesignSpaceIn {
  return { m_min: cfg.mMin, m_max: cfg.mMax, n_min: cfg.minClusters };
}

export function parameterSpaceOf(cfg: ScenarioConfig): ParameterSpaceIn {
  return {
    rho_y_range: cfg.rhoYRange,
    rho_x_range: cfg.rhoXRange,
    grid_steps: cfg.gridSteps,
  };
}

export function effectsOf(cfg: ScenarioConfig): EffectsIn {
  return {
    beta_ate: cfg.effectAte,
    beta_hte: cfg.effectHte,
    alpha: cfg.alpha,
  };
}

export function lodRequest(cfg: ScenarioConfig): {
  path: string;
  body: Record<string, unknown>;
} {
  const base = {
    cost: costOf(cfg),
    scales: scalesOf(cfg),
    design_space: designSpaceOf(cfg),
  };
  if (cfg.objective === "ate") {
    return { path: "/v1/lod/ate", body: { ...base, rho_y: cfg.rhoY } };
  }
  if (cfg.objective === "compound") {
    return {
      path: "/v1/lod/compound",
      body: { ...base, icc: iccOf(cfg), lambda: cfg.lambda },
    };
  }
  return { path: "/v1/lod/hte", body: { ...base, icc: iccOf(cfg) } };
}

export function maximinRequest(
  cfg: ScenarioConfig,
  surface = false,
): { path: string; body: Record<string, unknown> } {
  const body: Record<string, unknown> = {
    cost: costOf(cfg),
    space: parameterSpaceOf(cfg),
    scales: scalesOf(cfg),
    design_space: designSpaceOf(cfg),
  };
  if (cfg.objective === "compound") body["lambda"] = cfg.lambda;
  const query = surface ? "?surface=true" : "";
  return { path: `/v1/maximin/${cfg.objective}${query}`, body };
}

export function powerPointRequest(
  cfg: ScenarioConfig,
  design: { m: number; n: number },
  test: "hte" | "ate",
): { path: string; body: Record<string, unknown> } {
  const body: Record<string, unknown> = {
    design,
    effects: effectsOf(cfg),
    test,
    scales: scalesOf(cfg),
  };
  if (test === "hte") body["icc"] = iccOf(cfg);
  else body["rho_y"] = cfg.rhoY;
  return { path: "/v1/power/point", body };
}

export function powerBoundsRequest(
  cfg: ScenarioConfig,
  design: { m: number; n: number },
  test: "hte" | "ate",
): { path: string; body: Record<string, unknown> } {
  return {
    path: "/v1/power/bounds",
    body: {
      design,
      effects: effectsOf(cfg),
      space: parameterSpaceOf(cfg),
      test,
      scales: scalesOf(cfg),
    },
  };
}

export function powerCurveRequest(
  cfg: ScenarioConfig,
  design: { m: number; n: number },
  test: "hte" | "ate",
  rhoYValues?: number[],
): { path: string; body: Record<string, unknown> } {
  const req = powerBoundsRequest(cfg, design, test);
  if (rhoYValues) req.body["rho_y_values"] = rhoYValues;
  return { path: "/v1/power/curve", body: req.body };
}

// ---------------------------------------------------------------------------
// Errors and transport
// ---------------------------------------------------------------------------

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly kind: "validation" | "degenerate" | "too_large" | "other",
    message: string,
    public readonly details: ApiFieldError[] = [],
  ) {
    super(message);
  }
}

export class NetworkError extends Error {}

/** Marker thrown internally when a newer request superseded this one. */
export class StaleResponse extends Error {}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string; signal?: AbortSignal },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

async function parseError(status: number, payload: unknown): Promise<ApiError> {
  const body = (payload ?? {}) as Record<string, unknown>;
  if (status === 400) {
    const details = (body["details"] as ApiFieldError[]) ?? [];
    const msg = details.map((d) => d.message).join("; ") || "invalid request";
    return new ApiError(status, "validation", msg, details);
  }
  if (status === 422) {
    return new ApiError(status, "degenerate", String(body["message"] ?? "degenerate design"));
  }
  if (status === 413) {
    return new ApiError(status, "too_large", String(body["message"] ?? "grid too large"));
  }
  return new ApiError(status, "other", `unexpected status ${status}`);
}

/** One fetcher per panel: at most one in-flight request, newer requests
 *  abort the previous one, and responses whose request hash no longer
 *  matches the latest issued hash are dropped (StaleResponse). */
export class PanelFetcher {
  private latestHash: string | null = null;
  private controller: AbortController | null = null;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  async post<R>(path: string, body: unknown): Promise<Envelope<R>> {
    const hash = requestHash({ path, body });
    this.latestHash = hash;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;

    let response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
    } catch (err) {
      if (this.latestHash !== hash) throw new StaleResponse();
      throw new NetworkError(err instanceof Error ? err.message : String(err));
    }
    if (this.latestHash !== hash) throw new StaleResponse();
    const payload = await response.json().catch(() => null);
    if (this.latestHash !== hash) throw new StaleResponse();
    if (!response.ok) throw await parseError(response.status, payload);
    return payload as Envelope<R>;
  }
}
