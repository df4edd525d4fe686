/** Scenario panel: edits the scenario, debounce-fires the LOD and maximin
 *  requests, and renders the design card. API validation errors become
 *  inline field messages; an unreachable server shows a banner and greys
 *  the stale card. */

import {
  ApiError,
  lodRequest,
  maximinRequest,
  NetworkError,
  PanelFetcher,
  StaleResponse,
  type LodResult,
  type MaximinResult,
} from "../api.js";
import {
  clampScenario,
  validateScenario,
  type FieldError,
  type ScenarioConfig,
} from "../config.js";
import { debounce } from "../debounce.js";
import { designCard, fmt, fmtPercent } from "../format.js";

/** Maps API dotted field paths back onto form fields. */
const API_FIELD_MAP: Record<string, keyof ScenarioConfig> = {
  "cost.total_budget": "budget",
  "cost.cluster_cost": "clusterCost",
  "cost.individual_cost": "indivCost",
  "icc.rho_y": "rhoY",
  "icc.rho_x": "rhoX",
  rho_y: "rhoY",
  "space.rho_y_range": "rhoYRange",
  "space.rho_x_range": "rhoXRange",
  "space.grid_steps": "gridSteps",
  "scales.var_y_given_x": "varY",
  "scales.var_x": "varX",
  "scales.var_w": "varW",
  "design_space.m_min": "mMin",
  "design_space.m_max": "mMax",
  "design_space.n_min": "minClusters",
  lambda: "lambda",
};

export function mapApiErrors(
  details: { field: string; message: string }[],
): FieldError[] {
  return details.map((d) => ({
    field: API_FIELD_MAP[d.field] ?? "budget",
    message: d.message,
  }));
}

export interface ScenarioView {
  showCard(html: string, stale: boolean): void;
  showFieldErrors(errors: FieldError[]): void;
  showBanner(message: string | null): void;
}

export function renderCardHtml(
  lod: LodResult,
  maximin: MaximinResult | null,
): string {
  const card = designCard(lod, maximin);
  const rows = [
    `<dt>cluster size m</dt><dd>${card.m}${card.capped ? " (capped)" : ""}</dd>`,
    `<dt>clusters n</dt><dd>${card.n}</dd>`,
    `<dt>interior optimum exists</dt><dd>${card.conditionSatisfied ? "yes" : "no"}</dd>`,
  ];
  if (card.minRelativeEfficiency !== null) {
    rows.push(
      `<dt>worst-case relative efficiency</dt><dd>${fmtPercent(card.minRelativeEfficiency)}</dd>`,
      `<dt>worst-case ICCs</dt><dd>${card.worstCaseIccs.join(", ")}</dd>`,
    );
  }
  rows.push(`<dt>objective value</dt><dd>${fmt(lod.objective_value)}</dd>`);
  return `<dl>${rows.join("")}</dl>`;
}

export class ScenarioPanel {
  private lastHtml = "";
  readonly refresh: { (cfg: ScenarioConfig): void; cancel(): void };

  constructor(
    private readonly view: ScenarioView,
    private readonly lodFetcher: PanelFetcher,
    private readonly maximinFetcher: PanelFetcher,
    debounceMs = 250,
  ) {
    this.refresh = debounce((cfg: ScenarioConfig) => {
      void this.compute(cfg);
    }, debounceMs);
  }

  async compute(raw: ScenarioConfig): Promise<void> {
    const cfg = clampScenario(raw);
    const localErrors = validateScenario(cfg);
    if (localErrors.length > 0) {
      this.view.showFieldErrors(localErrors);
      return;
    }
    this.view.showFieldErrors([]);
    try {
      const lodReq = lodRequest(cfg);
      const mmReq = maximinRequest(cfg, false);
      const [lodEnv, mmEnv] = await Promise.all([
        this.lodFetcher.post<LodResult>(lodReq.path, lodReq.body),
        this.maximinFetcher.post<MaximinResult>(mmReq.path, mmReq.body),
      ]);
      this.view.showBanner(null);
      this.lastHtml = renderCardHtml(lodEnv.result, mmEnv.result);
      this.view.showCard(this.lastHtml, false);
    } catch (err) {
      if (err instanceof StaleResponse) return;
      if (err instanceof ApiError && err.kind === "validation") {
        this.view.showFieldErrors(mapApiErrors(err.details));
        return;
      }
      if (err instanceof ApiError && err.kind === "degenerate") {
        this.view.showBanner(`no admissible design: ${err.message}`);
        this.view.showCard(this.lastHtml, true);
        return;
      }
      if (err instanceof NetworkError) {
        this.view.showBanner("server unreachable; results below may be stale");
        this.view.showCard(this.lastHtml, true);
        return;
      }
      this.view.showBanner(err instanceof Error ? err.message : String(err));
    }
  }
}
