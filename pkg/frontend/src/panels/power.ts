/** Power panel: power across the covariate ICC for a handful of outcome-ICC
 *  levels, plus worst/best badges with the ICCs attaining them. A zero
 *  effect renders as the flat false-positive-rate line. When the compound
 *  weight puts everything on the average effect (lambda = 1), the
 *  interaction-power content is hidden by the caller. */

import {
  NetworkError,
  PanelFetcher,
  powerBoundsRequest,
  powerCurveRequest,
  StaleResponse,
  type CurveRecord,
  type PowerBoundsResult,
} from "../api.js";
import type { ScenarioConfig } from "../config.js";
import { powerBadges, powerCurveSeries, type PowerBadges, type Series } from "../format.js";

export interface PowerView {
  showChart(series: Series[]): void;
  showBadges(badges: PowerBadges | null): void;
  showMessage(message: string | null): void;
}

export function effectFor(cfg: ScenarioConfig, test: "hte" | "ate"): number {
  return test === "hte" ? cfg.effectHte : cfg.effectAte;
}

export class PowerPanel {
  constructor(
    private readonly view: PowerView,
    private readonly curveFetcher: PanelFetcher,
    private readonly boundsFetcher: PanelFetcher,
  ) {}

  async compute(
    cfg: ScenarioConfig,
    design: { m: number; n: number },
    test: "hte" | "ate",
    rhoYValues?: number[],
  ): Promise<void> {
    if (effectFor(cfg, test) === 0) {
      // no effect to detect: power is the test size everywhere
      this.view.showChart([
        {
          label: "zero effect",
          points: cfg.rhoXRange.map((x) => ({
            x,
            y: cfg.alpha / 2,
            title: `power=${(100 * cfg.alpha) / 2}%`,
          })),
        },
      ]);
      this.view.showBadges(null);
      this.view.showMessage(null);
      return;
    }
    try {
      const curveReq = powerCurveRequest(cfg, design, test, rhoYValues);
      const boundsReq = powerBoundsRequest(cfg, design, test);
      const [curveEnv, boundsEnv] = await Promise.all([
        this.curveFetcher.post<{ records: CurveRecord[] }>(
          curveReq.path,
          curveReq.body,
        ),
        this.boundsFetcher.post<PowerBoundsResult>(
          boundsReq.path,
          boundsReq.body,
        ),
      ]);
      this.view.showMessage(null);
      this.view.showChart(powerCurveSeries(curveEnv.result.records));
      this.view.showBadges(powerBadges(boundsEnv.result));
    } catch (err) {
      if (err instanceof StaleResponse) return;
      if (err instanceof NetworkError) {
        this.view.showMessage("server unreachable");
        return;
      }
      this.view.showMessage(err instanceof Error ? err.message : String(err));
    }
  }
}
