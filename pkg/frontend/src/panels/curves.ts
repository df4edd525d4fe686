/** Curves panel: criterion versus cluster size at the four corners of the
 *  ICC uncertainty box, with a vertical marker at the maximin design.
 *  The full surface is only fetched on an explicit "compute surface"
 *  action; a 413 response prompts the user to coarsen the grid. */

import {
  ApiError,
  maximinRequest,
  NetworkError,
  PanelFetcher,
  StaleResponse,
  type MaximinResult,
} from "../api.js";
import type { ScenarioConfig } from "../config.js";
import { iccCorners, surfaceCornerSeries, type Series } from "../format.js";

export interface CurvesView {
  showChart(series: Series[], markerM: number | null): void;
  showMessage(message: string | null): void;
}

export class CurvesPanel {
  constructor(
    private readonly view: CurvesView,
    private readonly fetcher: PanelFetcher,
  ) {}

  /** Explicit action: fetch the surface and plot the four corner curves. */
  async computeSurface(cfg: ScenarioConfig): Promise<void> {
    const req = maximinRequest(cfg, true);
    try {
      const env = await this.fetcher.post<MaximinResult>(req.path, req.body);
      const surface = env.result.surface ?? [];
      const corners = iccCorners(cfg.rhoYRange, cfg.rhoXRange);
      this.view.showMessage(null);
      this.view.showChart(
        surfaceCornerSeries(surface, corners),
        env.result.design.m,
      );
    } catch (err) {
      if (err instanceof StaleResponse) return;
      if (err instanceof ApiError && err.kind === "too_large") {
        this.view.showMessage(
          "grid too large to evaluate; reduce grid steps or narrow the ICC ranges",
        );
        return;
      }
      if (err instanceof NetworkError) {
        this.view.showMessage("server unreachable");
        return;
      }
      this.view.showMessage(err instanceof Error ? err.message : String(err));
    }
  }
}
