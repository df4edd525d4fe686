import { describe, expect, it } from "vitest";
import { PanelFetcher, type FetchLike } from "../src/api.js";
import { DEFAULT_SCENARIO, type FieldError } from "../src/config.js";
import { CurvesPanel } from "../src/panels/curves.js";
import { mapApiErrors, ScenarioPanel } from "../src/panels/scenario.js";
import { effectFor, PowerPanel } from "../src/panels/power.js";
import type { Series } from "../src/format.js";

const LOD_RESULT = {
  design: { m: 22, n: 62 },
  capped: false,
  condition_satisfied: true,
  m_continuous: 22.2,
  objective_value: 0.0047,
};

const MAXIMIN_RESULT = {
  design: { m: 33, n: 18 },
  min_value: 0.68,
  kind: "hte",
  lambda: null,
  worst_case_iccs: [{ rho_y: 0.2, rho_x: 1.0 }],
};

function ok(result: unknown): FetchLike {
  return async () => ({
    ok: true,
    status: 200,
    json: async () => ({
      schema_version: "1",
      inputs: {},
      compute_seconds: 0,
      result,
    }),
  });
}

function failing(status: number, payload: unknown): FetchLike {
  return async () => ({ ok: false, status, json: async () => payload });
}

function unreachable(): FetchLike {
  return async () => {
    throw new Error("ECONNREFUSED");
  };
}

interface ScenarioViewState {
  card: { html: string; stale: boolean } | null;
  errors: FieldError[];
  banner: string | null;
}

function scenarioView(state: ScenarioViewState) {
  return {
    showCard: (html: string, stale: boolean) => (state.card = { html, stale }),
    showFieldErrors: (errors: FieldError[]) => (state.errors = errors),
    showBanner: (message: string | null) => (state.banner = message),
  };
}

describe("ScenarioPanel", () => {
  it("renders the design card from the two API responses", async () => {
    const state: ScenarioViewState = { card: null, errors: [], banner: null };
    const panel = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher("http://api", ok(LOD_RESULT)),
      new PanelFetcher("http://api", ok(MAXIMIN_RESULT)),
    );
    await panel.compute({ ...DEFAULT_SCENARIO });
    expect(state.banner).toBeNull();
    expect(state.card!.stale).toBe(false);
    expect(state.card!.html).toContain(">22<");
    expect(state.card!.html).toContain("68%");
  });

  it("shows local validation errors without calling the API", async () => {
    const state: ScenarioViewState = { card: null, errors: [], banner: null };
    const panel = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher("http://api", unreachable()),
      new PanelFetcher("http://api", unreachable()),
    );
    await panel.compute({ ...DEFAULT_SCENARIO, budget: -1 });
    expect(state.errors.map((e) => e.field)).toContain("budget");
    expect(state.banner).toBeNull();
  });

  it("maps API validation details onto form fields", async () => {
    const state: ScenarioViewState = { card: null, errors: [], banner: null };
    const apiError = failing(400, {
      error: "validation",
      details: [
        { field: "cost.individual_cost", message: "must be positive" },
      ],
    });
    const panel = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher("http://api", apiError),
      new PanelFetcher("http://api", apiError),
    );
    await panel.compute({ ...DEFAULT_SCENARIO });
    expect(state.errors).toEqual([
      { field: "indivCost", message: "must be positive" },
    ]);
  });

  it("greys the stale card under a banner when the server is unreachable", async () => {
    const state: ScenarioViewState = { card: null, errors: [], banner: null };
    const panel = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher("http://api", ok(LOD_RESULT)),
      new PanelFetcher("http://api", ok(MAXIMIN_RESULT)),
    );
    await panel.compute({ ...DEFAULT_SCENARIO });
    const lastHtml = state.card!.html;

    const offline = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher("http://api", unreachable()),
      new PanelFetcher("http://api", unreachable()),
    );
    // carry the previous card across by recomputing on the same panel instead
    await panel.compute({ ...DEFAULT_SCENARIO });
    expect(state.card!.html).toBe(lastHtml);
    await offline.compute({ ...DEFAULT_SCENARIO });
    expect(state.banner).toContain("unreachable");
    expect(state.card!.stale).toBe(true);
  });

  it("reports a degenerate design as a banner, keeping the old card greyed", async () => {
    const state: ScenarioViewState = { card: null, errors: [], banner: null };
    const panel = new ScenarioPanel(
      scenarioView(state),
      new PanelFetcher(
        "http://api",
        failing(422, { error: "degenerate", message: "no admissible design" }),
      ),
      new PanelFetcher("http://api", ok(MAXIMIN_RESULT)),
    );
    await panel.compute({ ...DEFAULT_SCENARIO });
    expect(state.banner).toContain("no admissible design");
    expect(state.card!.stale).toBe(true);
  });
});

describe("mapApiErrors", () => {
  it("maps dotted API paths to form fields", () => {
    expect(
      mapApiErrors([{ field: "icc.rho_y", message: "out of range" }]),
    ).toEqual([{ field: "rhoY", message: "out of range" }]);
  });
});

describe("CurvesPanel", () => {
  it("plots corner curves with the maximin marker", async () => {
    const surface = [
      { m: 2, n: 166, rho_y: 0.005, rho_x: 0.1, value: 0.9, kind: "hte", lambda: null },
      { m: 3, n: 153, rho_y: 0.005, rho_x: 0.1, value: 0.95, kind: "hte", lambda: null },
      { m: 2, n: 166, rho_y: 0.2, rho_x: 1.0, value: 0.3, kind: "hte", lambda: null },
    ];
    let seen: { series: Series[]; marker: number | null } | null = null;
    let message: string | null = "initial";
    const panel = new CurvesPanel(
      {
        showChart: (series, markerM) => (seen = { series, marker: markerM }),
        showMessage: (m) => (message = m),
      },
      new PanelFetcher("http://api", ok({ ...MAXIMIN_RESULT, surface })),
    );
    await panel.computeSurface({ ...DEFAULT_SCENARIO });
    expect(message).toBeNull();
    expect(seen!.marker).toBe(33);
    expect(seen!.series).toHaveLength(4); // one per ICC corner
    expect(seen!.series[0].points.map((p) => p.x)).toEqual([2, 3]);
  });

  it("prompts to coarsen the grid on an oversize request", async () => {
    let message: string | null = null;
    const panel = new CurvesPanel(
      {
        showChart: () => {
          throw new Error("must not chart");
        },
        showMessage: (m) => (message = m),
      },
      new PanelFetcher(
        "http://api",
        failing(413, { error: "too_large", message: "cap exceeded" }),
      ),
    );
    await panel.computeSurface({ ...DEFAULT_SCENARIO });
    expect(message).toContain("reduce grid steps");
  });
});

describe("PowerPanel", () => {
  const curveRecords = [
    { test: "hte", m: 22, n: 62, rho_y: 0.005, rho_x: 0.1, effect: 0.2, alpha: 0.05, power: 0.95 },
    { test: "hte", m: 22, n: 62, rho_y: 0.2, rho_x: 0.1, effect: 0.2, alpha: 0.05, power: 0.8 },
  ];
  const bounds = {
    test: "hte",
    design: { m: 22, n: 62 },
    lower: 0.36,
    upper: 0.97,
    argmin_icc: { rho_y: 0.2, rho_x: 1.0 },
    argmax_icc: { rho_y: 0.2, rho_x: 0.1 },
    degenerate_iccs: [],
  };

  it("charts curves and badges from the two API responses", async () => {
    let series: Series[] | null = null;
    let badges: unknown = undefined;
    const panel = new PowerPanel(
      {
        showChart: (s) => (series = s),
        showBadges: (b) => (badges = b),
        showMessage: () => {},
      },
      new PanelFetcher("http://api", ok({ records: curveRecords })),
      new PanelFetcher("http://api", ok(bounds)),
    );
    await panel.compute({ ...DEFAULT_SCENARIO }, { m: 22, n: 62 }, "hte");
    expect(series!).toHaveLength(2);
    expect(badges).toMatchObject({ minLabel: expect.stringContaining("36%") });
  });

  it("renders a flat false-positive line when the effect is zero", async () => {
    let series: Series[] | null = null;
    let badges: unknown = "untouched";
    const panel = new PowerPanel(
      {
        showChart: (s) => (series = s),
        showBadges: (b) => (badges = b),
        showMessage: () => {},
      },
      new PanelFetcher("http://api", unreachable()),
      new PanelFetcher("http://api", unreachable()),
    );
    await panel.compute(
      { ...DEFAULT_SCENARIO, effectHte: 0 },
      { m: 22, n: 62 },
      "hte",
    );
    expect(badges).toBeNull();
    expect(series!).toHaveLength(1);
    expect(series![0].points.map((p) => p.y)).toEqual([0.025, 0.025]);
  });

  it("selects the effect matching the test kind", () => {
    const cfg = { ...DEFAULT_SCENARIO, effectAte: 0.3, effectHte: 0.1 };
    expect(effectFor(cfg, "ate")).toBe(0.3);
    expect(effectFor(cfg, "hte")).toBe(0.1);
  });
});
