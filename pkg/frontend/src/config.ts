/** Scenario state: the single source of truth for every API request. */

export interface ScenarioConfig {
  budget: number;
  clusterCost: number;
  indivCost: number;
  rhoY: number;
  rhoX: number;
  rhoYRange: [number, number];
  rhoXRange: [number, number];
  gridSteps: number;
  varY: number;
  varX: number;
  varW: number;
  effectAte: number;
  effectHte: number;
  alpha: number;
  mMin: number;
  mMax: number | null;
  minClusters: number;
  lambda: number;
  objective: "hte" | "ate" | "compound";
}

export interface FieldError {
  field: keyof ScenarioConfig;
  message: string;
}

export const DEFAULT_SCENARIO: ScenarioConfig = {
  budget: 100000,
  clusterCost: 500,
  indivCost: 50,
  rhoY: 0.05,
  rhoX: 0.75,
  rhoYRange: [0.005, 0.2],
  rhoXRange: [0.1, 1.0],
  gridSteps: 40,
  varY: 1,
  varX: 1,
  varW: 0.25,
  effectAte: 0.2,
  effectHte: 0.2,
  alpha: 0.05,
  mMin: 2,
  mMax: null,
  minClusters: 6,
  lambda: 0.5,
  objective: "hte",
};

/** The three pinned scenarios used for CLI-parity checks. */
export const PRESETS: Record<string, ScenarioConfig> = {
  "k10-reference": { ...DEFAULT_SCENARIO },
  "k20-reference": { ...DEFAULT_SCENARIO, clusterCost: 2000, indivCost: 100 },
  "kdpp-lambda-0.6": {
    ...DEFAULT_SCENARIO,
    budget: 20000,
    clusterCost: 100,
    indivCost: 5,
    rhoY: 0.028,
    rhoX: 0.055,
    rhoYRange: [0.005, 0.1],
    rhoXRange: [0.1, 0.75],
    varY: 10.27 * 10.27,
    varX: 4.031 * 4.031,
    effectAte: -1.5,
    effectHte: -0.375,
    mMin: 8,
    mMax: 40,
    minClusters: 66,
    lambda: 0.6,
    objective: "compound",
  },
};

/** Validates a scenario; returns one error per offending field. */
export function validateScenario(cfg: ScenarioConfig): FieldError[] {
  const errors: FieldError[] = [];
  const bad = (field: keyof ScenarioConfig, message: string) =>
    errors.push({ field, message });

  if (!(cfg.budget > 0)) bad("budget", "budget must be positive");
  if (!(cfg.clusterCost >= 0)) bad("clusterCost", "cluster cost must be >= 0");
  if (!(cfg.indivCost > 0)) bad("indivCost", "individual cost must be positive");
  if (cfg.budget < cfg.clusterCost + 2 * cfg.indivCost)
    bad("budget", "budget cannot afford one cluster of two");
  if (!(cfg.rhoY >= 0 && cfg.rhoY < 1)) bad("rhoY", "outcome ICC must be in [0, 1)");
  if (!(cfg.rhoX >= 0 && cfg.rhoX <= 1)) bad("rhoX", "covariate ICC must be in [0, 1]");
  const [ylo, yhi] = cfg.rhoYRange;
  if (!(ylo >= 0 && ylo <= yhi && yhi < 1))
    bad("rhoYRange", "outcome-ICC range must satisfy 0 <= lo <= hi < 1");
  const [xlo, xhi] = cfg.rhoXRange;
  if (!(xlo >= 0 && xlo <= xhi && xhi <= 1))
    bad("rhoXRange", "covariate-ICC range must satisfy 0 <= lo <= hi <= 1");
  if (!(Number.isInteger(cfg.gridSteps) && cfg.gridSteps >= 1))
    bad("gridSteps", "grid steps must be a positive integer");
  if (!(cfg.varY > 0)) bad("varY", "outcome variance must be positive");
  if (!(cfg.varX > 0)) bad("varX", "covariate variance must be positive");
  if (!(cfg.varW > 0 && cfg.varW <= 0.25))
    bad("varW", "assignment variance must be in (0, 0.25]");
  if (!(cfg.alpha > 0 && cfg.alpha < 1)) bad("alpha", "alpha must be in (0, 1)");
  if (!(Number.isInteger(cfg.mMin) && cfg.mMin >= 2))
    bad("mMin", "minimum cluster size must be an integer >= 2");
  if (cfg.mMax !== null && (!Number.isInteger(cfg.mMax) || cfg.mMax < cfg.mMin))
    bad("mMax", "maximum cluster size must be an integer >= the minimum");
  if (!(Number.isInteger(cfg.minClusters) && cfg.minClusters >= 2))
    bad("minClusters", "minimum cluster count must be an integer >= 2");
  if (!(cfg.lambda >= 0 && cfg.lambda <= 1))
    bad("lambda", "priority weight must be in [0, 1]");
  return errors;
}

/** Clamps slider-driven fields into their valid ranges. */
export function clampScenario(cfg: ScenarioConfig): ScenarioConfig {
  const clamp = (v: number, lo: number, hi: number) =>
    Math.min(Math.max(v, lo), hi);
  return {
    ...cfg,
    rhoY: clamp(cfg.rhoY, 0, 0.999),
    rhoX: clamp(cfg.rhoX, 0, 1),
    lambda: clamp(cfg.lambda, 0, 1),
    varW: clamp(cfg.varW, 1e-9, 0.25),
  };
}

/** Serializes the scenario into a URL fragment for sharing (no server state). */
export function scenarioToFragment(cfg: ScenarioConfig): string {
  return "#s=" + encodeURIComponent(JSON.stringify(cfg));
}

/** Restores a scenario from a URL fragment; null when absent or invalid. */
export function scenarioFromFragment(fragment: string): ScenarioConfig | null {
  const match = /^#s=(.+)$/.exec(fragment);
  if (!match) return null;
  try {
    const parsed = JSON.parse(decodeURIComponent(match[1]));
    const merged = { ...DEFAULT_SCENARIO, ...parsed } as ScenarioConfig;
    return validateScenario(merged).length === 0 ? merged : null;
  } catch {
    return null;
  }
}
