import { describe, expect, it } from "vitest";
import {
  clampScenario,
  DEFAULT_SCENARIO,
  PRESETS,
  scenarioFromFragment,
  scenarioToFragment,
  validateScenario,
} from "../src/config.js";

describe("validateScenario", () => {
  it("accepts the default scenario and every preset", () => {
    expect(validateScenario(DEFAULT_SCENARIO)).toEqual([]);
    for (const preset of Object.values(PRESETS)) {
      expect(validateScenario(preset)).toEqual([]);
    }
  });

  it("flags the offending field", () => {
    const errors = validateScenario({ ...DEFAULT_SCENARIO, rhoY: 1.2 });
    expect(errors).toHaveLength(1);
    expect(errors[0].field).toBe("rhoY");
  });

  it("rejects a budget that cannot afford one cluster of two", () => {
    const errors = validateScenario({
      ...DEFAULT_SCENARIO,
      budget: 500,
      clusterCost: 450,
      indivCost: 50,
    });
    expect(errors.map((e) => e.field)).toContain("budget");
  });

  it("rejects inverted ICC ranges and a cap below the floor", () => {
    const errors = validateScenario({
      ...DEFAULT_SCENARIO,
      rhoYRange: [0.2, 0.1],
      mMax: 1,
    });
    expect(errors.map((e) => e.field).sort()).toEqual(["mMax", "rhoYRange"]);
  });
});

describe("clampScenario", () => {
  it("clamps slider-driven fields into range", () => {
    const cfg = clampScenario({
      ...DEFAULT_SCENARIO,
      rhoX: 1.4,
      lambda: -0.2,
      varW: 0.9,
    });
    expect(cfg.rhoX).toBe(1);
    expect(cfg.lambda).toBe(0);
    expect(cfg.varW).toBe(0.25);
  });
});

describe("URL fragment sharing", () => {
  it("round-trips a scenario exactly", () => {
    const cfg = { ...PRESETS["kdpp-lambda-0.6"] };
    const restored = scenarioFromFragment(scenarioToFragment(cfg));
    expect(restored).toEqual(cfg);
  });

  it("fills missing fields from the defaults", () => {
    const fragment =
      "#s=" + encodeURIComponent(JSON.stringify({ rhoY: 0.1 }));
    const restored = scenarioFromFragment(fragment);
    expect(restored).not.toBeNull();
    expect(restored!.rhoY).toBe(0.1);
    expect(restored!.budget).toBe(DEFAULT_SCENARIO.budget);
  });

  it("returns null for absent, malformed, or invalid fragments", () => {
    expect(scenarioFromFragment("")).toBeNull();
    expect(scenarioFromFragment("#other")).toBeNull();
    expect(scenarioFromFragment("#s=%7Bnot-json")).toBeNull();
    const invalid =
      "#s=" + encodeURIComponent(JSON.stringify({ rhoY: 2.0 }));
    expect(scenarioFromFragment(invalid)).toBeNull();
  });
});
