/** Wires the three panels to the DOM. All numbers come from the HTTP API;
 *  this file only moves form state around and paints results. */

import {
  PanelFetcher,
  type LodResult,
  lodRequest,
} from "./api.js";
import { renderChart } from "./chart.js";
import {
  DEFAULT_SCENARIO,
  PRESETS,
  scenarioFromFragment,
  scenarioToFragment,
  type FieldError,
  type ScenarioConfig,
} from "./config.js";
import type { PowerBadges, Series } from "./format.js";
import { CurvesPanel } from "./panels/curves.js";
import { PowerPanel } from "./panels/power.js";
import { ScenarioPanel } from "./panels/scenario.js";

const baseUrl =
  (window as unknown as { CRTDESIGN_API?: string }).CRTDESIGN_API ??
  "http://127.0.0.1:8000";

let scenario: ScenarioConfig =
  scenarioFromFragment(location.hash) ?? { ...DEFAULT_SCENARIO };

const $ = <T extends HTMLElement>(id: string) =>
  document.getElementById(id) as T;

// --- scenario panel ---------------------------------------------------------

const scenarioPanel = new ScenarioPanel(
  {
    showCard(html, stale) {
      const card = $("design-card");
      card.innerHTML = html;
      card.classList.toggle("stale", stale);
    },
    showFieldErrors(errors: FieldError[]) {
      document
        .querySelectorAll<HTMLElement>(".field-error")
        .forEach((n) => (n.textContent = ""));
      for (const e of errors) {
        const slot = document.getElementById(`err-${String(e.field)}`);
        if (slot) slot.textContent = e.message;
      }
    },
    showBanner(message) {
      const banner = $("banner");
      banner.textContent = message ?? "";
      banner.style.display = message ? "block" : "none";
    },
  },
  new PanelFetcher(baseUrl),
  new PanelFetcher(baseUrl),
);

// --- curves panel ------------------------------------------------------------

const curvesPanel = new CurvesPanel(
  {
    showChart(series: Series[], markerM) {
      renderChart($("curves-chart"), series, {
        xLabel: "cluster size m",
        yLabel: "worst-case criterion",
        markerX: markerM,
      });
    },
    showMessage(message) {
      $("curves-message").textContent = message ?? "";
    },
  },
  new PanelFetcher(baseUrl),
);

// --- power panel -------------------------------------------------------------

const powerPanel = new PowerPanel(
  {
    showChart(series: Series[]) {
      renderChart($("power-chart"), series, {
        xLabel: "covariate ICC",
        yLabel: "power",
        yMin: 0,
        yMax: 1,
      });
    },
    showBadges(badges: PowerBadges | null) {
      $("power-min").textContent = badges ? badges.minLabel : "";
      $("power-max").textContent = badges ? badges.maxLabel : "";
    },
    showMessage(message) {
      $("power-message").textContent = message ?? "";
    },
  },
  new PanelFetcher(baseUrl),
  new PanelFetcher(baseUrl),
);

// --- form plumbing -----------------------------------------------------------

const numberFields: (keyof ScenarioConfig)[] = [
  "budget",
  "clusterCost",
  "indivCost",
  "rhoY",
  "rhoX",
  "gridSteps",
  "varY",
  "varX",
  "varW",
  "effectAte",
  "effectHte",
  "alpha",
  "mMin",
  "minClusters",
  "lambda",
];

function writeForm(): void {
  for (const field of numberFields) {
    const input = document.getElementById(`f-${String(field)}`);
    if (input) (input as HTMLInputElement).value = String(scenario[field]);
  }
  ($("f-objective") as HTMLSelectElement).value = scenario.objective;
  ($("f-rhoYLo") as HTMLInputElement).value = String(scenario.rhoYRange[0]);
  ($("f-rhoYHi") as HTMLInputElement).value = String(scenario.rhoYRange[1]);
  ($("f-rhoXLo") as HTMLInputElement).value = String(scenario.rhoXRange[0]);
  ($("f-rhoXHi") as HTMLInputElement).value = String(scenario.rhoXRange[1]);
  ($("f-mMax") as HTMLInputElement).value =
    scenario.mMax === null ? "" : String(scenario.mMax);
}

function readForm(): void {
  const next = { ...scenario };
  for (const field of numberFields) {
    const input = document.getElementById(`f-${String(field)}`);
    if (input) {
      const v = Number((input as HTMLInputElement).value);
      if (Number.isFinite(v)) (next as Record<string, unknown>)[field] = v;
    }
  }
  next.objective = ($("f-objective") as HTMLSelectElement)
    .value as ScenarioConfig["objective"];
  next.rhoYRange = [
    Number(($("f-rhoYLo") as HTMLInputElement).value),
    Number(($("f-rhoYHi") as HTMLInputElement).value),
  ];
  next.rhoXRange = [
    Number(($("f-rhoXLo") as HTMLInputElement).value),
    Number(($("f-rhoXHi") as HTMLInputElement).value),
  ];
  const mMaxRaw = ($("f-mMax") as HTMLInputElement).value.trim();
  next.mMax = mMaxRaw === "" ? null : Number(mMaxRaw);
  scenario = next;
}

function applyVisibility(): void {
  // with all weight on the average effect there is no interaction content
  const hideHte = scenario.objective === "compound" && scenario.lambda === 1;
  $("power-hte-section").style.display = hideHte ? "none" : "block";
  $("lambda-row").style.display =
    scenario.objective === "compound" ? "flex" : "none";
}

async function refreshPower(): Promise<void> {
  const req = lodRequest(scenario);
  try {
    const env = await new PanelFetcher(baseUrl).post<LodResult>(
      req.path,
      req.body,
    );
    const design = env.result.design;
    const test =
      scenario.objective === "compound" && scenario.lambda === 1
        ? "ate"
        : scenario.objective === "ate"
          ? "ate"
          : "hte";
    await powerPanel.compute(scenario, design, test);
  } catch {
    // scenario panel already reports request problems
  }
}

function onScenarioChange(): void {
  readForm();
  applyVisibility();
  history.replaceState(null, "", scenarioToFragment(scenario));
  scenarioPanel.refresh(scenario);
  void refreshPower();
}

export function init(): void {
  writeForm();
  applyVisibility();

  document
    .querySelectorAll<HTMLInputElement>("#scenario-form input, #scenario-form select")
    .forEach((input) => input.addEventListener("input", onScenarioChange));

  $("compute-surface").addEventListener("click", () => {
    void curvesPanel.computeSurface(scenario);
  });

  const presetSelect = $("f-preset") as HTMLSelectElement;
  for (const name of Object.keys(PRESETS)) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    presetSelect.appendChild(opt);
  }
  presetSelect.addEventListener("change", () => {
    const preset = PRESETS[presetSelect.value];
    if (preset) {
      scenario = { ...preset };
      writeForm();
      onScenarioChange();
    }
  });

  scenarioPanel.refresh(scenario);
  void refreshPower();
}

if (typeof document !== "undefined" && document.getElementById("scenario-form")) {
  init();
}
