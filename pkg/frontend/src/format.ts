/** Number formatting and view-model builders shared by the panels.
 *  All charted records use the same column contract as the CSV exports. */

import type {
  CurveRecord,
  IccIn,
  LodResult,
  MaximinResult,
  PowerBoundsResult,
  SurfaceRecord,
} from "./api.js";

/** Six significant digits, matching the CLI's human-readable output. */
export function fmt(value: number): string {
  if (!Number.isFinite(value)) return String(value);
  return String(parseFloat(value.toPrecision(6)));
}

export function fmtPercent(value: number): string {
  return fmt(100 * value) + "%";
}

export function fmtIcc(icc: IccIn): string {
  return `(ρy=${fmt(icc.rho_y)}, ρx=${fmt(icc.rho_x)})`;
}

// ---------------------------------------------------------------------------
// Design card
// ---------------------------------------------------------------------------

export interface DesignCard {
  m: number;
  n: number;
  capped: boolean;
  conditionSatisfied: boolean;
  minRelativeEfficiency: number | null;
  worstCaseIccs: string[];
}

export function designCard(
  lod: LodResult,
  maximin: MaximinResult | null,
): DesignCard {
  return {
    m: lod.design.m,
    n: lod.design.n,
    capped: lod.capped,
    conditionSatisfied: lod.condition_satisfied,
    minRelativeEfficiency: maximin ? maximin.min_value : null,
    worstCaseIccs: maximin ? maximin.worst_case_iccs.map(fmtIcc) : [],
  };
}

// ---------------------------------------------------------------------------
// Chart series from tabular records
// ---------------------------------------------------------------------------

export interface Series {
  label: string;
  points: { x: number; y: number; title: string }[];
}

/** Criterion-vs-m curves, one per requested ICC corner of the surface. */
export function surfaceCornerSeries(
  records: SurfaceRecord[],
  corners: IccIn[],
): Series[] {
  const eps = 1e-12;
  return corners.map((corner) => {
    const points = records
      .filter(
        (r) =>
          Math.abs(r.rho_y - corner.rho_y) < eps &&
          Math.abs(r.rho_x - corner.rho_x) < eps,
      )
      .sort((a, b) => a.m - b.m)
      .map((r) => ({
        x: r.m,
        y: r.value,
        title: `m=${r.m}, n=${r.n}, value=${fmt(r.value)}`,
      }));
    return { label: fmtIcc(corner), points };
  });
}

/** The four corners of the ICC uncertainty box. */
export function iccCorners(
  rhoYRange: [number, number],
  rhoXRange: [number, number],
): IccIn[] {
  const [ylo, yhi] = rhoYRange;
  const [xlo, xhi] = rhoXRange;
  return [
    { rho_y: ylo, rho_x: xlo },
    { rho_y: ylo, rho_x: xhi },
    { rho_y: yhi, rho_x: xlo },
    { rho_y: yhi, rho_x: xhi },
  ];
}

/** Power-vs-rho_x curves, one per fixed rho_y level. */
export function powerCurveSeries(records: CurveRecord[]): Series[] {
  const byLevel = new Map<number, CurveRecord[]>();
  for (const r of records) {
    const list = byLevel.get(r.rho_y) ?? [];
    list.push(r);
    byLevel.set(r.rho_y, list);
  }
  return [...byLevel.entries()]
    .sort(([a], [b]) => a - b)
    .map(([level, rows]) => ({
      label: `ρy=${fmt(level)}`,
      points: rows
        .sort((a, b) => a.rho_x - b.rho_x)
        .map((r) => ({
          x: r.rho_x,
          y: r.power,
          title: `ρx=${fmt(r.rho_x)}, power=${fmtPercent(r.power)}`,
        })),
    }));
}

export interface PowerBadges {
  minLabel: string;
  maxLabel: string;
}

/** Worst/best power badges with the ICCs attaining them. */
export function powerBadges(bounds: PowerBoundsResult): PowerBadges {
  return {
    minLabel: `min ${fmtPercent(bounds.lower)} at ${fmtIcc(bounds.argmin_icc)}`,
    maxLabel: `max ${fmtPercent(bounds.upper)} at ${fmtIcc(bounds.argmax_icc)}`,
  };
}
