/** Minimal dependency-free SVG line chart. Renders Series from format.ts,
 *  with optional vertical marker (the maximin design's m) and per-point
 *  hover titles. */

import type { Series } from "./format.js";

const COLORS = ["#2563eb", "#dc2626", "#059669", "#9333ea", "#ea580c"];

export interface ChartOptions {
  width?: number;
  height?: number;
  xLabel?: string;
  yLabel?: string;
  markerX?: number | null;
  yMin?: number | null;
  yMax?: number | null;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export function renderChart(
  container: HTMLElement,
  series: Series[],
  opts: ChartOptions = {},
): void {
  const width = opts.width ?? 640;
  const height = opts.height ?? 320;
  const pad = { left: 52, right: 16, top: 16, bottom: 40 };

  container.textContent = "";
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });
  container.appendChild(svg);

  const points = series.flatMap((s) => s.points);
  if (points.length === 0) {
    const empty = el("text", { x: String(width / 2), y: String(height / 2), "text-anchor": "middle", fill: "#666" });
    empty.textContent = "no data";
    svg.appendChild(empty);
    return;
  }

  const xs = points.map((p) => p.x);
  const ys = points.map((p) => p.y);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  let yMin = opts.yMin ?? Math.min(...ys);
  let yMax = opts.yMax ?? Math.max(...ys);
  if (yMin === yMax) {
    yMin -= 0.5;
    yMax += 0.5;
  }

  const sx = (x: number) =>
    xMax === xMin
      ? (pad.left + width - pad.right) / 2
      : pad.left + ((x - xMin) / (xMax - xMin)) * (width - pad.left - pad.right);
  const sy = (y: number) =>
    height - pad.bottom - ((y - yMin) / (yMax - yMin)) * (height - pad.top - pad.bottom);

  // axes
  svg.appendChild(el("line", { x1: String(pad.left), y1: String(height - pad.bottom), x2: String(width - pad.right), y2: String(height - pad.bottom), stroke: "#333" }));
  svg.appendChild(el("line", { x1: String(pad.left), y1: String(pad.top), x2: String(pad.left), y2: String(height - pad.bottom), stroke: "#333" }));

  const ticks = 5;
  for (let i = 0; i <= ticks; i++) {
    const xv = xMin + (i / ticks) * (xMax - xMin);
    const yv = yMin + (i / ticks) * (yMax - yMin);
    const xt = el("text", { x: String(sx(xv)), y: String(height - pad.bottom + 16), "text-anchor": "middle", "font-size": "11", fill: "#444" });
    xt.textContent = String(parseFloat(xv.toPrecision(3)));
    svg.appendChild(xt);
    const yt = el("text", { x: String(pad.left - 6), y: String(sy(yv) + 4), "text-anchor": "end", "font-size": "11", fill: "#444" });
    yt.textContent = String(parseFloat(yv.toPrecision(3)));
    svg.appendChild(yt);
  }
  if (opts.xLabel) {
    const lbl = el("text", { x: String((pad.left + width - pad.right) / 2), y: String(height - 6), "text-anchor": "middle", "font-size": "12", fill: "#222" });
    lbl.textContent = opts.xLabel;
    svg.appendChild(lbl);
  }
  if (opts.yLabel) {
    const lbl = el("text", { x: "14", y: String((pad.top + height - pad.bottom) / 2), "text-anchor": "middle", "font-size": "12", fill: "#222", transform: `rotate(-90 14 ${(pad.top + height - pad.bottom) / 2})` });
    lbl.textContent = opts.yLabel;
    svg.appendChild(lbl);
  }

  // vertical marker at the selected design's m
  if (opts.markerX != null && opts.markerX >= xMin && opts.markerX <= xMax) {
    svg.appendChild(el("line", { x1: String(sx(opts.markerX)), y1: String(pad.top), x2: String(sx(opts.markerX)), y2: String(height - pad.bottom), stroke: "#111", "stroke-dasharray": "4 3" }));
  }

  series.forEach((s, idx) => {
    const color = COLORS[idx % COLORS.length];
    if (s.points.length > 1) {
      const d = s.points.map((p, i) => `${i === 0 ? "M" : "L"}${sx(p.x)},${sy(p.y)}`).join(" ");
      svg.appendChild(el("path", { d, fill: "none", stroke: color, "stroke-width": "1.5" }));
    }
    for (const p of s.points) {
      const dot = el("circle", { cx: String(sx(p.x)), cy: String(sy(p.y)), r: "2.5", fill: color });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = p.title;
      dot.appendChild(title);
      svg.appendChild(dot);
    }
    // legend entry
    const ly = pad.top + 14 * idx;
    svg.appendChild(el("rect", { x: String(width - pad.right - 140), y: String(ly), width: "10", height: "10", fill: color }));
    const lt = el("text", { x: String(width - pad.right - 126), y: String(ly + 9), "font-size": "11", fill: "#222" });
    lt.textContent = s.label;
    svg.appendChild(lt);
  });
}
