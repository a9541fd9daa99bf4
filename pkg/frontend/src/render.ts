/**
 * Deterministic SVG rendering of the two figure kinds.
 *
 * fig5: fidelity against time, one pair of series per input state: the
 * closed-form values as solid lines, the circuit-simulated values as
 * markers, for both the unprotected (damping only) and protected runs.
 *
 * fig6: the trade-off frontier, success probability N against theta with
 * the minimal WM strength w* on a secondary axis.
 *
 * Output depends only on the parsed rows and fixed style constants; all
 * coordinates are emitted with fixed precision, so identical input yields
 * byte-identical SVG.
 */

import { FrontierRow, SweepRow } from "./schema.js";

export interface RenderOptions {
  width?: number;
  height?: number;
  title?: string;
}

const MARGIN = { top: 42, right: 64, bottom: 46, left: 56 };

// color pairs per state group: [damping-only, protected]
const SERIES_COLORS: Array<[string, string]> = [
  ["#1f77b4", "#d62728"],
  ["#17becf", "#e377c2"],
  ["#2ca02c", "#ff7f0e"],
  ["#7f7f7f", "#8c564b"],
];

const fmt = (x: number): string => x.toFixed(2);

interface Scale {
  (value: number): number;
}

function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (value: number) => r0 + ((value - d0) / span) * (r1 - r0);
}

function ticks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo || 1;
  const rawStep = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => span / s <= count) ?? candidates[candidates.length - 1];
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9; v += step) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}

function tickLabel(v: number): string {
  return Number(v.toFixed(6)).toString();
}

function polyline(points: Array<[number, number]>, x: Scale, y: Scale): string {
  return points.map(([px, py]) => `${fmt(x(px))},${fmt(y(py))}`).join(" ");
}

function svgOpen(width: number, height: number, title: string): string[] {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<text x="${fmt(width / 2)}" y="24" text-anchor="middle" font-size="16">${title}</text>`,
  ];
}

function axes(
  parts: string[],
  x: Scale, y: Scale,
  xDomain: [number, number], yDomain: [number, number],
  plot: { left: number; right: number; top: number; bottom: number },
  xLabel: string, yLabel: string,
): void {
  parts.push(
    `<line x1="${fmt(plot.left)}" y1="${fmt(plot.bottom)}" x2="${fmt(plot.right)}" y2="${fmt(plot.bottom)}" stroke="black"/>`,
    `<line x1="${fmt(plot.left)}" y1="${fmt(plot.top)}" x2="${fmt(plot.left)}" y2="${fmt(plot.bottom)}" stroke="black"/>`,
  );
  for (const v of ticks(xDomain[0], xDomain[1], 8)) {
    const px = x(v);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(plot.bottom)}" x2="${fmt(px)}" y2="${fmt(plot.bottom + 5)}" stroke="black"/>`,
      `<text x="${fmt(px)}" y="${fmt(plot.bottom + 18)}" text-anchor="middle" font-size="11">${tickLabel(v)}</text>`,
    );
  }
  for (const v of ticks(yDomain[0], yDomain[1], 6)) {
    const py = y(v);
    parts.push(
      `<line x1="${fmt(plot.left - 5)}" y1="${fmt(py)}" x2="${fmt(plot.left)}" y2="${fmt(py)}" stroke="black"/>`,
      `<text x="${fmt(plot.left - 8)}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${tickLabel(v)}</text>`,
      `<line x1="${fmt(plot.left)}" y1="${fmt(py)}" x2="${fmt(plot.right)}" y2="${fmt(py)}" stroke="#dddddd" stroke-width="0.5"/>`,
    );
  }
  parts.push(
    `<text x="${fmt((plot.left + plot.right) / 2)}" y="${fmt(plot.bottom + 36)}" text-anchor="middle" font-size="13">${xLabel}</text>`,
    `<text transform="translate(16 ${fmt((plot.top + plot.bottom) / 2)}) rotate(-90)" text-anchor="middle" font-size="13">${yLabel}</text>`,
  );
}

/** Group sweep rows by theta, preserving numeric order. */
function groupByTheta(rows: SweepRow[]): Map<number, SweepRow[]> {
  const groups = new Map<number, SweepRow[]>();
  for (const row of [...rows].sort((a, b) => a.theta - b.theta || a.t - b.t)) {
    const list = groups.get(row.theta) ?? [];
    list.push(row);
    groups.set(row.theta, list);
  }
  return groups;
}

export function renderFig5(rows: SweepRow[], options: RenderOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const title = options.title ?? "State fidelity under damping: unprotected vs protected";
  const plot = {
    left: MARGIN.left, right: width - MARGIN.right,
    top: MARGIN.top, bottom: height - MARGIN.bottom,
  };

  const tValues = rows.map((r) => r.t);
  const fValues = rows.flatMap((r) => [r.F_ad_theory, r.F_ad_sim, r.F_protect_theory, r.F_protect_sim]);
  const xDomain: [number, number] = [Math.min(...tValues), Math.max(...tValues)];
  const yDomain: [number, number] = [Math.max(0, Math.min(...fValues) - 0.05), 1.0];
  const x = linearScale(xDomain[0], xDomain[1], plot.left, plot.right);
  const y = linearScale(yDomain[0], yDomain[1], plot.bottom, plot.top);

  const parts = svgOpen(width, height, title);
  axes(parts, x, y, xDomain, yDomain, plot, "t (s)", "fidelity");

  let groupIdx = 0;
  const legend: string[] = [];
  for (const [theta, group] of groupByTheta(rows)) {
    const [adColor, protectColor] = SERIES_COLORS[groupIdx % SERIES_COLORS.length];
    const thetaLabel = `θ = ${Number(theta.toFixed(4))}`;
    parts.push(
      `<polyline fill="none" stroke="${adColor}" stroke-width="1.8" points="${polyline(group.map((r) => [r.t, r.F_ad_theory]), x, y)}"/>`,
      `<polyline fill="none" stroke="${protectColor}" stroke-width="1.8" points="${polyline(group.map((r) => [r.t, r.F_protect_theory]), x, y)}"/>`,
    );
    for (const r of group) {
      parts.push(
        `<circle cx="${fmt(x(r.t))}" cy="${fmt(y(r.F_ad_sim))}" r="3" fill="none" stroke="${adColor}" stroke-width="1.2"/>`,
        `<rect x="${fmt(x(r.t) - 2.6)}" y="${fmt(y(r.F_protect_sim) - 2.6)}" width="5.2" height="5.2" fill="none" stroke="${protectColor}" stroke-width="1.2"/>`,
      );
    }
    legend.push(
      `<text x="${fmt(plot.left + 10)}" y="${fmt(plot.top + 14 + 30 * groupIdx)}" font-size="11" fill="${adColor}">${thetaLabel} damping only (line: theory, circles: circuit)</text>`,
      `<text x="${fmt(plot.left + 10)}" y="${fmt(plot.top + 28 + 30 * groupIdx)}" font-size="11" fill="${protectColor}">${thetaLabel} protected (line: theory, squares: circuit)</text>`,
    );
    groupIdx += 1;
  }
  parts.push(...legend, "</svg>");
  return parts.join("\n") + "\n";
}

export function renderFig6(rows: FrontierRow[], options: RenderOptions = {}): string {
  const width = options.width ?? 720;
  const height = options.height ?? 480;
  const title = options.title ?? "Success probability and minimal WM strength along the fidelity frontier";
  const plot = {
    left: MARGIN.left, right: width - MARGIN.right,
    top: MARGIN.top, bottom: height - MARGIN.bottom,
  };

  const sorted = [...rows].sort((a, b) => a.theta_over_pi - b.theta_over_pi);
  const xDomain: [number, number] = [
    Math.min(...sorted.map((r) => r.theta_over_pi)),
    Math.max(...sorted.map((r) => r.theta_over_pi)),
  ];
  const nDomain: [number, number] = [0, Math.max(...sorted.map((r) => r.N)) * 1.05];
  const x = linearScale(xDomain[0], xDomain[1], plot.left, plot.right);
  const yN = linearScale(nDomain[0], nDomain[1], plot.bottom, plot.top);
  const yW = linearScale(0, 1, plot.bottom, plot.top);

  const parts = svgOpen(width, height, title);
  axes(parts, x, yN, xDomain, nDomain, plot, "θ / π", "success probability N");

  // secondary axis for w*
  parts.push(
    `<line x1="${fmt(plot.right)}" y1="${fmt(plot.top)}" x2="${fmt(plot.right)}" y2="${fmt(plot.bottom)}" stroke="black"/>`,
  );
  for (const v of ticks(0, 1, 5)) {
    const py = yW(v);
    parts.push(
      `<line x1="${fmt(plot.right)}" y1="${fmt(py)}" x2="${fmt(plot.right + 5)}" y2="${fmt(py)}" stroke="black"/>`,
      `<text x="${fmt(plot.right + 8)}" y="${fmt(py + 4)}" text-anchor="start" font-size="11">${tickLabel(v)}</text>`,
    );
  }
  parts.push(
    `<text transform="translate(${fmt(width - 14)} ${fmt((plot.top + plot.bottom) / 2)}) rotate(90)" text-anchor="middle" font-size="13">minimal WM strength w*</text>`,
  );

  parts.push(
    `<polyline fill="none" stroke="#1f77b4" stroke-width="1.8" points="${polyline(sorted.map((r) => [r.theta_over_pi, r.N]), x, yN)}"/>`,
    `<polyline fill="none" stroke="#d62728" stroke-width="1.8" stroke-dasharray="6 3" points="${polyline(sorted.map((r) => [r.theta_over_pi, r.w_star]), x, yW)}"/>`,
  );
  for (const r of sorted) {
    parts.push(
      `<circle cx="${fmt(x(r.theta_over_pi))}" cy="${fmt(yN(r.N))}" r="3" fill="#1f77b4"/>`,
      `<circle cx="${fmt(x(r.theta_over_pi))}" cy="${fmt(yW(r.w_star))}" r="2.4" fill="#d62728"/>`,
    );
  }

  const last = sorted[sorted.length - 1];
  parts.push(
    `<text x="${fmt(plot.left + 10)}" y="${fmt(plot.top + 14)}" font-size="11" fill="#1f77b4">N (left axis)</text>`,
    `<text x="${fmt(plot.left + 10)}" y="${fmt(plot.top + 28)}" font-size="11" fill="#d62728">w* (right axis, dashed)</text>`,
    `<text x="${fmt(x(last.theta_over_pi) - 6)}" y="${fmt(yN(last.N) - 8)}" text-anchor="end" font-size="11">N = ${last.N.toFixed(4)}, w* = ${last.w_star.toFixed(4)}</text>`,
    "</svg>",
  );
  return parts.join("\n") + "\n";
}
