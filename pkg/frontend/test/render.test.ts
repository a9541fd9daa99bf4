import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { renderFig5, renderFig6 } from "../src/render.js";
import { parseFrontierCsv, parseSweepCsv } from "../src/schema.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const sweepRows = parseSweepCsv(readFileSync(join(FIXTURES, "fig5_phi2.csv"), "utf-8"));
const frontierRows = parseFrontierCsv(readFileSync(join(FIXTURES, "frontier.csv"), "utf-8"));

function extractPolylines(svg: string): string[] {
  return [...svg.matchAll(/<polyline [^>]*points="([^"]+)"/g)].map((m) => m[1]);
}

function yValues(points: string): number[] {
  return points.split(" ").map((pair) => Number(pair.split(",")[1]));
}

describe("renderFig5", () => {
  const svg = renderFig5(sweepRows);

  it("is valid standalone SVG with both series pairs", () => {
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect(extractPolylines(svg).length).toBe(2); // one state: damping + protected lines
    const circles = svg.match(/<circle /g) ?? [];
    const squares = svg.match(/<rect x=/g) ?? [];
    expect(circles.length).toBe(sweepRows.length);
    expect(squares.length).toBe(sweepRows.length);
  });

  it("draws the protected curve above the damping-only curve", () => {
    const [adLine, protectLine] = extractPolylines(svg);
    const adY = yValues(adLine);
    const protectY = yValues(protectLine);
    expect(adY.length).toBe(protectY.length);
    // SVG y grows downward, so better fidelity means smaller y
    for (let i = 0; i < adY.length; i += 1) {
      expect(protectY[i]).toBeLessThan(adY[i]);
    }
  });

  it("is deterministic", () => {
    expect(renderFig5(sweepRows)).toBe(svg);
  });

  it("honors the title option", () => {
    expect(renderFig5(sweepRows, { title: "custom title" })).toContain("custom title");
  });

  it("renders one pair of series per state", () => {
    const twoStates = sweepRows.concat(
      sweepRows.map((r) => ({ ...r, theta: r.theta / 2, F_ad_theory: r.F_ad_theory ** 2 })),
    );
    const multi = renderFig5(twoStates);
    expect(extractPolylines(multi).length).toBe(4);
  });
});

describe("renderFig6", () => {
  const svg = renderFig6(frontierRows);

  it("draws N and w* series with a secondary axis", () => {
    expect(extractPolylines(svg).length).toBe(2);
    expect(svg).toContain("success probability N");
    expect(svg).toContain("minimal WM strength w*");
    expect(svg).toContain("stroke-dasharray");
  });

  it("annotates the final frontier point near N = 0.085", () => {
    expect(svg).toMatch(/N = 0\.085\d/);
  });

  it("N curve is monotone decreasing in pixel space", () => {
    const [nLine] = extractPolylines(svg);
    const ys = yValues(nLine);
    for (let i = 1; i < ys.length; i += 1) {
      expect(ys[i]).toBeGreaterThanOrEqual(ys[i - 1] - 0.011); // y grows as N falls
    }
  });

  it("is deterministic", () => {
    expect(renderFig6(frontierRows)).toBe(svg);
  });
});
