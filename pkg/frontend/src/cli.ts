#!/usr/bin/env node
/**
 * plot --kind fig5|fig6 --in <csv> --out <img>
 *
 * Renders a qprotect sweep CSV (fig5: fidelity vs time) or frontier CSV
 * (fig6: N and w* vs theta) to an SVG image. Exit codes: 0 on success,
 * 1 on unreadable input or schema mismatch, 2 on bad usage.
 */

import { readFileSync, realpathSync, writeFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import { renderFig5, renderFig6 } from "./render.js";
import { parseFrontierCsv, parseSweepCsv, SchemaError } from "./schema.js";

export interface PlotJob {
  kind: "fig5" | "fig6";
  input: string;
  output: string;
  title?: string;
}

export class UsageError extends Error {}

export function parseArgs(argv: string[]): PlotJob {
  const job: Partial<PlotJob> = {};
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) {
        throw new UsageError(`missing value for ${arg}`);
      }
      return argv[i];
    };
    switch (arg) {
      case "--kind": {
        const kind = next();
        if (kind !== "fig5" && kind !== "fig6") {
          throw new UsageError(`--kind must be fig5 or fig6, got ${kind}`);
        }
        job.kind = kind;
        break;
      }
      case "--in":
        job.input = next();
        break;
      case "--out":
        job.output = next();
        break;
      case "--title":
        job.title = next();
        break;
      default:
        throw new UsageError(`unknown argument ${arg}`);
    }
  }
  if (!job.kind || !job.input || !job.output) {
    throw new UsageError("usage: plot --kind fig5|fig6 --in <csv> --out <svg> [--title <text>]");
  }
  return job as PlotJob;
}

export function runJob(job: PlotJob): void {
  const text = readFileSync(job.input, "utf-8");
  const svg =
    job.kind === "fig5"
      ? renderFig5(parseSweepCsv(text), { title: job.title })
      : renderFig6(parseFrontierCsv(text), { title: job.title });
  writeFileSync(job.output, svg, "utf-8");
}

export function main(argv: string[]): number {
  let job: PlotJob;
  try {
    job = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    runJob(job);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
    } else {
      process.stderr.write(`error: ${(err as Error).message}\n`);
    }
    return 1;
  }
  return 0;
}

function isMainModule(): boolean {
  if (!process.argv[1]) {
    return false;
  }
  try {
    return realpathSync(process.argv[1]) === fileURLToPath(import.meta.url);
  } catch {
    return false;
  }
}

if (isMainModule()) {
  process.exit(main(process.argv.slice(2)));
}
