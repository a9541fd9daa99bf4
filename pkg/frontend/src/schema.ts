/**
 * CSV schemas emitted by the qprotect CLI. The header row is part of the
 * contract: any deviation is a SchemaError, not something to repair.
 */

export const SWEEP_COLUMNS = [
  "theta", "phi", "gamma", "t", "p", "w", "wr",
  "F_ad_theory", "F_ad_sim", "F_protect_theory", "F_protect_sim",
  "N_theory", "N_sim",
] as const;

export const FRONTIER_COLUMNS = ["theta_over_pi", "w_star", "N", "F"] as const;

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export class EmptyInputError extends SchemaError {
  constructor(message: string) {
    super(message);
    this.name = "EmptyInputError";
  }
}

export interface SweepRow {
  theta: number;
  phi: number;
  gamma: number;
  t: number;
  p: number;
  w: number;
  wr: number;
  F_ad_theory: number;
  F_ad_sim: number;
  F_protect_theory: number;
  F_protect_sim: number;
  N_theory: number;
  N_sim: number;
}

export interface FrontierRow {
  theta_over_pi: number;
  w_star: number;
  N: number;
  F: number;
}

function splitLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.trim().length > 0);
}

function parseTable(text: string, columns: readonly string[], label: string): number[][] {
  const lines = splitLines(text);
  if (lines.length === 0) {
    throw new EmptyInputError(`${label}: input is empty`);
  }
  const header = lines[0].split(",");
  if (header.length !== columns.length || columns.some((c, i) => header[i] !== c)) {
    throw new SchemaError(
      `${label}: header mismatch\n  expected: ${columns.join(",")}\n  got:      ${lines[0]}`,
    );
  }
  if (lines.length === 1) {
    throw new EmptyInputError(`${label}: no data rows`);
  }
  return lines.slice(1).map((line, rowIdx) => {
    const fields = line.split(",");
    if (fields.length !== columns.length) {
      throw new SchemaError(
        `${label}: row ${rowIdx + 1} has ${fields.length} fields, expected ${columns.length}`,
      );
    }
    return fields.map((field, colIdx) => {
      const value = Number(field);
      if (!Number.isFinite(value)) {
        throw new SchemaError(
          `${label}: row ${rowIdx + 1}, column ${columns[colIdx]}: not a number: ${field}`,
        );
      }
      return value;
    });
  });
}

export function parseSweepCsv(text: string): SweepRow[] {
  return parseTable(text, SWEEP_COLUMNS, "sweep CSV").map((fields) => {
    const row = {} as Record<string, number>;
    SWEEP_COLUMNS.forEach((col, i) => (row[col] = fields[i]));
    return row as unknown as SweepRow;
  });
}

export function parseFrontierCsv(text: string): FrontierRow[] {
  return parseTable(text, FRONTIER_COLUMNS, "frontier CSV").map((fields) => ({
    theta_over_pi: fields[0],
    w_star: fields[1],
    N: fields[2],
    F: fields[3],
  }));
}
