// Parsers for the documented trifactor output schemas. Anything that does
// not match raises SchemaError; the CLI turns that into a nonzero exit.

export class SchemaError extends Error {}

export interface ThresholdRow {
  family: string;
  n: number;
  p: number;
  trials: number;
  successes: number;
  meanRuntimeMs: number;
}

export interface CountsRow {
  n: number;
  q: number;
  trials: number;
  meanCount: number;
  formula: number;
  stderr: number;
}

export interface EntropyReport {
  benchmark: number;
  entropies: Map<string, number>;
}

export const THRESHOLD_HEADER =
  "family,n,p,trials,successes,mean_runtime_ms";
export const COUNTS_HEADER = "n,q,trials,mean_count,formula,stderr";

function splitCsv(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .filter((line) => line.trim().length > 0)
    .map((line) => line.split(","));
}

function num(field: string, where: string): number {
  const x = Number(field);
  if (field.trim() === "" || Number.isNaN(x)) {
    throw new SchemaError(`${where}: not a number: ${JSON.stringify(field)}`);
  }
  return x;
}

export function parseThresholdCsv(text: string): ThresholdRow[] {
  const rows = splitCsv(text);
  if (rows.length === 0) {
    throw new SchemaError("empty file");
  }
  if (rows[0].join(",") !== THRESHOLD_HEADER) {
    throw new SchemaError(
      `bad threshold header: expected "${THRESHOLD_HEADER}", got "${rows[0].join(",")}"`,
    );
  }
  const out: ThresholdRow[] = [];
  rows.slice(1).forEach((cells, i) => {
    const where = `row ${i + 2}`;
    if (cells.length !== 6) {
      throw new SchemaError(`${where}: expected 6 fields, got ${cells.length}`);
    }
    const row: ThresholdRow = {
      family: cells[0],
      n: num(cells[1], where),
      p: num(cells[2], where),
      trials: num(cells[3], where),
      successes: num(cells[4], where),
      meanRuntimeMs: num(cells[5], where),
    };
    if (row.trials < 0 || row.successes < 0 || row.successes > row.trials) {
      throw new SchemaError(`${where}: successes outside 0..trials`);
    }
    if (row.p < 0 || row.p > 1) {
      throw new SchemaError(`${where}: p outside [0,1]`);
    }
    out.push(row);
  });
  if (out.length === 0) {
    throw new SchemaError("empty data: no rows after the header");
  }
  return out;
}

export function parseCountsCsv(text: string): CountsRow[] {
  const rows = splitCsv(text);
  if (rows.length === 0) {
    throw new SchemaError("empty file");
  }
  if (rows[0].join(",") !== COUNTS_HEADER) {
    throw new SchemaError(
      `bad counts header: expected "${COUNTS_HEADER}", got "${rows[0].join(",")}"`,
    );
  }
  const out: CountsRow[] = [];
  rows.slice(1).forEach((cells, i) => {
    const where = `row ${i + 2}`;
    if (cells.length !== 6) {
      throw new SchemaError(`${where}: expected 6 fields, got ${cells.length}`);
    }
    out.push({
      n: num(cells[0], where),
      q: num(cells[1], where),
      trials: num(cells[2], where),
      meanCount: num(cells[3], where),
      formula: num(cells[4], where),
      stderr: num(cells[5], where),
    });
  });
  if (out.length === 0) {
    throw new SchemaError("empty data: no rows after the header");
  }
  return out;
}

export function parseEntropyJson(text: string): EntropyReport {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (e) {
    throw new SchemaError(`not valid JSON: ${(e as Error).message}`);
  }
  const obj = raw as Record<string, unknown>;
  if (obj["schema"] !== 1) {
    throw new SchemaError(`unsupported schema version: ${obj["schema"]}`);
  }
  if (obj["kind"] !== "entropy") {
    throw new SchemaError(`expected an entropy report, got ${obj["kind"]}`);
  }
  const benchmark = obj["benchmark"];
  if (typeof benchmark !== "number") {
    throw new SchemaError("missing numeric benchmark");
  }
  const entries = obj["entropies"];
  if (typeof entries !== "object" || entries === null) {
    throw new SchemaError("missing entropies map");
  }
  const entropies = new Map<string, number>();
  for (const [k, v] of Object.entries(entries as Record<string, unknown>)) {
    if (typeof v !== "number") {
      throw new SchemaError(`entropy of ${k} is not a number`);
    }
    entropies.set(k, v);
  }
  if (entropies.size === 0) {
    throw new SchemaError("empty data: no per-vertex entropies");
  }
  return { benchmark, entropies };
}

// total vertex count of a family instance; tripartite families have 3n
export function totalVertices(family: string, n: number): number {
  return family.endsWith("_tripartite") ? 3 * n : n;
}

// C* = p * m^(2/3) / (log m)^(1/3)
export function normalizedConstant(family: string, n: number, p: number): number {
  const m = totalVertices(family, n);
  return (p * Math.pow(m, 2 / 3)) / Math.pow(Math.log(m), 1 / 3);
}
