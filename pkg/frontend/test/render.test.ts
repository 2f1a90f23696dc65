import { readFileSync } from "fs";
import { dirname, join } from "path";
import { fileURLToPath } from "url";
import { describe, expect, it } from "vitest";

import { render } from "../src/render.js";
import {
  SchemaError,
  normalizedConstant,
  parseCountsCsv,
  parseEntropyJson,
  parseThresholdCsv,
} from "../src/schema.js";

const here = dirname(fileURLToPath(import.meta.url));
const golden = readFileSync(
  join(here, "..", "..", "tests", "data", "golden_threshold.csv"),
  "utf-8",
);

describe("threshold schema", () => {
  it("parses the golden CSV", () => {
    const rows = parseThresholdCsv(golden);
    expect(rows.length).toBe(18);
    expect(new Set(rows.map((r) => r.n))).toEqual(new Set([15, 21, 27]));
  });

  it("rejects a wrong header", () => {
    expect(() => parseThresholdCsv("a,b,c\n1,2,3\n")).toThrow(SchemaError);
  });

  it("rejects empty data after the header", () => {
    expect(() =>
      parseThresholdCsv("family,n,p,trials,successes,mean_runtime_ms\n"),
    ).toThrow(/empty data/);
  });

  it("rejects successes above trials", () => {
    const bad =
      "family,n,p,trials,successes,mean_runtime_ms\nx,9,0.5,10,11,0\n";
    expect(() => parseThresholdCsv(bad)).toThrow(SchemaError);
  });

  it("rejects non-numeric fields", () => {
    const bad =
      "family,n,p,trials,successes,mean_runtime_ms\nx,9,oops,10,5,0\n";
    expect(() => parseThresholdCsv(bad)).toThrow(SchemaError);
  });
});

describe("threshold rendering", () => {
  it("is byte-stable across two runs on the golden CSV", () => {
    const a = render({ kind: "threshold", inputText: golden });
    const b = render({ kind: "threshold", inputText: golden });
    expect(a).toBe(b);
    expect(a.startsWith("<svg")).toBe(true);
  });

  it("draws one curve per n", () => {
    const out = render({ kind: "threshold", inputText: golden });
    const polylines = out.match(/<polyline /g) ?? [];
    expect(polylines.length).toBe(3);
    expect(out).toContain("n = 15");
    expect(out).toContain("n = 21");
    expect(out).toContain("n = 27");
  });

  it("renders a single-row file", () => {
    const single =
      "family,n,p,trials,successes,mean_runtime_ms\n" +
      "superreg_tripartite,15,0.500000,10,7,0.000\n";
    const out = render({ kind: "threshold", inputText: single });
    expect(out).toContain("<svg");
  });

  it("normalized axis uses C* with m = 3n for tripartite families", () => {
    const raw = render({ kind: "threshold", inputText: golden });
    const norm = render({
      kind: "threshold",
      inputText: golden,
      normalize: true,
    });
    expect(norm).not.toBe(raw);
    expect(norm).toContain("C*");
    const c = normalizedConstant("superreg_tripartite", 15, 0.5);
    expect(c).toBeCloseTo((0.5 * Math.pow(45, 2 / 3)) / Math.pow(Math.log(45), 1 / 3));
  });
});

describe("entropy rendering", () => {
  const report = JSON.stringify({
    schema: 1,
    kind: "entropy",
    benchmark: 2.19,
    beta: 0.1,
    eps_prime: 0.1,
    empty: false,
    entropies: { "0": 2.19, "1": 2.05, "2": 2.3, "3": 2.2 },
    lower_fraction: 1.0,
    upper_fraction: 1.0,
  });

  it("parses and renders", () => {
    const parsed = parseEntropyJson(report);
    expect(parsed.entropies.size).toBe(4);
    const out = render({ kind: "entropy", inputText: report });
    expect(out).toContain("H benchmark");
    expect(render({ kind: "entropy", inputText: report })).toBe(out);
  });

  it("rejects wrong schema versions", () => {
    const bad = report.replace('"schema": 1', '"schema": 2').replace(
      '"schema":1',
      '"schema":2',
    );
    expect(() => render({ kind: "entropy", inputText: bad })).toThrow(
      SchemaError,
    );
  });

  it("rejects non-entropy reports", () => {
    const bad = JSON.stringify({ schema: 1, kind: "ldl" });
    expect(() => parseEntropyJson(bad)).toThrow(SchemaError);
  });
});

describe("counts rendering", () => {
  const csv =
    "n,q,trials,mean_count,formula,stderr\n" +
    "6,0.800000,200,2.610000,2.684355,0.190000\n" +
    "9,0.800000,200,37.000000,36.691772,2.100000\n";

  it("parses and renders deterministically", () => {
    expect(parseCountsCsv(csv).length).toBe(2);
    const a = render({ kind: "counts", inputText: csv });
    const b = render({ kind: "counts", inputText: csv });
    expect(a).toBe(b);
    expect(a).toContain("formula");
  });

  it("rejects the threshold header", () => {
    expect(() => parseCountsCsv(golden)).toThrow(SchemaError);
  });
});
