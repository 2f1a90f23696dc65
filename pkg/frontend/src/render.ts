// Figure rendering for the three documented report kinds. Rendering is a
// pure function of the input text, so identical inputs give identical
// SVG bytes.

import {
  CountsRow,
  EntropyReport,
  SchemaError,
  ThresholdRow,
  normalizedConstant,
  parseCountsCsv,
  parseEntropyJson,
  parseThresholdCsv,
} from "./schema.js";
import * as svg from "./svg.js";

export type PlotKind = "threshold" | "entropy" | "counts";

export interface PlotSpec {
  kind: PlotKind;
  inputText: string;
  normalize?: boolean; // threshold only: C* axis instead of raw p
}

export function render(spec: PlotSpec): string {
  switch (spec.kind) {
    case "threshold":
      return renderThreshold(parseThresholdCsv(spec.inputText),
                             spec.normalize ?? false);
    case "entropy":
      return renderEntropy(parseEntropyJson(spec.inputText));
    case "counts":
      return renderCounts(parseCountsCsv(spec.inputText));
    default:
      throw new SchemaError(`unknown plot kind: ${spec.kind}`);
  }
}

function renderThreshold(rows: ThresholdRow[], normalize: boolean): string {
  const byN = new Map<number, ThresholdRow[]>();
  for (const row of rows) {
    const bucket = byN.get(row.n) ?? [];
    bucket.push(row);
    byN.set(row.n, bucket);
  }
  const ns = [...byN.keys()].sort((a, b) => a - b);
  const xOf = (r: ThresholdRow) =>
    normalize ? normalizedConstant(r.family, r.n, r.p) : r.p;
  const xsAll = rows.map(xOf);
  const xs = svg.xScale(Math.min(...xsAll), Math.max(...xsAll));
  const ys = svg.yScale(0, 1);
  const body = svg.axes(
    xs,
    ys,
    normalize ? "C* = p m^(2/3) (log m)^(-1/3)" : "retention probability p",
    "success rate",
    "triangle factor success rate",
  );
  ns.forEach((n, i) => {
    const color = svg.PALETTE[i % svg.PALETTE.length];
    const series = byN
      .get(n)!
      .slice()
      .sort((a, b) => xOf(a) - xOf(b));
    const pts: Array<[number, number]> = series.map((r) => [
      xs.toPx(xOf(r)),
      ys.toPx(r.trials > 0 ? r.successes / r.trials : 0),
    ]);
    body.push(svg.polyline(pts, color));
    pts.forEach(([x, y]) => body.push(svg.circle(x, y, color)));
    body.push(
      svg.text(
        svg.WIDTH - svg.MARGIN.right - 6,
        svg.MARGIN.top + 16 * (i + 1),
        `n = ${n}`,
        "end",
      ),
    );
    body.push(
      svg.line(
        svg.WIDTH - svg.MARGIN.right - 58,
        svg.MARGIN.top + 16 * (i + 1) - 4,
        svg.WIDTH - svg.MARGIN.right - 42,
        svg.MARGIN.top + 16 * (i + 1) - 4,
        color,
      ),
    );
  });
  return svg.document(body);
}

function renderEntropy(report: EntropyReport): string {
  const values = [...report.entropies.values()];
  const lo = Math.min(...values, report.benchmark);
  const hi = Math.max(...values, report.benchmark);
  const span = hi > lo ? hi - lo : 1;
  const bins = 20;
  const counts = new Array<number>(bins).fill(0);
  for (const v of values) {
    let b = Math.floor(((v - lo) / span) * bins);
    if (b >= bins) b = bins - 1;
    if (b < 0) b = 0;
    counts[b] += 1;
  }
  const xs = svg.xScale(lo - 0.05 * span, hi + 0.05 * span);
  const ys = svg.yScale(0, Math.max(...counts, 1));
  const body = svg.axes(xs, ys, "conditional entropy (nats)", "vertices",
                        "entropy profile against the benchmark");
  const y0 = svg.HEIGHT - svg.MARGIN.bottom;
  counts.forEach((c, b) => {
    if (c === 0) return;
    const x1 = xs.toPx(lo + (b / bins) * span);
    const x2 = xs.toPx(lo + ((b + 1) / bins) * span);
    const yTop = ys.toPx(c);
    body.push(svg.rect(x1, yTop, x2 - x1, y0 - yTop, svg.PALETTE[0]));
  });
  const bx = xs.toPx(report.benchmark);
  body.push(svg.line(bx, y0, bx, svg.MARGIN.top, svg.PALETTE[1], true));
  body.push(svg.text(bx, svg.MARGIN.top + 12, "H benchmark", "middle"));
  return svg.document(body);
}

function renderCounts(rows: CountsRow[]): string {
  const sorted = rows.slice().sort((a, b) => a.n - b.n);
  const ns = sorted.map((r) => r.n);
  const vals = sorted.flatMap((r) => [r.meanCount, r.formula]);
  const xs = svg.xScale(Math.min(...ns) - 1, Math.max(...ns) + 1);
  const ys = svg.yScale(0, Math.max(...vals, 1) * 1.05);
  const body = svg.axes(xs, ys, "n", "triangle factors",
                        "empirical mean against the expectation formula");
  const mean: Array<[number, number]> = sorted.map((r) => [
    xs.toPx(r.n),
    ys.toPx(r.meanCount),
  ]);
  const formula: Array<[number, number]> = sorted.map((r) => [
    xs.toPx(r.n),
    ys.toPx(r.formula),
  ]);
  body.push(svg.polyline(formula, svg.PALETTE[1]));
  body.push(svg.polyline(mean, svg.PALETTE[0]));
  mean.forEach(([x, y]) => body.push(svg.circle(x, y, svg.PALETTE[0])));
  sorted.forEach((r, i) => {
    const x = xs.toPx(r.n);
    const up = ys.toPx(r.meanCount + r.stderr);
    const down = ys.toPx(Math.max(0, r.meanCount - r.stderr));
    body.push(svg.line(x, down, x, up, svg.PALETTE[0]));
    void i;
  });
  body.push(
    svg.text(svg.WIDTH - svg.MARGIN.right - 6, svg.MARGIN.top + 16,
             "empirical mean", "end"),
  );
  body.push(
    svg.text(svg.WIDTH - svg.MARGIN.right - 6, svg.MARGIN.top + 32,
             "formula", "end"),
  );
  return svg.document(body);
}
