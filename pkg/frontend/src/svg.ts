// Minimal deterministic SVG builder: fixed canvas, text rendered with a
// generic font family and no external resources, numbers always emitted
// via toFixed so output bytes depend only on input data.

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN = { left: 60, right: 20, top: 34, bottom: 46 };

export const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

const fmt = (x: number): string => x.toFixed(2);

export interface Scale {
  lo: number;
  hi: number;
  toPx(x: number): number;
}

export function xScale(lo: number, hi: number): Scale {
  const span = hi > lo ? hi - lo : 1;
  return {
    lo,
    hi,
    toPx: (x) =>
      MARGIN.left + ((x - lo) / span) * (WIDTH - MARGIN.left - MARGIN.right),
  };
}

export function yScale(lo: number, hi: number): Scale {
  const span = hi > lo ? hi - lo : 1;
  return {
    lo,
    hi,
    toPx: (y) =>
      HEIGHT - MARGIN.bottom -
      ((y - lo) / span) * (HEIGHT - MARGIN.top - MARGIN.bottom),
  };
}

export function polyline(
  points: Array<[number, number]>,
  color: string,
): string {
  const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `  <polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.5" />`;
}

export function circle(x: number, y: number, color: string): string {
  return `  <circle cx="${fmt(x)}" cy="${fmt(y)}" r="2.5" fill="${color}" />`;
}

export function rect(
  x: number,
  y: number,
  w: number,
  h: number,
  color: string,
): string {
  return `  <rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${color}" fill-opacity="0.7" />`;
}

export function line(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  color: string,
  dashed = false,
): string {
  const dash = dashed ? ' stroke-dasharray="5,4"' : "";
  return `  <line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${color}" stroke-width="1"${dash} />`;
}

export function text(
  x: number,
  y: number,
  s: string,
  anchor: "start" | "middle" | "end" = "start",
  size = 12,
): string {
  const esc = s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
  return `  <text x="${fmt(x)}" y="${fmt(y)}" font-family="sans-serif" font-size="${size}" text-anchor="${anchor}">${esc}</text>`;
}

export function axes(
  xs: Scale,
  ys: Scale,
  xLabel: string,
  yLabel: string,
  title: string,
): string[] {
  const parts: string[] = [];
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(line(x0, y0, x1, y0, "#000"));
  parts.push(line(x0, y0, x0, y1, "#000"));
  const ticks = 5;
  for (let i = 0; i <= ticks; i++) {
    const xv = xs.lo + ((xs.hi - xs.lo) * i) / ticks;
    const yv = ys.lo + ((ys.hi - ys.lo) * i) / ticks;
    const px = xs.toPx(xv);
    const py = ys.toPx(yv);
    parts.push(line(px, y0, px, y0 + 4, "#000"));
    parts.push(text(px, y0 + 17, xv.toFixed(3), "middle", 10));
    parts.push(line(x0 - 4, py, x0, py, "#000"));
    parts.push(text(x0 - 7, py + 3, yv.toFixed(2), "end", 10));
  }
  parts.push(text((x0 + x1) / 2, HEIGHT - 8, xLabel, "middle"));
  parts.push(text(14, (y0 + y1) / 2, yLabel, "middle"));
  parts.push(text((x0 + x1) / 2, 20, title, "middle", 14));
  return parts;
}

export function document(body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" width="${WIDTH}" height="${HEIGHT}">`,
    `  <rect width="${WIDTH}" height="${HEIGHT}" fill="white" />`,
    ...body,
    `</svg>`,
    ``,
  ].join("\n");
}
