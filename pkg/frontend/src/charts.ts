/** SVG chart builders. Pure string producers so they test without a DOM. */

import type { LagRow, SeriesPoint } from "./types.js";

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

function scale(value: number, lo: number, hi: number, outLo: number, outHi: number): number {
  if (hi === lo) {
    return (outLo + outHi) / 2;
  }
  return outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
}

function round2(n: number): number {
  return Math.round(n * 100) / 100;
}

/** Polyline path broken wherever a day is not present. */
function seriesPath(points: SeriesPoint[], lo: number, hi: number,
                    width: number, top: number, bottom: number): string {
  const parts: string[] = [];
  let pen = false;
  points.forEach((p, i) => {
    if (!p.present) {
      pen = false;
      return;
    }
    const x = round2(scale(i, 0, Math.max(points.length - 1, 1), 40, width - 10));
    const y = round2(scale(p.value, lo, hi, bottom, top));
    parts.push(`${pen ? "L" : "M"}${x} ${y}`);
    pen = true;
  });
  return parts.join(" ");
}

export function seriesChart(call: SeriesPoint[], social: SeriesPoint[],
                            width = 860, height = 260): string {
  const present = [...call, ...social].filter((p) => p.present).map((p) => p.value);
  if (present.length === 0) {
    return `<svg class="chart" viewBox="0 0 ${width} ${height}"><text x="20" y="30">no data in window</text></svg>`;
  }
  const lo = Math.min(...present);
  const hi = Math.max(...present);
  const top = 16;
  const bottom = height - 28;
  const first = call[0]?.date ?? "";
  const last = call[call.length - 1]?.date ?? "";
  return [
    `<svg class="chart" viewBox="0 0 ${width} ${height}" role="img" aria-label="call and social series">`,
    `<path class="line-call" d="${seriesPath(call, lo, hi, width, top, bottom)}" fill="none"/>`,
    `<path class="line-social" d="${seriesPath(social, lo, hi, width, top, bottom)}" fill="none"/>`,
    `<text class="axis" x="4" y="${top + 4}">${round2(hi)}</text>`,
    `<text class="axis" x="4" y="${bottom}">${round2(lo)}</text>`,
    `<text class="axis" x="40" y="${height - 8}">${esc(first)}</text>`,
    `<text class="axis" x="${width - 90}" y="${height - 8}">${esc(last)}</text>`,
    `</svg>`,
  ].join("");
}

export function lagChart(lags: LagRow[], delay: number,
                         width = 860, height = 220): string {
  if (lags.length === 0) {
    return `<svg class="chart" viewBox="0 0 ${width} ${height}"><text x="20" y="30">no admissible lags</text></svg>`;
  }
  const top = 12;
  const bottom = height - 26;
  const zeroY = round2(scale(0, -1, 1, bottom, top));
  const band = (width - 60) / lags.length;
  const barWidth = round2(Math.min(30, band * 0.6));
  const bars = lags.map((row, i) => {
    const xCenter = 50 + band * (i + 0.5);
    const x = round2(xCenter - barWidth / 2);
    const yValue = round2(scale(row.correlation, -1, 1, bottom, top));
    const y = Math.min(yValue, zeroY);
    const h = round2(Math.max(Math.abs(yValue - zeroY), 0.5));
    const detected = row.lag === delay ? " detected" : "";
    const title = `h=${row.lag}: r=${row.correlation.toFixed(3)} (n=${row.n_overlap})`;
    return `<rect class="bar${detected}" x="${x}" y="${round2(y)}" width="${barWidth}" height="${h}"><title>${esc(title)}</title></rect>` +
      `<text class="axis" x="${round2(xCenter)}" y="${height - 8}" text-anchor="middle">${row.lag}</text>`;
  });
  return [
    `<svg class="chart" viewBox="0 0 ${width} ${height}" role="img" aria-label="correlation by lag">`,
    `<line class="zero" x1="40" y1="${zeroY}" x2="${width - 10}" y2="${zeroY}"/>`,
    `<text class="axis" x="4" y="${top + 6}">+1</text>`,
    `<text class="axis" x="4" y="${bottom}">-1</text>`,
    ...bars,
    `</svg>`,
  ].join("");
}
