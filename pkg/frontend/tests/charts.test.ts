import { describe, expect, it } from "vitest";
import { lagChart, seriesChart } from "../src/charts.js";
import type { LagRow, SeriesPoint } from "../src/types.js";

function points(values: (number | null)[]): SeriesPoint[] {
  return values.map((v, i) => ({
    date: `2023-01-${String(i + 2).padStart(2, "0")}`,
    value: v ?? 0,
    present: v !== null,
  }));
}

describe("seriesChart", () => {
  it("draws one path per source", () => {
    const svg = seriesChart(points([1, 2, 3]), points([3, 2, 1]));
    expect(svg.match(/<path/g)).toHaveLength(2);
    expect(svg).toContain("line-call");
    expect(svg).toContain("line-social");
  });

  it("breaks the line at not-present days", () => {
    const svg = seriesChart(points([1, null, 3, 4]), points([1, 1, 1, 1]));
    const callPath = svg.match(/class="line-call" d="([^"]*)"/)![1];
    expect(callPath.match(/M/g)).toHaveLength(2); // pen lifts over the gap
  });

  it("handles an empty window", () => {
    const svg = seriesChart(points([null, null]), points([null, null]));
    expect(svg).toContain("no data");
  });
});

describe("lagChart", () => {
  const lags: LagRow[] = [
    { lag: -1, correlation: -0.2, n_overlap: 20 },
    { lag: 0, correlation: 0.4, n_overlap: 21 },
    { lag: 1, correlation: 0.9, n_overlap: 20 },
  ];

  it("draws one bar per lag and highlights the detected delay", () => {
    const svg = lagChart(lags, 1);
    expect(svg.match(/<rect/g)).toHaveLength(3);
    expect(svg.match(/class="bar detected"/g)).toHaveLength(1);
    expect(svg).toContain("h=1: r=0.900");
  });

  it("labels every lag on the axis", () => {
    const svg = lagChart(lags, 0);
    for (const label of [">-1<", ">0<", ">1<"]) {
      expect(svg).toContain(label);
    }
  });

  it("handles an empty table", () => {
    expect(lagChart([], 0)).toContain("no admissible lags");
  });
});
