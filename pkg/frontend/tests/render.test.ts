import { describe, expect, it } from "vitest";
import { delaySummary, errorBanner, legendText, renderDashboard, trendSummary } from "../src/render.js";
import { applyData, applyError, initialState, startLoading } from "../src/state.js";
import type { CorrelationPayload, SaxPayload, SeriesPayload } from "../src/types.js";

function correlation(delay: number, peak: number): CorrelationPayload {
  return {
    params: {},
    orientation: { x: "call", y: "social", note: "" },
    lags: [{ lag: delay, correlation: peak, n_overlap: 30 }],
    skipped: [],
    delay: {
      delay,
      peak_correlation: peak,
      sign: peak < 0 ? "negative" : "positive",
      lead_lag_label: delay === 0 ? "no_delay" : delay > 0 ? "x_lags_y" : "x_leads_y",
    },
  };
}

function saxPayload(label: string): SaxPayload {
  return {
    params: {}, weeks: ["2023-W01", "2023-W02"],
    call: wordPayload("ab"), social: wordPayload("ba"),
    comparison: { pearson_on_indices: -1, label, note: null },
  };
}

function wordPayload(word: string) {
  return { word, symbols: [...word].map((c) => c.charCodeAt(0) - 97),
           word_length: word.length, alphabet_size: 5, breakpoints: [],
           source_mean: 0, source_std: 1, weekly_values: [1, 2] };
}

function seriesPayload(source: "call" | "social"): SeriesPayload {
  return { source, category: "work", strategy: "frequency",
           start_date: "2023-01-02", end_date: "2023-01-03",
           points: [{ date: "2023-01-02", value: 1, present: true },
                    { date: "2023-01-03", value: 2, present: true }] };
}

function loadedState(delay = 2, peak = 0.9, label = "positively_correlated") {
  let state = startLoading(initialState(), {
    category: "work", strategy: "frequency", preprocessing: "adjusted",
  });
  state = applyData(state, {
    callSeries: seriesPayload("call"),
    socialSeries: seriesPayload("social"),
    correlation: correlation(delay, peak),
    sax: saxPayload(label),
  });
  return state;
}

describe("summaries", () => {
  it("describes a trailing call series", () => {
    expect(delaySummary(correlation(2, 0.9)))
      .toBe("delay 2 day(s) | peak 0.900 (positive) | call trails social by 2 day(s)");
  });

  it("describes no delay and leading calls", () => {
    expect(delaySummary(correlation(0, 0.86))).toContain("no delay");
    expect(delaySummary(correlation(-3, -0.5))).toContain("call leads social by 3 day(s)");
    expect(delaySummary(correlation(-3, -0.5))).toContain("(negative)");
  });

  it("summarizes the trend comparison", () => {
    expect(trendSummary(saxPayload("negatively_correlated")))
      .toBe("negatively_correlated | pearson -1.000");
  });

  it("legend pins the lag orientation", () => {
    expect(legendText()).toContain("call[t+h]");
    expect(legendText()).toContain("social leads");
  });
});

describe("renderDashboard", () => {
  it("renders all three panels once data arrives", () => {
    const html = renderDashboard(loadedState());
    expect(html).toContain("Aligned daily series");
    expect(html).toContain("Correlation by lag");
    expect(html).toContain("Weekly symbolic trends");
    expect(html).toContain('data-role="delay-summary"');
    expect(html).toContain('data-role="sax-call"');
  });

  it("shows an empty-state message without categories", () => {
    expect(renderDashboard(initialState())).toContain("no categories available");
  });

  it("keeps prior results under the error banner", () => {
    const state = applyError(loadedState(), "InsufficientDataError: window too small");
    const html = renderDashboard(state);
    expect(html).toContain("window too small");
    expect(html).toContain("last successful result");
    expect(html).toContain("Correlation by lag");
  });

  it("escapes error text", () => {
    const banner = errorBanner(applyError(initialState(), "<script>alert(1)</script>"));
    expect(banner).not.toContain("<script>");
    expect(banner).toContain("&lt;script&gt;");
  });
});
