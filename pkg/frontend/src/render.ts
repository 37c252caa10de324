/** HTML fragments for the dashboard panels. Pure string builders: the smoke
 * test renders them against a live service without any DOM. */

import { lagChart, seriesChart } from "./charts.js";
import type { ViewState } from "./state.js";
import type { CorrelationPayload, SaxPayload } from "./types.js";

const esc = (s: string) => s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

/** Fixed wording so the lag sign can never be misread. */
export function legendText(): string {
  return "Lag h correlates call[t+h] with social[t]. " +
    "Positive delay: call activity trails social activity (social leads). " +
    "Negative delay: call leads.";
}

export function delaySummary(c: CorrelationPayload): string {
  const d = c.delay;
  const direction = d.lead_lag_label === "no_delay"
    ? "no delay"
    : d.lead_lag_label === "x_lags_y"
      ? `call trails social by ${Math.abs(d.delay)} day(s)`
      : `call leads social by ${Math.abs(d.delay)} day(s)`;
  return `delay ${d.delay} day(s) | peak ${d.peak_correlation.toFixed(3)} ` +
    `(${d.sign}) | ${direction}`;
}

export function trendSummary(s: SaxPayload): string {
  const note = s.comparison.note ? ` (${s.comparison.note})` : "";
  return `${s.comparison.label} | pearson ${s.comparison.pearson_on_indices.toFixed(3)}${note}`;
}

export function correlationPanel(c: CorrelationPayload): string {
  const skipped = c.skipped.length
    ? `<p class="muted">skipped lags: ${c.skipped.map((s) => s.lag).join(", ")}</p>`
    : "";
  return [
    `<h2>Correlation by lag</h2>`,
    lagChart(c.lags, c.delay.delay),
    `<p class="delay" data-role="delay-summary">${esc(delaySummary(c))}</p>`,
    skipped,
  ].join("\n");
}

export function seriesPanel(state: ViewState): string {
  if (!state.data) {
    return "";
  }
  const { callSeries, socialSeries } = state.data;
  return [
    `<h2>Aligned daily series</h2>`,
    seriesChart(callSeries.points, socialSeries.points),
    `<p class="muted"><span class="swatch swatch-call"></span>call ` +
    `<span class="swatch swatch-social"></span>social | ` +
    `${esc(callSeries.start_date)} to ${esc(callSeries.end_date)}</p>`,
  ].join("\n");
}

export function saxPanel(s: SaxPayload): string {
  return [
    `<h2>Weekly symbolic trends</h2>`,
    `<table class="sax"><tbody>`,
    `<tr><th>call</th><td class="word" data-role="sax-call">${esc(s.call.word)}</td></tr>`,
    `<tr><th>social</th><td class="word" data-role="sax-social">${esc(s.social.word)}</td></tr>`,
    `</tbody></table>`,
    `<p class="trend" data-role="trend-summary">${esc(trendSummary(s))}</p>`,
  ].join("\n");
}

export function errorBanner(state: ViewState): string {
  if (!state.error) {
    return "";
  }
  const keeping = state.data ? " Showing the last successful result." : "";
  return `<div class="error" role="alert">${esc(state.error)}.${keeping}</div>`;
}

export function statusLine(state: ViewState): string {
  if (state.loading) {
    return `<span class="loading">loading...</span>`;
  }
  if (!state.data && !state.error) {
    return `<span class="muted">pick a category to begin</span>`;
  }
  return "";
}

export function renderDashboard(state: ViewState): string {
  const sections: string[] = [errorBanner(state), statusLine(state)];
  if (state.data) {
    sections.push(
      `<section>${seriesPanel(state)}</section>`,
      `<section>${correlationPanel(state.data.correlation)}</section>`,
      `<section>${saxPanel(state.data.sax)}</section>`,
    );
  } else if (state.categories.length === 0 && !state.loading && !state.error) {
    sections.push(`<p class="muted">no categories available in the dataset</p>`);
  }
  return sections.filter(Boolean).join("\n");
}
