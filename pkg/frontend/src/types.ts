/** Payload shapes of the /v1 JSON API, mirrored from the service docs. */

export interface CategoriesPayload {
  categories: string[];
  core_categories: string[];
}

export interface SeriesPoint {
  date: string;
  value: number;
  present: boolean;
}

export interface SeriesPayload {
  source: "call" | "social";
  category: string;
  strategy: string;
  start_date: string;
  end_date: string;
  points: SeriesPoint[];
}

export interface LagRow {
  lag: number;
  correlation: number;
  n_overlap: number;
}

export interface DelayInfo {
  delay: number;
  peak_correlation: number;
  sign: "positive" | "negative";
  lead_lag_label: "x_leads_y" | "x_lags_y" | "no_delay";
}

export interface CorrelationPayload {
  params: Record<string, unknown>;
  orientation: { x: string; y: string; note: string };
  lags: LagRow[];
  skipped: { lag: number; reason: string }[];
  delay: DelayInfo;
}

export interface SaxWordPayload {
  word: string;
  symbols: number[];
  word_length: number;
  alphabet_size: number;
  breakpoints: number[];
  source_mean: number;
  source_std: number;
  weekly_values: number[];
}

export interface SaxPayload {
  params: Record<string, unknown>;
  weeks: string[];
  call: SaxWordPayload;
  social: SaxWordPayload;
  comparison: {
    pearson_on_indices: number;
    label: string;
    note: string | null;
  };
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}

/** Selector values driving one round of queries. */
export interface AnalysisParams {
  category: string;
  strategy: "frequency" | "percentage";
  preprocessing: "raw" | "adjusted" | "trend";
  from?: string;
  to?: string;
  maxLag?: number;
  fill?: "zero" | "linear";
  alphabetSize?: number;
}
