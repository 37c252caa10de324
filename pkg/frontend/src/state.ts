/** Dashboard view state and its pure transitions.
 *
 * Rendered values always come from the last successful response set; an
 * error keeps the previous data on screen and only swaps the banner.
 */

import type {
  AnalysisParams,
  CorrelationPayload,
  SaxPayload,
  SeriesPayload,
} from "./types.js";

export interface FetchedData {
  callSeries: SeriesPayload;
  socialSeries: SeriesPayload;
  correlation: CorrelationPayload;
  sax: SaxPayload;
}

export interface ViewState {
  request: AnalysisParams | null;
  categories: string[];
  data: FetchedData | null;
  loading: boolean;
  error: string | null;
}

export function initialState(): ViewState {
  return { request: null, categories: [], data: null, loading: false, error: null };
}

export function withCategories(state: ViewState, categories: string[]): ViewState {
  return { ...state, categories };
}

export function startLoading(state: ViewState, request: AnalysisParams): ViewState {
  return { ...state, request, loading: true };
}

export function applyData(state: ViewState, data: FetchedData): ViewState {
  return { ...state, data, loading: false, error: null };
}

export function applyError(state: ViewState, message: string): ViewState {
  // prior results stay visible under the banner
  return { ...state, loading: false, error: message };
}
