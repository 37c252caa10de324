/** Orchestrates one fetch cycle per selector change and discards stale
 * responses by sequence id. */

import { ApiClient, ApiError } from "./api.js";
import { RequestSequencer } from "./sequencer.js";
import {
  ViewState,
  applyData,
  applyError,
  initialState,
  startLoading,
  withCategories,
} from "./state.js";
import type { AnalysisParams } from "./types.js";

export class DashboardController {
  state: ViewState = initialState();
  private readonly seq = new RequestSequencer();

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: (state: ViewState) => void = () => {},
  ) {}

  private emit(state: ViewState): void {
    this.state = state;
    this.onChange(state);
  }

  async loadCategories(): Promise<string[]> {
    const body = await this.api.categories();
    this.emit(withCategories(this.state, body.categories));
    return body.categories;
  }

  /** One selector change = exactly one request to each data endpoint
   * (series is per source, so four GETs total). Results are applied only
   * if no newer refresh started in the meantime. */
  async refresh(request: AnalysisParams): Promise<void> {
    const id = this.seq.next();
    this.emit(startLoading(this.state, request));
    try {
      const [callSeries, socialSeries, correlation, sax] = await Promise.all([
        this.api.series(request, "call"),
        this.api.series(request, "social"),
        this.api.correlation(request),
        this.api.sax(request),
      ]);
      if (!this.seq.isCurrent(id)) {
        return; // a newer request superseded this one
      }
      this.emit(applyData(this.state, { callSeries, socialSeries, correlation, sax }));
    } catch (err) {
      if (!this.seq.isCurrent(id)) {
        return;
      }
      const message = err instanceof ApiError
        ? `${err.errorType}: ${err.message}`
        : `request failed: ${String(err)}`;
      this.emit(applyError(this.state, message));
    }
  }
}
