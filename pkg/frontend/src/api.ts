/** Thin typed client for the /v1 endpoints. All math happens server-side;
 * this module only builds query strings and decodes JSON. */

import type {
  AnalysisParams,
  CategoriesPayload,
  CorrelationPayload,
  SaxPayload,
  SeriesPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorType: string,
    detail: string,
  ) {
    super(detail);
  }
}

export function buildQuery(params: Record<string, string | number | undefined>): string {
  const query = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== "") {
      query.set(key, String(value));
    }
  }
  const text = query.toString();
  return text ? `?${text}` : "";
}

function commonParams(p: AnalysisParams): Record<string, string | number | undefined> {
  return {
    category: p.category,
    strategy: p.strategy,
    from: p.from,
    to: p.to,
  };
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`);
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const err = (body ?? {}) as { error?: string; detail?: string };
      throw new ApiError(response.status, err.error ?? "HttpError",
        err.detail ?? `request failed with status ${response.status}`);
    }
    return body as T;
  }

  categories(): Promise<CategoriesPayload> {
    return this.get<CategoriesPayload>("/v1/categories");
  }

  series(p: AnalysisParams, source: "call" | "social"): Promise<SeriesPayload> {
    return this.get<SeriesPayload>(`/v1/series${buildQuery({ ...commonParams(p), source })}`);
  }

  correlation(p: AnalysisParams): Promise<CorrelationPayload> {
    return this.get<CorrelationPayload>(`/v1/correlation${buildQuery({
      ...commonParams(p),
      preprocessing: p.preprocessing,
      max_lag: p.maxLag,
      fill: p.fill,
    })}`);
  }

  sax(p: AnalysisParams): Promise<SaxPayload> {
    return this.get<SaxPayload>(`/v1/sax${buildQuery({
      ...commonParams(p),
      alphabet_size: p.alphabetSize,
    })}`);
  }
}
