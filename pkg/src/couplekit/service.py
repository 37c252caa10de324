"""Read-only HTTP/JSON service over one cached dataset snapshot.

The snapshot is loaded once at startup and never mutated, so concurrent
requests are safe. All endpoints live under /v1 and answer with the same
canonical JSON the CLI emits for identical parameters. Errors come back
as {"error", "detail"}: 400 for bad parameters, 404 for an unknown
category, 422 when the data cannot support the requested analysis.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .cache import Dataset, load_dataset
from .config import Config
from .errors import CouplekitError, UnknownCategoryError
from .pipeline import (AnalysisRequest, ValidationError, canonical_json,
                       categories_payload, correlation_payload,
                       decomposition_payload, parse_iso_date, sax_payload,
                       series_payload)

API_PREFIX = "/v1"


def _json(payload: dict) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")


def _status_for(exc: CouplekitError) -> int:
    if isinstance(exc, UnknownCategoryError):
        return 404
    if isinstance(exc, ValidationError):
        return 400
    return 422


def create_app(cache_dir: str | Path, *, config: Config | None = None,
               ui_dir: str | Path | None = None, dataset: Dataset | None = None) -> FastAPI:
    """Build the service over the snapshot in ``cache_dir``.

    ``dataset`` can be passed directly in tests to skip the disk round
    trip. ``ui_dir`` optionally mounts built UI assets at the root.
    """
    config = config or Config()
    data = dataset if dataset is not None else load_dataset(cache_dir)
    app = FastAPI(title="couplekit", version="0.1.0", docs_url="/v1/docs",
                  openapi_url="/v1/openapi.json")

    @app.exception_handler(CouplekitError)
    async def _toolkit_error(_request: Request, exc: CouplekitError):
        return JSONResponse(status_code=_status_for(exc),
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _bad_params(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"error": "ValidationError", "detail": str(exc)})

    def build_request(category: str, strategy: str | None, preprocessing: str | None,
                      date_from: str | None, date_to: str | None, max_lag: int | None,
                      min_overlap: int | None, word_length: int | None,
                      alphabet_size: int | None, period: int | None, fill: str | None,
                      source: str | None = None, trend_threshold: float | None = None,
                      ) -> AnalysisRequest:
        return AnalysisRequest.from_defaults(
            config.defaults,
            category=category,
            strategy=strategy,
            preprocessing=preprocessing,
            start=parse_iso_date(date_from, "from") if date_from else None,
            end=parse_iso_date(date_to, "to") if date_to else None,
            max_lag=max_lag,
            min_overlap=min_overlap,
            word_length=word_length,
            alphabet_size=alphabet_size,
            period=period,
            fill=fill,
            source=source,
            trend_threshold=trend_threshold,
        )

    @app.get(f"{API_PREFIX}/categories")
    def get_categories():
        return _json(categories_payload(data))

    @app.get(f"{API_PREFIX}/series")
    def get_series(category: str,
                   source: str = "call",
                   strategy: str | None = None,
                   date_from: str | None = Query(default=None, alias="from"),
                   date_to: str | None = Query(default=None, alias="to")):
        req = build_request(category, strategy, None, date_from, date_to,
                            None, None, None, None, None, None, source=source)
        return _json(series_payload(data, req))

    @app.get(f"{API_PREFIX}/decomposition")
    def get_decomposition(category: str,
                          source: str = "call",
                          strategy: str | None = None,
                          period: int | None = None,
                          fill: str | None = None,
                          date_from: str | None = Query(default=None, alias="from"),
                          date_to: str | None = Query(default=None, alias="to")):
        req = build_request(category, strategy, None, date_from, date_to,
                            None, None, None, None, period, fill, source=source)
        return _json(decomposition_payload(data, req))

    @app.get(f"{API_PREFIX}/correlation")
    def get_correlation(category: str,
                        strategy: str | None = None,
                        preprocessing: str | None = None,
                        max_lag: int | None = None,
                        min_overlap: int | None = None,
                        period: int | None = None,
                        fill: str | None = None,
                        date_from: str | None = Query(default=None, alias="from"),
                        date_to: str | None = Query(default=None, alias="to")):
        req = build_request(category, strategy, preprocessing, date_from, date_to,
                            max_lag, min_overlap, None, None, period, fill)
        return _json(correlation_payload(data, req))

    @app.get(f"{API_PREFIX}/sax")
    def get_sax(category: str,
                strategy: str | None = None,
                word_length: int | None = None,
                alphabet_size: int | None = None,
                trend_threshold: float | None = None,
                date_from: str | None = Query(default=None, alias="from"),
                date_to: str | None = Query(default=None, alias="to")):
        req = build_request(category, strategy, None, date_from, date_to,
                            None, None, word_length, alphabet_size, None, None,
                            trend_threshold=trend_threshold)
        return _json(sax_payload(data, req))

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
