"""Command-line front door for the toolkit.

Subcommands mirror the pipeline stages: ingest raw files into a cache,
inspect series and decompositions, run lag-correlation and symbolic
comparison, generate synthetic fixtures, and serve the HTTP API. Results
go to stdout; diagnostics go to stderr with exit code 1 (usage problems
exit 2).
"""
from __future__ import annotations

import sys
from datetime import date, timedelta
from functools import wraps
from pathlib import Path

import click

from .cache import build_cache, load_dataset, rules_for
from .config import load_config, resolve_cache_dir
from .errors import CouplekitError
from .pipeline import (AnalysisRequest, canonical_json, categories_payload,
                       correlation_payload, decomposition_payload,
                       parse_iso_date, sax_payload, series_payload)
from .rules import load_rules
from .synth import CategoryRate, Coupling, SynthSpec, write_fixture


def _fail_on_error(fn):
    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CouplekitError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
    return wrapper


@click.group()
def main():
    """Coupling analysis between call-centre and social-media event streams."""


@main.command()
@click.option("--calls", "call_files", multiple=True, type=click.Path(exists=True, path_type=Path),
              help="Call-centre CSV file (repeatable).")
@click.option("--posts", "post_files", multiple=True, type=click.Path(exists=True, path_type=Path),
              help="Post file, CSV or JSON lines (repeatable).")
@click.option("--cache", "cache_dir", default=None, help="Cache directory to build.")
@click.option("--rules", "rules_path", type=click.Path(exists=True, path_type=Path), default=None,
              help="Rules YAML (default: shipped rules).")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--delimiter", default=",", show_default=True)
@_fail_on_error
def ingest(call_files, post_files, cache_dir, rules_path, config_path, delimiter):
    """Parse, categorize, and cache raw event files."""
    config = load_config(config_path)
    rules = rules_for(config) if rules_path is None else load_rules(rules_path)
    cache = resolve_cache_dir(cache_dir)
    manifest = build_cache(cache, call_files=list(call_files), post_files=list(post_files),
                           rules=rules, config=config, delimiter=delimiter)
    total_errors = sum(s["errors"] for s in manifest["sources"])
    for src in manifest["sources"]:
        click.echo(f"{src['kind']}: {src['path']} -> {src['records']} records, "
                   f"{src['errors']} bad rows")
    if total_errors:
        click.echo(f"warning: {total_errors} row(s) could not be parsed; "
                    f"see {cache / 'ingest_errors.csv'}", err=True)
    click.echo(f"cache written to {cache}")


def _date_option(name, help_text):
    return click.option(name, default=None, help=help_text)


def _analysis_options(fn):
    for deco in (
        click.option("--cache", "cache_dir", default=None, help="Dataset cache directory."),
        click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path),
                     default=None),
        click.option("--category", required=True),
        click.option("--strategy", type=click.Choice(["frequency", "percentage"]),
                     default="frequency", show_default=True),
        _date_option("--from", "Window start (YYYY-MM-DD)."),
        _date_option("--to", "Window end (YYYY-MM-DD)."),
        click.option("--json", "as_json", is_flag=True, help="Emit the JSON payload."),
    )[::-1]:
        fn = deco(fn)
    return fn


def _parse_window(kwargs) -> tuple[date | None, date | None]:
    start = kwargs.pop("from")
    end = kwargs.pop("to")
    return (parse_iso_date(start, "from") if start else None,
            parse_iso_date(end, "to") if end else None)


def _load(cache_dir, config_path):
    config = load_config(config_path)
    dataset = load_dataset(resolve_cache_dir(cache_dir))
    return config, dataset


@main.command()
@_analysis_options
@click.option("--source", type=click.Choice(["call", "social"]), default="call", show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Write date,value,present CSV here instead of a table.")
@_fail_on_error
def series(cache_dir, config_path, category, strategy, as_json, source, out_path, **kwargs):
    """Print one topical daily series."""
    start, end = _parse_window(kwargs)
    config, dataset = _load(cache_dir, config_path)
    req = AnalysisRequest.from_defaults(config.defaults, category=category, strategy=strategy,
                                        start=start, end=end, source=source)
    payload = series_payload(dataset, req)
    if as_json:
        click.echo(canonical_json(payload))
        return
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("date,value,present\n")
            for p in payload["points"]:
                value = int(p["value"]) if p["value"].is_integer() else repr(p["value"])
                fh.write(f"{p['date']},{value},{int(p['present'])}\n")
        click.echo(f"wrote {out_path}")
        return
    click.echo(f"# {payload['source']} / {payload['category']} / {payload['strategy']}")
    click.echo(f"{'date':<12} {'value':>10}  present")
    for p in payload["points"]:
        click.echo(f"{p['date']:<12} {p['value']:>10.4g}  {'yes' if p['present'] else 'no'}")


@main.command()
@_analysis_options
@click.option("--source", type=click.Choice(["call", "social"]), default="call", show_default=True)
@click.option("--period", type=int, default=None, help="Season length in days (default 7).")
@click.option("--fill", type=click.Choice(["zero", "linear"]), default=None,
              help="Fill not-present days before decomposing.")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Write date,trend,seasonal,irregular CSV here instead of a table.")
@_fail_on_error
def decompose(cache_dir, config_path, category, strategy, as_json, source, period, fill,
              out_path, **kwargs):
    """Split a series into trend, seasonal, and irregular parts."""
    start, end = _parse_window(kwargs)
    config, dataset = _load(cache_dir, config_path)
    req = AnalysisRequest.from_defaults(config.defaults, category=category, strategy=strategy,
                                        start=start, end=end, source=source,
                                        period=period, fill=fill)
    payload = decomposition_payload(dataset, req)
    if as_json:
        click.echo(canonical_json(payload))
        return
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("date,trend,seasonal,irregular\n")
            for p in payload["points"]:
                trend = "" if p["trend"] is None else repr(p["trend"])
                irr = "" if p["irregular"] is None else repr(p["irregular"])
                fh.write(f"{p['date']},{trend},{p['seasonal']!r},{irr}\n")
        click.echo(f"wrote {out_path}")
        return
    click.echo(f"# {payload['source']} / {payload['category']} / {payload['strategy']} "
               f"period={payload['period']}")
    click.echo(f"{'date':<12} {'observed':>10} {'trend':>10} {'seasonal':>10} {'irregular':>10}")
    for p in payload["points"]:
        trend = "" if p["trend"] is None else f"{p['trend']:.4f}"
        irr = "" if p["irregular"] is None else f"{p['irregular']:.4f}"
        click.echo(f"{p['date']:<12} {p['observed']:>10.4g} {trend:>10} "
                   f"{p['seasonal']:>10.4f} {irr:>10}")


@main.command()
@_analysis_options
@click.option("--preprocess", "preprocessing", type=click.Choice(["raw", "adjusted", "trend"]),
              default=None, help="Series preparation before correlating (default adjusted).")
@click.option("--max-lag", type=int, default=None, help="Largest lag examined, in days.")
@click.option("--min-overlap", type=int, default=None, help="Fewest jointly present days per lag.")
@click.option("--period", type=int, default=None)
@click.option("--fill", type=click.Choice(["zero", "linear"]), default=None)
@_fail_on_error
def correlate(cache_dir, config_path, category, strategy, as_json, preprocessing,
              max_lag, min_overlap, period, fill, **kwargs):
    """Correlation by lag between the call and social series of a category."""
    start, end = _parse_window(kwargs)
    config, dataset = _load(cache_dir, config_path)
    req = AnalysisRequest.from_defaults(config.defaults, category=category, strategy=strategy,
                                        start=start, end=end, preprocessing=preprocessing,
                                        max_lag=max_lag, min_overlap=min_overlap,
                                        period=period, fill=fill)
    payload = correlation_payload(dataset, req)
    if as_json:
        click.echo(canonical_json(payload))
        return
    p = payload["params"]
    click.echo(f"# {p['category']} / {p['strategy']} / {p['preprocessing']} "
               f"{p['from']}..{p['to']}  (x=call, y=social)")
    click.echo(f"{'lag':>5} {'correlation':>12} {'overlap':>8}")
    for row in payload["lags"]:
        click.echo(f"{row['lag']:>5} {row['correlation']:>12.4f} {row['n_overlap']:>8}")
    for row in payload["skipped"]:
        click.echo(f"{row['lag']:>5} {'skipped':>12}  ({row['reason']})")
    d = payload["delay"]
    click.echo(f"delay: {d['delay']} day(s)  peak: {d['peak_correlation']:.4f}  "
               f"sign: {d['sign']}  {d['lead_lag_label']}")


@main.command()
@_analysis_options
@click.option("--word-length", type=int, default=None,
              help="Symbols per word (default: one per week).")
@click.option("--alphabet", "alphabet_size", type=int, default=None, help="Alphabet size.")
@_fail_on_error
def sax(cache_dir, config_path, category, strategy, as_json, word_length, alphabet_size, **kwargs):
    """Weekly symbolic words for both sources and their trend comparison."""
    start, end = _parse_window(kwargs)
    config, dataset = _load(cache_dir, config_path)
    req = AnalysisRequest.from_defaults(config.defaults, category=category, strategy=strategy,
                                        start=start, end=end, word_length=word_length,
                                        alphabet_size=alphabet_size)
    payload = sax_payload(dataset, req)
    if as_json:
        click.echo(canonical_json(payload))
        return
    click.echo(f"# {payload['params']['category']} / {payload['params']['strategy']} "
               f"{payload['params']['from']}..{payload['params']['to']}")
    click.echo(f"weeks:  {' '.join(payload['weeks'])}")
    click.echo(f"call:   {payload['call']['word']}")
    click.echo(f"social: {payload['social']['word']}")
    c = payload["comparison"]
    note = f"  ({c['note']})" if c["note"] else ""
    click.echo(f"trend comparison: {c['label']}  "
               f"pearson={c['pearson_on_indices']:.4f}{note}")


@main.command()
@click.option("--cache", "cache_dir", default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@_fail_on_error
def categories(cache_dir, config_path):
    """List the categories available in the cached dataset."""
    _, dataset = _load(cache_dir, config_path)
    click.echo(canonical_json(categories_payload(dataset)))


@main.command()
@click.option("--out", "outdir", required=True, type=click.Path(path_type=Path),
              help="Directory for calls.csv, posts.jsonl, truth.json.")
@click.option("--start", default="2023-01-01", show_default=True)
@click.option("--days", type=int, default=365, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--coupled-category", default="work", show_default=True)
@click.option("--lag", type=int, default=2, show_default=True,
              help="Days the call series trails the social series.")
@click.option("--sign", type=click.Choice(["positive", "negative"]), default="positive",
              show_default=True)
@click.option("--strength", type=float, default=0.95, show_default=True)
@click.option("--call-rate", type=float, default=25.0, show_default=True)
@click.option("--post-rate", type=float, default=25.0, show_default=True)
@click.option("--weekend-closure", is_flag=True, help="Zero call volume on weekends.")
@click.option("--noise-std", type=float, default=0.1, show_default=True)
@_fail_on_error
def synth(outdir, start, days, seed, coupled_category, lag, sign, strength,
          call_rate, post_rate, weekend_closure, noise_std):
    """Write a synthetic fixture with known coupling ground truth."""
    start_day = parse_iso_date(start, "start")
    if days < 1:
        raise click.UsageError("--days must be >= 1")
    background = [("visit", 10.0, 10.0), ("citizen", 8.0, 8.0), ("other", 12.0, 12.0)]
    categories = [CategoryRate(coupled_category, call_rate, post_rate)]
    categories += [CategoryRate(name, c, p) for name, c, p in background
                   if name != coupled_category]
    spec = SynthSpec(
        start=start_day,
        end=start_day + timedelta(days=days - 1),
        categories=tuple(categories),
        couplings=(Coupling(category=coupled_category, lag_days=lag,
                            sign=sign, strength=strength),),
        weekend_closure=weekend_closure,
        noise_std=noise_std,
        seed=seed,
    )
    paths = write_fixture(spec, outdir)
    for name, path in paths.items():
        click.echo(f"{name}: {path}")


@main.command()
@click.option("--cache", "cache_dir", default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--ui-dir", type=click.Path(path_type=Path), default=None,
              help="Directory of built UI assets to serve at /.")
@_fail_on_error
def serve(cache_dir, config_path, host, port, ui_dir):
    """Run the read-only HTTP/JSON service over a cached dataset."""
    import uvicorn

    from .service import create_app
    config = load_config(config_path)
    app = create_app(resolve_cache_dir(cache_dir), config=config, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
