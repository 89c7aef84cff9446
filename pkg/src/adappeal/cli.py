"""Command-line interface.

Subcommands:
  analyze     full pipeline: ingest -> filter -> profile/tag -> stats -> report
  dict-check  validate a LIWC-format dictionary file
  profile     character-profile tables only

Exit codes: 0 success, 1 dictionary/processing error, 2 missing input or
dictionary, 3 empty dataset after the impression filter.

Option precedence: command-line flags > ADAPPEAL_* environment variables
> --config JSON file > built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .ingest import SchemaError, load_dataset
from .liwc import (DictionaryError, compile_matcher, load_builtin_hierarchy,
                   parse_dictionary, parse_hierarchy_sidecar)
from .ocr import HttpOcrProvider, OcrCache, resolve_in_image_text
from .pipeline import analyze
from .report import plot_data_json, render_report

log = logging.getLogger("adappeal")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING_INPUT = 2
EXIT_EMPTY_DATASET = 3

_DEFAULTS = {
    "min_impressions": 10000,
    "mode": "percent",
    "fields": "both",
    "format": "markdown",
    "highlight": 0.15,
    "cache_dir": "cache/ocr",
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adappeal",
                                description="Quantify psychographic appeal in ad "
                                            "text and correlate it with CTR.")
    p.add_argument("--version", action="version", version=f"adappeal {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the full analysis pipeline")
    _add_common_options(pa)
    pa.add_argument("--ocr", action="store_true", default=None,
                    help="resolve missing in-image text via the configured OCR provider")
    pa.add_argument("--out", help="output directory for report artifacts")
    pa.add_argument("--print-config", action="store_true",
                    help="print the effective configuration and exit")

    pd = sub.add_parser("dict-check", help="validate a dictionary file")
    pd.add_argument("path", help="dictionary file to check")
    pd.add_argument("--hierarchy", help="sidecar child<TAB>parent override file")

    pp = sub.add_parser("profile", help="character-profile tables only")
    _add_common_options(pp)
    pp.add_argument("--out", help="output directory for report artifacts")
    return p


def _add_common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="CSV or JSONL record file")
    p.add_argument("--dict", dest="dict_path", help="LIWC-format dictionary file")
    p.add_argument("--hierarchy", help="sidecar child<TAB>parent override file")
    p.add_argument("--stoplist", help="file of tokens to drop before tagging")
    p.add_argument("--min-impressions", type=int, dest="min_impressions")
    p.add_argument("--mode", choices=["counts", "percent"])
    p.add_argument("--fields", choices=["main", "image", "both"])
    p.add_argument("--format", choices=["markdown", "plain"])
    p.add_argument("--highlight", type=float,
                   help="emphasize |rho| at or above this value")
    p.add_argument("--cache-dir", dest="cache_dir")
    p.add_argument("--config", help="JSON file of default option values")


def effective_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, encoding="utf-8") as f:
            cfg.update(json.load(f))
    for key in list(_DEFAULTS) + ["input", "dict_path", "hierarchy", "stoplist",
                                  "ocr", "out"]:
        env = os.environ.get(f"ADAPPEAL_{key.upper()}")
        if env is not None:
            cfg[key] = env
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    cfg["min_impressions"] = int(cfg["min_impressions"])
    cfg["highlight"] = float(cfg["highlight"])
    return cfg


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "dict-check":
            return cmd_dict_check(args.path, args.hierarchy)
        cfg = effective_config(args)
        if args.command == "analyze":
            return cmd_analyze(cfg, print_config=bool(getattr(args, "print_config", False)))
        if args.command == "profile":
            return cmd_profile(cfg)
    except BrokenPipeError:
        return EXIT_ERROR
    return EXIT_ERROR


def cmd_dict_check(path: str, hierarchy_path: str | None = None) -> int:
    if not os.path.exists(path):
        print(f"error: dictionary not found: {path}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    try:
        hierarchy = _load_hierarchy(hierarchy_path)
        with open(path, "rb") as f:
            d = parse_dictionary(f.read(), hierarchy)
    except DictionaryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    names = d.category_names()
    print(f"categories: {len(d.categories)}")
    print(f"entries: {len(d.entries)}")
    print("hierarchy:")
    for c in d.categories:
        if c.parent is not None:
            print(f"  {c.name} -> {names[c.parent]}")
    return EXIT_OK


def _load_hierarchy(path: str | None):
    base = load_builtin_hierarchy()
    if path:
        with open(path, encoding="utf-8") as f:
            base.update(parse_hierarchy_sidecar(f.read()))
    return base


def _load_pipeline_inputs(cfg: dict):
    """Validate paths and load dataset + dictionary (fail fast)."""
    for key, label in (("input", "input file"), ("dict_path", "dictionary")):
        if not cfg.get(key):
            print(f"error: no {label} given", file=sys.stderr)
            raise SystemExit(EXIT_MISSING_INPUT)
        if not os.path.exists(cfg[key]):
            print(f"error: {label} not found: {cfg[key]}", file=sys.stderr)
            raise SystemExit(EXIT_MISSING_INPUT)
    for key in ("hierarchy", "stoplist", "config"):
        if cfg.get(key) and not os.path.exists(cfg[key]):
            print(f"error: {key} file not found: {cfg[key]}", file=sys.stderr)
            raise SystemExit(EXIT_MISSING_INPUT)

    hierarchy = _load_hierarchy(cfg.get("hierarchy"))
    with open(cfg["dict_path"], "rb") as f:
        dictionary = parse_dictionary(f.read(), hierarchy)
    ds, errors = load_dataset(cfg["input"], threshold=cfg["min_impressions"])
    if not ds.records:
        print("error: no records remain after the impression filter", file=sys.stderr)
        raise SystemExit(EXIT_EMPTY_DATASET)
    stoplist: list[str] = []
    if cfg.get("stoplist"):
        with open(cfg["stoplist"], encoding="utf-8") as f:
            stoplist = [ln.strip() for ln in f if ln.strip()]
    return ds, dictionary, stoplist, errors


def _resolve_fields(cfg: dict) -> tuple[str, ...]:
    return ("main", "image") if cfg["fields"] == "both" else (cfg["fields"],)


def cmd_analyze(cfg: dict, print_config: bool = False) -> int:
    if print_config:
        print(json.dumps({k: cfg.get(k) for k in sorted(cfg)}, indent=2, default=str))
        return EXIT_OK
    try:
        ds, dictionary, stoplist, errors = _load_pipeline_inputs(cfg)
    except SystemExit as e:
        return int(e.code)
    except (DictionaryError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if cfg.get("ocr"):
        try:
            provider = HttpOcrProvider()
        except ValueError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_ERROR
        cache = OcrCache(cfg["cache_dir"])
        resolved = tuple(resolve_in_image_text(r, provider, cache)
                         for r in ds.records)
        ds = type(ds)(records=resolved, source_digest=ds.source_digest,
                      filter_threshold=ds.filter_threshold)

    matcher = compile_matcher(dictionary)
    bundle = analyze(ds, dictionary, matcher, fields=_resolve_fields(cfg),
                     mode=cfg["mode"], stoplist=stoplist,
                     extra_metadata={"highlight_threshold": cfg["highlight"]})
    doc = render_report(bundle, highlight_threshold=cfg["highlight"],
                        fmt=cfg["format"])
    _write_artifacts(cfg, doc, plot_data_json(bundle), errors)
    return EXIT_OK


def cmd_profile(cfg: dict) -> int:
    try:
        ds, dictionary, stoplist, errors = _load_pipeline_inputs(cfg)
    except SystemExit as e:
        return int(e.code)
    except (DictionaryError, SchemaError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    fields = _resolve_fields(cfg)
    if "image" in fields and all(r.in_image_text is None for r in ds.records):
        log.warning("no records carry in-image text; image columns are empty "
                    "(analysis covers main text only)")
    matcher = compile_matcher(dictionary)
    bundle = analyze(ds, dictionary, matcher, fields=fields, mode=cfg["mode"],
                     stoplist=stoplist)
    from .report import render_char_table
    parts = []
    for g in bundle.groups:
        parts.append(f"Product category: {g.product_category} (n={g.n_records})")
        parts.append(render_char_table(g.char_tables, fmt=cfg["format"]))
    doc = "\n".join(parts)
    _write_artifacts(cfg, doc, None, errors)
    return EXIT_OK


def _write_artifacts(cfg: dict, report_doc: str, plot_json: str | None,
                     errors) -> None:
    out = cfg.get("out")
    if not out:
        sys.stdout.write(report_doc)
        if errors:
            print(f"({len(errors)} malformed rows skipped)", file=sys.stderr)
        return
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = "md" if cfg["format"] == "markdown" else "txt"
    (out_dir / f"report.{ext}").write_text(report_doc, "utf-8")
    if plot_json is not None:
        (out_dir / "plot_data.json").write_text(plot_json, "utf-8")
    if errors:
        lines = [f"{e.line},{json.dumps(e.reason, ensure_ascii=False)}" for e in errors]
        (out_dir / "errors.csv").write_text("line,reason\n" + "\n".join(lines) + "\n",
                                            "utf-8")
    print(f"wrote report artifacts to {out_dir}")


if __name__ == "__main__":
    sys.exit(main())
