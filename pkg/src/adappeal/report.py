"""Rendering of analysis results as tables and plot-ready data.

Output formats: plain text, Markdown, and a versioned JSON document for
external plotters.  All numeric formatting uses round-half-even via
Python float formatting, so identical inputs produce byte-identical
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chartypes import CharClass
from .stats import (UNDEFINED, CorrelationTable, FiveNumberSummary,
                    field_order)

PLOT_SCHEMA_VERSION = 1

# Fixed presentation order for psychological categories; dictionary
# categories not listed here follow alphabetically.
CATEGORY_ROW_ORDER = (
    "affect", "posemo", "negemo", "home", "money", "work", "death", "relig",
    "leisure", "social", "cogproc", "percept", "bio", "drives", "relativ",
    "informal",
)

CHAR_ROW_LABELS = (
    (CharClass.NUMBER, "Numbers"),
    (CharClass.ALPHABETIC, "Alphabetic characters"),
    (CharClass.KATAKANA, "Katakana"),
    (CharClass.HIRAGANA, "Hiragana"),
    (CharClass.KANJI, "Kanji"),
    (CharClass.SYMBOL, "Symbols"),
    (CharClass.EMOJI, "Emoji"),
)

FIELD_LABELS = {"main": "Main text", "image": "In-image text"}


@dataclass(frozen=True)
class GroupReport:
    """All computed results for one product category."""

    product_category: str
    n_records: int
    ctr_summary: FiveNumberSummary
    char_tables: dict  # field -> (mean_counts, mean_props, mean_total)
    correlation: CorrelationTable
    category_means: dict  # field -> {category name -> mean percentage}


@dataclass(frozen=True)
class ReportBundle:
    groups: tuple[GroupReport, ...]
    category_names: dict[int, str]
    metadata: dict = field(default_factory=dict)


def order_categories(names: list[str]) -> list[str]:
    ranked = [n for n in CATEGORY_ROW_ORDER if n in names]
    rest = sorted(n for n in names if n not in CATEGORY_ROW_ORDER)
    return ranked + rest


def format_rho(rho, highlight_threshold: float, markdown: bool) -> str:
    if rho is UNDEFINED:
        return "-"
    text = f"{rho:.3f}"
    if abs(rho) >= highlight_threshold:
        mark = "**" if markdown else "*"
        return f"{mark}{text}{mark}"
    return text


def format_count_pct(count: float, proportion: float) -> str:
    """Table II cell format: mean count with one-decimal percent, e.g. "6.8 (9.2%)"."""
    count_text = "0" if count == 0 else f"{count:.1f}"
    return f"{count_text} ({100 * proportion:.1f}%)"


def render_correlation_table(table: CorrelationTable, names: dict[int, str],
                             highlight_threshold: float = 0.15,
                             fmt: str = "markdown") -> str:
    """Category rows x field columns; UNDEFINED as "-", |rho| >= threshold emphasized."""
    if highlight_threshold < 0:
        raise ValueError("highlight threshold must be >= 0")
    md = fmt == "markdown"
    fields = field_order({c.field for c in table.cells})
    by_key = {(c.category_id, c.field): c for c in table.cells}
    ids_by_name = {names[cid]: cid for cid in {c.category_id for c in table.cells}}
    header = ["category"] + [FIELD_LABELS.get(f, f) for f in fields]
    rows = []
    for name in order_categories(list(ids_by_name)):
        cid = ids_by_name[name]
        cells = []
        for f in fields:
            cell = by_key.get((cid, f))
            cells.append(format_rho(cell.rho, highlight_threshold, md) if cell else "-")
        rows.append([name] + cells)
    return _render_table(header, rows, md)


def render_char_table(char_tables: dict, fmt: str = "markdown") -> str:
    """Character-class means per field, plus a mean character count row."""
    md = fmt == "markdown"
    fields = field_order(char_tables)
    header = ["class"] + [FIELD_LABELS.get(f, f) for f in fields]
    rows = []
    for cls, label in CHAR_ROW_LABELS:
        cells = []
        for f in fields:
            mean_counts, mean_props, _ = char_tables[f]
            cells.append(format_count_pct(mean_counts[cls], mean_props[cls]))
        rows.append([label] + cells)
    totals = [f"{char_tables[f][2]:.1f}" for f in fields]
    rows.append(["Character count"] + totals)
    return _render_table(header, rows, md)


def _render_table(header: list[str], rows: list[list[str]], markdown: bool) -> str:
    if markdown:
        lines = ["| " + " | ".join(header) + " |",
                 "|" + "|".join("---" for _ in header) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    def fmt_row(r):
        return "  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip()
    lines = [fmt_row(header), fmt_row(["-" * w for w in widths])]
    lines += [fmt_row(r) for r in rows]
    return "\n".join(lines) + "\n"


def render_report(bundle: ReportBundle, highlight_threshold: float = 0.15,
                  fmt: str = "markdown") -> str:
    """Full human-readable report document."""
    md = fmt == "markdown"
    h = (lambda s: f"## {s}") if md else (lambda s: s + "\n" + "=" * len(s))
    sub = (lambda s: f"### {s}") if md else (lambda s: s + "\n" + "-" * len(s))
    parts = [h("Ad text analysis report"), ""]
    parts += [_metadata_block(bundle.metadata, md), ""]
    for g in bundle.groups:
        parts.append(sub(f"Product category: {g.product_category} "
                         f"(n={g.n_records})"))
        parts.append("")
        s = g.ctr_summary
        parts.append(f"CTR: mean={s.mean:.6f} min={s.min:.6f} q1={s.q1:.6f} "
                     f"median={s.median:.6f} q3={s.q3:.6f} max={s.max:.6f}")
        parts.append("")
        parts.append("Character profile (mean count and mean per-ad proportion):")
        parts.append(render_char_table(g.char_tables, fmt))
        parts.append(f"Correlation with CTR (mode={g.correlation.mode}, "
                     f"emphasis at |rho| >= {highlight_threshold}):")
        parts.append(render_correlation_table(g.correlation, bundle.category_names,
                                              highlight_threshold, fmt))
    return "\n".join(parts)


def _metadata_block(meta: dict, markdown: bool) -> str:
    lines = [f"- {k}: {meta[k]}" for k in sorted(meta)]
    return "\n".join(lines)


def emit_plot_data(bundle: ReportBundle) -> dict:
    """Machine-readable document for external plotting tools."""
    doc = {
        "schema_version": PLOT_SCHEMA_VERSION,
        "metadata": dict(sorted(bundle.metadata.items())),
        "boxplots": [],
        "category_means": [],
        "correlations": [],
    }
    names = bundle.category_names
    for g in bundle.groups:
        s = g.ctr_summary
        lo, hi = s.whiskers
        doc["boxplots"].append({
            "product_category": g.product_category,
            "metric": "ctr",
            "min": s.min, "q1": s.q1, "median": s.median, "q3": s.q3,
            "max": s.max, "mean": s.mean,
            "whisker_low": lo, "whisker_high": hi,
        })
        for f in field_order(g.category_means):
            means = g.category_means[f]
            doc["category_means"].append({
                "product_category": g.product_category,
                "field": f,
                "means": {name: means[name]
                          for name in order_categories(list(means))},
            })
        for c in g.correlation.cells:
            doc["correlations"].append({
                "product_category": g.product_category,
                "category": names[c.category_id],
                "field": c.field,
                "rho": None if c.rho is UNDEFINED else c.rho,
                "n": c.n,
            })
    return doc


def plot_data_json(bundle: ReportBundle) -> str:
    return json.dumps(emit_plot_data(bundle), ensure_ascii=False, indent=2,
                      sort_keys=False) + "\n"
