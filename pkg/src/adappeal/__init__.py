"""adappeal: psychographic appeal measurement for ad text and CTR correlation."""

__version__ = "0.1.0"

from .chartypes import CharClass, CharProfile, classify_char, profile_text
from .ingest import (AdRecord, Dataset, RecordError, SchemaError,
                     filter_by_impressions, load_dataset, parse_records)
from .liwc import (Category, CategoryVector, Dictionary, DictionaryError,
                   Matcher, WordEntry, compile_matcher, parse_dictionary,
                   serialize_dictionary)
from .pipeline import analyze
from .report import ReportBundle, emit_plot_data, render_char_table, render_report
from .report import render_correlation_table
from .stats import (UNDEFINED, correlation_table, ctr, five_number_summary,
                    mean_by_category, pearson)
from .tokenizer import TokenList, tokenize

__all__ = [
    "AdRecord", "Category", "CategoryVector", "CharClass", "CharProfile",
    "Dataset", "Dictionary", "DictionaryError", "Matcher", "RecordError",
    "ReportBundle", "SchemaError", "TokenList", "UNDEFINED", "WordEntry",
    "analyze", "classify_char", "compile_matcher", "correlation_table", "ctr",
    "emit_plot_data", "filter_by_impressions", "five_number_summary",
    "load_dataset", "mean_by_category", "parse_dictionary", "parse_records",
    "pearson", "profile_text", "render_char_table", "render_correlation_table",
    "render_report", "serialize_dictionary", "tokenize",
]
