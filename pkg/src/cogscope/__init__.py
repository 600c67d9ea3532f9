"""cogscope: scope-aware cognitive information complexity for MiniLang."""

from .analysis import Analysis, analyze_source, metric_value
from .errors import (
    LexError,
    MiniLangError,
    ParseError,
    ResolveError,
    Span,
    UndefinedEfficiencyError,
)
from .granules import GranuleTree, granulate, structural_weight, weight_of
from .info import (
    InfoAnnotations,
    annotate,
    compute_icn,
    compute_sicn,
    info_content,
    name_extrema,
    region_extrema,
    scope_information,
)
from .lexer import Token, count_lines, tokenize
from .metrics import cfs, cpcm, efficiency, escim, mccm, scim_icn, wics_cicm
from .parser import parse, parse_source
from .render import render
from .resolve import ResolvedUnit, classify_io, operator_count, resolve

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "GranuleTree",
    "InfoAnnotations",
    "LexError",
    "MiniLangError",
    "ParseError",
    "ResolveError",
    "ResolvedUnit",
    "Span",
    "Token",
    "UndefinedEfficiencyError",
    "analyze_source",
    "annotate",
    "cfs",
    "classify_io",
    "compute_icn",
    "compute_sicn",
    "count_lines",
    "cpcm",
    "efficiency",
    "escim",
    "granulate",
    "info_content",
    "mccm",
    "metric_value",
    "name_extrema",
    "operator_count",
    "parse",
    "parse_source",
    "region_extrema",
    "render",
    "resolve",
    "scim_icn",
    "scope_information",
    "structural_weight",
    "tokenize",
    "weight_of",
    "wics_cicm",
    "__version__",
]
