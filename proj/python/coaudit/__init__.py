"""Demographic co-occurrence counting over text corpora."""

from ._coaudit import (
    Aggregation,
    Baseline,
    ConfigError,
    Dimension,
    Error,
    FormatError,
    Lexicon,
    Matcher,
    Matrix,
    MismatchError,
    Scanner,
    WindowConfig,
    compare,
    main,
    merge,
    representation_pct,
    run_scan,
    shares,
    strip_latex,
    synth,
    tokenize,
    window_profile,
)

__all__ = [
    "Aggregation",
    "Baseline",
    "ConfigError",
    "Dimension",
    "Error",
    "FormatError",
    "Lexicon",
    "Matcher",
    "Matrix",
    "MismatchError",
    "Scanner",
    "WindowConfig",
    "compare",
    "main",
    "merge",
    "representation_pct",
    "run_scan",
    "shares",
    "strip_latex",
    "synth",
    "tokenize",
    "window_profile",
]
