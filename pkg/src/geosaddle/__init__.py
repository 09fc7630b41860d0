"""Classify critical points of f(x, y) and certify strict saddles with explicit paths."""

from .certify import (
    Classification,
    SaddleCertificate,
    SearchConfig,
    Verdict,
    classify_point,
    discriminant_test,
    find_critical_points,
    search_saddle_paths,
    verify_certificate,
)
from .expr import parse
from .jet import eval_jet
from .path import classify_along, make_line, make_parabola, make_polypair

__all__ = [
    "Classification",
    "SaddleCertificate",
    "SearchConfig",
    "Verdict",
    "classify_along",
    "classify_point",
    "discriminant_test",
    "eval_jet",
    "find_critical_points",
    "make_line",
    "make_parabola",
    "make_polypair",
    "parse",
    "search_saddle_paths",
    "verify_certificate",
]
