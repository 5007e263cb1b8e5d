"""Hecke-Kiselman monoids of directed graphs: presentations, normal forms,
element tables, integer matrix representations and counting formulas."""

from .errors import CapExceeded, HKError, LimitExceeded
from .graph import DirectedGraph, alternating, build_zn, chain, oriented_cycle, oriented_path, parse_graph
from .rewrite import ElementTable, RewriteSystem, hk_table, system_for

__all__ = [
    "CapExceeded",
    "DirectedGraph",
    "ElementTable",
    "HKError",
    "LimitExceeded",
    "RewriteSystem",
    "alternating",
    "build_zn",
    "chain",
    "hk_table",
    "oriented_cycle",
    "oriented_path",
    "parse_graph",
    "system_for",
]

__version__ = "0.1.0"
