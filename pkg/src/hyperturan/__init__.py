"""Exact Turán numbers for forests of hypergraph paths."""

__version__ = "0.1.0"

from .errors import HyperTuranError
from .hypercore import Hypergraph, parse_hg, read_hg, write_hg
from .patterns import ForestSpec, PathSpec, Witness, contains_forest, contains_path
from .problem import Problem

__all__ = [
    "ForestSpec",
    "HyperTuranError",
    "Hypergraph",
    "PathSpec",
    "Problem",
    "Witness",
    "contains_forest",
    "contains_path",
    "parse_hg",
    "read_hg",
    "write_hg",
]
