"""Ladder-like toric rings R(n,t) of chordal bipartite graphs G_n^t."""

from .errors import IntegrityError, InvalidInputError
from .family import build_graph, build_ladder, j_sequence, standard_generators
from .invariants import full_report

__all__ = [
    "IntegrityError",
    "InvalidInputError",
    "build_graph",
    "build_ladder",
    "full_report",
    "j_sequence",
    "standard_generators",
]
__version__ = "0.1.0"
