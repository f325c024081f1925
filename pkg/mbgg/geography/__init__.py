"""Generalized Geography"""

from mbgg.geography.digraph import (
    Arc,
    Bipartition,
    Digraph,
    GGInstance,
    GGState,
    Player,
    Ruleset,
    Vertex,
    VertexClass,
    arc_name,
    bipartition_from_start,
    classify_all,
    classify_vertex,
    gg_loser_on_move,
    legal_moves_gg,
    luxembourg_line,
    mark,
    normalize_start,
    validate_convertible,
)
from mbgg.geography.generator import enumerate_convertible, gen_convertible
from mbgg.geography.gg_format import dump_gg, load_gg, read_gg

__all__ = [
    "Arc",
    "Bipartition",
    "Digraph",
    "GGInstance",
    "GGState",
    "Player",
    "Ruleset",
    "Vertex",
    "VertexClass",
    "arc_name",
    "bipartition_from_start",
    "classify_all",
    "classify_vertex",
    "gg_loser_on_move",
    "legal_moves_gg",
    "luxembourg_line",
    "mark",
    "normalize_start",
    "validate_convertible",
    "enumerate_convertible",
    "gen_convertible",
    "dump_gg",
    "load_gg",
    "read_gg",
]
