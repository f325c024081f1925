"""
mbgg: Generalized Geography to rank-5 Maker-Breaker games.

Builds the associated Maker-Breaker game of a convertible Geography
instance from gadget hypergraphs, plays and checks the strategies that
transfer winners between the two games, and solves both games exactly.
"""

__version__ = "0.1.0"

from mbgg.errors import MBGGError
from mbgg.game.hypergraph import GameSpec, Position, Turn
from mbgg.gadgets.library import load_library
from mbgg.geography.digraph import GGInstance, Player
from mbgg.reduction.associated import build_associated_game

__all__ = [
    "__version__",
    "MBGGError",
    "GameSpec",
    "Position",
    "Turn",
    "load_library",
    "GGInstance",
    "Player",
    "build_associated_game",
]
