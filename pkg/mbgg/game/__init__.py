"""Maker-Breaker game model"""

from mbgg.game.hypergraph import (
    Combo,
    GameSpec,
    Hypergraph,
    Position,
    Square,
    Turn,
    apply_move,
    apply_moves,
    connected_components,
    detect_mate_in_one,
    detect_mate_in_two,
    double_threats,
    is_broken,
    is_over,
    legal_moves,
    maker_has_won,
    rank,
    reduce_position,
    sorted_squares,
    square_key,
    winning_squares,
)
from mbgg.game.pairing import (
    FREE_CHOICE,
    Pairing,
    find_complete_pairing,
    is_complete_pairing,
    pairing_blocks,
    pairing_strategy_play,
    pairing_strategy_reply,
)

__all__ = [
    "Combo",
    "GameSpec",
    "Hypergraph",
    "Position",
    "Square",
    "Turn",
    "apply_move",
    "apply_moves",
    "connected_components",
    "detect_mate_in_one",
    "detect_mate_in_two",
    "double_threats",
    "is_broken",
    "is_over",
    "legal_moves",
    "maker_has_won",
    "rank",
    "reduce_position",
    "sorted_squares",
    "square_key",
    "winning_squares",
    "FREE_CHOICE",
    "Pairing",
    "find_complete_pairing",
    "is_complete_pairing",
    "pairing_blocks",
    "pairing_strategy_play",
    "pairing_strategy_reply",
]
