"""Regular play, deviation replies and puzzle piece pairings"""

from mbgg.strategy.deviations import (
    DeviationReply,
    breaker_reply,
    breaker_reply_to_deviation,
    vertex_category,
    verify_breaker_deviations,
    verify_maker_deviations,
)
from mbgg.strategy.pieces import (
    PuzzlePiecePairing,
    puzzle_piece_pairing,
    search_piece,
    union_pairing,
)
from mbgg.strategy.regular import (
    FinishReason,
    RegularPlayState,
    RegularOutcome,
    check_invariants,
    iter_regular_states,
    iter_regular_traces,
    remaining_joint_pairing,
    play_out_after_b21,
    regular_squares_at,
    regular_step,
    run_regular_play,
    simulate_regular_outcome,
)
from mbgg.strategy.trace import Trace, parse_trace, read_trace, replay_trace, trace_from_state

__all__ = [
    "DeviationReply",
    "breaker_reply",
    "breaker_reply_to_deviation",
    "vertex_category",
    "verify_breaker_deviations",
    "verify_maker_deviations",
    "PuzzlePiecePairing",
    "puzzle_piece_pairing",
    "search_piece",
    "union_pairing",
    "FinishReason",
    "RegularPlayState",
    "RegularOutcome",
    "check_invariants",
    "iter_regular_states",
    "iter_regular_traces",
    "remaining_joint_pairing",
    "play_out_after_b21",
    "regular_squares_at",
    "regular_step",
    "run_regular_play",
    "simulate_regular_outcome",
    "Trace",
    "parse_trace",
    "read_trace",
    "replay_trace",
    "trace_from_state",
]
