"""Exact solvers and the winner-equivalence oracle"""

from mbgg.solver.equivalence import verify_equivalence, verify_many
from mbgg.solver.geography import GGSolveResult, solve_gg
from mbgg.solver.maker_breaker import (
    Outcome,
    SolveLimits,
    SolveResult,
    certificate_valid,
    solve_components,
    solve_mb,
)
from mbgg.solver.transposition import TranspositionTable, TTEntry, transposition_key

__all__ = [
    "verify_equivalence",
    "verify_many",
    "GGSolveResult",
    "solve_gg",
    "Outcome",
    "SolveLimits",
    "SolveResult",
    "certificate_valid",
    "solve_components",
    "solve_mb",
    "TranspositionTable",
    "TTEntry",
    "transposition_key",
]
