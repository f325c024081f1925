"""
Winner equivalence between a Geography instance and its associated game.
"""

from typing import Iterable, Optional

from mbgg.game.hypergraph import Turn
from mbgg.gadgets.library import GadgetLibrary
from mbgg.geography.digraph import GGInstance, Player, Ruleset, validate_convertible
from mbgg.geography.gg_format import dump_gg
from mbgg.logging import get_logger
from mbgg.reduction.associated import build_associated_game
from mbgg.reduction.uniform import uniformize5
from mbgg.reports import Report
from mbgg.solver.geography import solve_gg
from mbgg.solver.maker_breaker import Outcome, SolveLimits, SolveResult, solve_mb

logger = get_logger(__name__)

_PARTNER = {Player.ALICE: Turn.MAKER, Player.BOB: Turn.BREAKER}


def _compare(report: Report, name: str, gg_winner: Player, result: SolveResult) -> None:
    report.bump("nodes", result.nodes)
    if result.outcome is Outcome.INCONCLUSIVE:
        report.inconclusive = True
        report.add(name, True, "solver limits reached", informational=True)
        return
    agree = _PARTNER[gg_winner] is result.winner
    report.add(name, agree, f"{gg_winner.value}/{result.outcome.value}")


def verify_equivalence(
    inst: GGInstance,
    lib: GadgetLibrary,
    limits: Optional[SolveLimits] = None,
    uniform: bool = False,
) -> Report:
    """
    Solve both games and check that Alice wins exactly when Maker does.

    Args:
        inst: a convertible instance
        lib: gadget library used for the reduction
        limits: Maker-Breaker solver limits
        uniform: also solve the 5-uniform version of the associated game

    Returns:
        Report; an inconclusive solve marks the report INCONCLUSIVE, never FAIL.
    """
    limits = limits or SolveLimits.from_config()
    report = Report(title="winner equivalence")
    shape = validate_convertible(inst)
    if not shape.passed:
        report.extend(shape, prefix="convertible: ")
        return report

    g = build_associated_game(inst, lib)
    gg = solve_gg(inst, Ruleset.REVISED)
    original = solve_gg(inst, Ruleset.ORIGINAL)
    report.add("revised and original rules agree", gg.winner is original.winner,
               f"{gg.winner.value}/{original.winner.value}")
    report.bump("squares", len(g.spec.squares))
    report.bump("combos", len(g.spec.combos))
    _compare(report, "Alice wins iff Maker wins", gg.winner, solve_mb(g.spec, limits))
    if uniform:
        _compare(report, "5-uniform game keeps the winner", gg.winner, solve_mb(uniformize5(g.spec), limits))
    report.note = f"geography winner {gg.winner.value}"
    logger.info("equivalence_checked", status=report.status.value, winner=gg.winner.value,
                squares=len(g.spec.squares))
    return report


def verify_many(instances: Iterable[GGInstance], lib: GadgetLibrary,
                limits: Optional[SolveLimits] = None, uniform: bool = False) -> Report:
    """Equivalence over a batch of instances; failures name the instance"""
    report = Report(title="winner equivalence (batch)")
    for inst in instances:
        one = verify_equivalence(inst, lib, limits, uniform)
        report.bump("instances")
        if one.failures:
            report.add("instance", False, dump_gg(inst).replace("\n", "; ").strip("; "))
        report.extend(one)
    return report
