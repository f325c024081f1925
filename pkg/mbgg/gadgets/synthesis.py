"""
Search for gadget libraries that pass the validator.

Each class starts from the combos its regular play forces and is then
extended one threat at a time: whenever a Breaker step of some sequence
is not yet forced by a Maker threat, the search branches over the combos
that would create exactly that threat.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from mbgg.errors import SynthesisError
from mbgg.game.hypergraph import Turn, combo_key, reduce_position
from mbgg.gadgets.library import GadgetLibrary
from mbgg.gadgets.spec import GadgetSpec, local_position, make_spec
from mbgg.gadgets.validator import validate_gadget
from mbgg.geography.digraph import VertexClass
from mbgg.logging import get_logger
from mbgg.reports import Report

logger = get_logger(__name__)

Combo = FrozenSet[str]

FORCED_COMBOS: Dict[VertexClass, Tuple[Tuple[str, ...], ...]] = {
    VertexClass.B12: (
        ("p_a", "q_a", "x1", "p_b", "x2"),
        ("p_a", "q_a", "x1", "x2", "x3"),
        ("p_a", "q_a", "x1", "x3", "p_c"),
    ),
    VertexClass.M21: (
        ("p_a", "q_a", "p_c", "q_c", "x2"),
        ("p_b", "q_b", "p_c", "q_c", "x3"),
    ),
    VertexClass.B21: (
        ("p_a", "q_a", "p_c", "q_c", "x2"),
        ("p_b", "q_b", "p_c", "q_c", "x2"),
    ),
}


@dataclass
class _Slot:
    """A Breaker step that still lacks the threat forcing it"""
    variant: str
    cursor: int
    maker: FrozenSet[str]
    last: str
    block: str


def _breaker_squares(spec: GadgetSpec, variant: str) -> FrozenSet[str]:
    return frozenset(sq for mover, sq in spec.sequence(variant) if mover is Turn.BREAKER)


def _open_slot(spec: GadgetSpec) -> Optional[_Slot]:
    for variant in spec.variants:
        maker = set(spec.entry_claims(variant))
        breaker: Set[str] = set()
        last = None
        for cursor, (mover, square) in enumerate(spec.sequence(variant)):
            if mover is Turn.MAKER:
                maker.add(square)
                last = square
                continue
            # the choice point of a Breaker choice gadget is fixed by the forced combos
            if not (spec.vertex_class is VertexClass.B12 and cursor == 1):
                pos = local_position(spec, maker, breaker, Turn.BREAKER)
                if frozenset({square}) not in reduce_position(pos).combos:
                    return _Slot(variant, cursor, frozenset(maker), last, square)
            breaker.add(square)
    return None


def _candidates(spec: GadgetSpec, slot: _Slot) -> List[Combo]:
    others = [_breaker_squares(spec, v) for v in spec.variants if v != slot.variant]
    pairs = [port.pair for port in spec.ports]
    rest = sorted(slot.maker - {slot.last})
    first = spec.sequence(spec.variants[0])[0][1]
    found = []
    for k in range(0, 4):
        for extra in combinations(rest, k):
            combo = frozenset(extra) | {slot.last, slot.block}
            if combo in spec.combos:
                continue
            # the start gadget may leave combos through its first move unpaired
            if not any(pair <= combo for pair in pairs) and not (
                spec.vertex_class is VertexClass.B01 and first in combo
            ):
                continue
            if any(not combo & seen for seen in others):
                continue
            found.append(combo)
    return found


def _search_class(cls: VertexClass, budget: int, rng: np.random.Generator) -> Tuple[Optional[GadgetSpec], Report, int]:
    start = frozenset(frozenset(c) for c in FORCED_COMBOS.get(cls, ()))
    best: Optional[Report] = None
    nodes = 0

    def rec(combos: FrozenSet[Combo]) -> Optional[GadgetSpec]:
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            return None
        spec = make_spec(cls, combos)
        slot = _open_slot(spec)
        if slot is None:
            report = validate_gadget(spec)
            if best is None or len(report.failures) < len(best.failures):
                best = report
            return spec if report.passed else None
        options = _candidates(spec, slot)
        order = rng.permutation(len(options)) if options else []
        shuffled = sorted((options[i] for i in order), key=len)
        for combo in shuffled:
            found = rec(combos | {combo})
            if found is not None or nodes > budget:
                return found
        return None

    spec = rec(start)
    if best is None:
        best = Report(title=f"gadget {cls.value}")
        best.add("search", False, "no candidate reached validation")
    return spec, best, nodes


def synthesize_gadgets(budget: int = 10_000, seed: int = 0) -> GadgetLibrary:
    """
    Build one passing gadget per vertex class.

    Args:
        budget: search nodes allowed per class
        seed: orders the candidates; equal seeds give equal libraries

    Raises:
        SynthesisError: a class exhausted its budget; carries the best partial report
    """
    specs = {}
    for index, cls in enumerate(VertexClass):
        rng = np.random.default_rng(seed + index)
        spec, report, nodes = _search_class(cls, budget, rng)
        logger.info("gadget_search_done", vertex_class=cls.value, nodes=nodes, found=spec is not None)
        if spec is None:
            raise SynthesisError(
                f"no passing gadget for {cls.value} within {budget} nodes",
                report=report.render_text(),
                details={'class': cls.value, 'nodes': nodes},
            )
        ordered = sorted(spec.combos, key=combo_key)
        specs[cls] = make_spec(cls, ordered)
    return GadgetLibrary(specs)
