"""
Semantic checks for gadget hypergraphs.

    rank and locality
    joint pairing completeness (weaker clause for the start gadget)
    regular-play simulation: mover restrictions and residual form
    threat structure at every Breaker turn, no Maker win at Maker turns
    single-claim puzzle pieces for every local square
    second-activation combos of the merge classes
    local safety of Breaker's replies to Maker deviations
"""

from typing import Dict, List

from mbgg.game.hypergraph import (
    GameSpec,
    Turn,
    detect_mate_in_one,
    double_threats,
    reduce_position,
    sorted_squares,
    winning_squares,
)
from mbgg.game.pairing import find_complete_pairing, is_complete_pairing, pairing_blocks
from mbgg.gadgets.library import GadgetLibrary
from mbgg.gadgets.spec import (
    MERGE_CLASSES,
    SIGNATURES,
    VARIANTS,
    GadgetSpec,
    joint_pairing,
    local_breaker_reply,
    local_position,
    minimality_witnesses,
    piece_trait_violations,
    residual,
    single_claim_piece,
    star_form,
    star_piece,
)
from mbgg.geography.digraph import VertexClass
from mbgg.logging import get_logger
from mbgg.reports import Report

logger = get_logger(__name__)


def _fmt(squares) -> str:
    return "{" + ",".join(sorted_squares(squares)) + "}"


def _structure(spec: GadgetSpec, report: Report) -> bool:
    cls = spec.vertex_class
    problems = []
    if len(spec.interiors) != cls.interior_count:
        problems.append(f"{len(spec.interiors)} interiors, expected {cls.interior_count}")
    signature = tuple((p.edge_role, p.direction) for p in spec.ports)
    if signature != SIGNATURES[cls]:
        problems.append("ports do not match the class signature")
    joints = set()
    for port in spec.ports:
        joints |= port.pair
    if joints & set(spec.interiors):
        problems.append("joint names collide with interiors")
    if set(spec.variants) != set(VARIANTS[cls]):
        problems.append(f"variants {list(spec.variants)}, expected {list(VARIANTS[cls])}")
    report.add("structure", not problems, "; ".join(problems))
    return not problems


def _check_rank(spec: GadgetSpec, report: Report) -> None:
    local = spec.local_squares
    stray = [c for c in spec.combos if not c <= local]
    r = max((len(c) for c in spec.combos), default=0)
    ok = not stray and r <= 5 and bool(spec.combos)
    detail = f"rank {r}"
    if stray:
        detail += f", non-local combos {[_fmt(c) for c in stray]}"
    report.add("rank<=5 and local", ok, detail)


def _check_joint_pairing(spec: GadgetSpec, report: Report) -> None:
    pairing = joint_pairing(spec)
    unblocked = [c for c in spec.combos if not pairing_blocks(pairing, c)]
    if spec.vertex_class is VertexClass.B01:
        # only combos that Maker's very first regular move starts may stay open
        first = spec.sequence("only")[0][1]
        stray = [c for c in unblocked if first not in c]
        report.add("joint pairing (start clause)", not stray,
                   f"unblocked without {first}: {[_fmt(c) for c in stray]}" if stray else "")
    else:
        report.add("joint pairing complete", not unblocked,
                   f"unblocked {[_fmt(c) for c in unblocked]}" if unblocked else "")
        witnesses = minimality_witnesses(spec)
        needless = [role for role, needed in witnesses.items() if not needed]
        report.add("joint pairs all needed", not needless,
                   f"removable pairs for ports {needless}" if needless else "", informational=True)


def _simulate(spec: GadgetSpec, variant: str, report: Report, stages: List) -> None:
    """Run one sequence; record (position, cursor) before every move in ``stages``"""
    steps = spec.sequence(variant)
    pos = local_position(spec, maker=spec.entry_claims(variant))
    interiors = set(spec.interiors)
    outputs = set()
    for port in spec.out_ports:
        outputs |= port.pair
    problems = []
    for cursor, (mover, square) in enumerate(steps):
        expected = Turn.MAKER if cursor % 2 == 0 else Turn.BREAKER
        if mover is not expected:
            problems.append(f"step {cursor} by {mover.value}, expected {expected.value}")
        if mover is Turn.MAKER and square not in interiors | outputs:
            problems.append(f"Maker claims {square} (not interior/output)")
        if mover is Turn.BREAKER and square not in interiors:
            problems.append(f"Breaker claims {square} (not interior)")
        if square not in pos.unclaimed:
            problems.append(f"{square} claimed twice")
            break
        stages.append((pos, cursor))
        pos = local_position(
            spec,
            pos.maker_set | ({square} if mover is Turn.MAKER else set()),
            pos.breaker_set | ({square} if mover is Turn.BREAKER else set()),
            mover.other(),
        )
    exit_port = spec.port(spec.exit_role(variant))
    owned = [p.edge_role for p in spec.out_ports if p.pair <= pos.maker_set]
    if owned != [exit_port.edge_role]:
        problems.append(f"Maker ends owning output ports {owned}, expected [{exit_port.edge_role}]")
    left = reduce_position(pos)
    if spec.vertex_class is VertexClass.M21:
        (entry,) = [p for p in spec.in_ports if p.pair <= spec.entry_claims(variant)]
        (other,) = [p for p in spec.in_ports if p is not entry]
        shape_ok = (
            len(left.squares) == 3
            and other.pair <= left.squares
            and len(left.combos) == 1
            and next(iter(left.combos)) == left.squares
        )
        if not shape_ok:
            problems.append(f"residual {[_fmt(c) for c in left.combos]} on {_fmt(left.squares)}")
    elif left.combos:
        problems.append(f"residual combos {[_fmt(c) for c in left.combos]}")
    report.add(f"sequence {variant}", not problems, "; ".join(problems))
    stages.append((pos, len(steps)))


def _stops_all_threats(g: GameSpec, square) -> bool:
    after = GameSpec.from_combos(
        [c for c in g.combos if square not in c], Turn.MAKER, g.squares - {square}
    )
    return not winning_squares(after) and not double_threats(after)


def _check_threats(spec: GadgetSpec, variant: str, stages: List, report: Report) -> None:
    steps = spec.sequence(variant)
    problems = []
    for pos, cursor in stages:
        if cursor >= len(steps):
            continue
        g = reduce_position(pos)
        mover, square = steps[cursor]
        if mover is Turn.MAKER:
            wins = winning_squares(g)
            if wins:
                problems.append(f"step {cursor}: Maker can win at once via {_fmt(wins)}")
            continue
        if spec.vertex_class is VertexClass.B12 and cursor == 1:
            needed = [{"p_b", "x2"}, {"x2", "x3"}, {"x3", "p_c"}]
            missing = [s for s in needed if frozenset(s) not in g.combos]
            stoppers = {s for s in g.squares if _stops_all_threats(g, s)}
            if missing:
                problems.append(f"choice point lacks {[_fmt(s) for s in missing]}")
            if stoppers != {"x2", "x3"}:
                problems.append(f"choice point stoppers {_fmt(stoppers)}, expected {{x2,x3}}")
            continue
        threats = detect_mate_in_one(g)
        if threats != frozenset({square}):
            problems.append(f"step {cursor}: mate-in-one squares {_fmt(threats)}, expected {{{square}}}")
    report.add(f"threats {variant}", not problems, "; ".join(problems))


def _check_pieces(spec: GadgetSpec, report: Report) -> None:
    if spec.vertex_class is VertexClass.B01:
        report.add("single-claim pieces", True, "not required for the start gadget")
        return
    problems = []
    ports = [(p.pair, p.direction) for p in spec.ports]
    for square in sorted_squares(spec.local_squares):
        piece = single_claim_piece(spec, square)
        restricted = residual(spec, {square}, ())
        broken = piece_trait_violations(restricted, ports, piece)
        if broken:
            problems.append(f"{square}: {broken}")
    report.add("single-claim pieces", not problems, "; ".join(problems))


def _check_merge(spec: GadgetSpec, report: Report) -> None:
    cls = spec.vertex_class
    if cls not in MERGE_CLASSES:
        report.add("second activation", True, "not a merge class")
        return
    problems = []
    out = spec.out_ports[0]
    for first, second in (("enter-a", "b"), ("enter-b", "a")):
        maker = set(spec.entry_claims(first))
        breaker = set()
        for mover, square in spec.sequence(first):
            (maker if mover is Turn.MAKER else breaker).add(square)
        entry = spec.port(second)
        closing = [
            c for c in spec.combos
            if len(c) == 5 and entry.pair | out.pair <= c and len(c & set(spec.interiors)) == 1
        ]
        if cls is VertexClass.M21:
            good = [c for c in closing if not c & breaker]
        else:
            good = [c for c in closing if (c & set(spec.interiors)) <= breaker]
        if not good:
            problems.append(f"no closing combo for re-entry via {second} after {first}")
    report.add("second activation", not problems, "; ".join(problems))


def _check_deviations(spec: GadgetSpec, stages_by_variant: Dict[str, List], budget: int,
                      report: Report) -> None:
    problems = []
    checked = 0
    seen = set()
    for variant, stages in stages_by_variant.items():
        steps = spec.sequence(variant)
        for pos, cursor in stages:
            if cursor >= len(steps) or cursor % 2 == 1:
                continue
            # an undecided choice looks the same for both variants at cursor 0
            decided = None if cursor == 0 and spec.vertex_class in (VertexClass.M12, VertexClass.B12) else variant
            key = (pos.maker_set, pos.breaker_set, decided)
            if key in seen:
                continue
            seen.add(key)
            regular = {sq for v in ([decided] if decided else spec.variants)
                       for _, sq in [spec.sequence(v)[cursor]]}
            for p in [None] + sorted_squares(pos.unclaimed - regular):
                q = local_breaker_reply(spec, decided, cursor, p, pos.unclaimed)
                maker = pos.maker_set | ({p} if p else set())
                breaker = pos.breaker_set | {q}
                g = residual(spec, maker, breaker)
                checked += 1
                if any(not c for c in g.combos):
                    problems.append(f"{variant}@{cursor} p={p}: Maker already won")
                    continue
                if star_form(spec, decided):
                    piece = star_piece(spec, q, pos.unclaimed - {p})
                    if piece.covered <= g.squares and is_complete_pairing(piece, g):
                        continue
                if find_complete_pairing(g, budget=budget) is None:
                    problems.append(f"{variant}@{cursor} p={p} q={q}: no local pairing")
    report.bump("deviations", checked)
    report.add("deviation replies locally safe", not problems, "; ".join(problems[:5]))


def validate_gadget(spec: GadgetSpec, pairing_budget: int = 5_000) -> Report:
    """Run every semantic check on one gadget; deterministic and side-effect free"""
    report = Report(title=f"gadget {spec.vertex_class.value}")
    if not _structure(spec, report):
        return report
    _check_rank(spec, report)
    _check_joint_pairing(spec, report)
    stages_by_variant: Dict[str, List] = {}
    for variant in spec.variants:
        stages: List = []
        _simulate(spec, variant, report, stages)
        stages_by_variant[variant] = stages
        _check_threats(spec, variant, stages, report)
    _check_pieces(spec, report)
    _check_merge(spec, report)
    _check_deviations(spec, stages_by_variant, pairing_budget, report)
    return report


def validate_library(lib: GadgetLibrary) -> Report:
    report = Report(title="gadget library")
    missing = lib.missing()
    report.add("all six classes", not missing, f"missing {[c.value for c in missing]}" if missing else "")
    for cls in VertexClass:
        if cls in lib.specs:
            report.extend(validate_gadget(lib.specs[cls]), prefix=f"{cls.value} ")
    logger.info("gadget_library_checked", status=report.status.value, checks=len(report.checks))
    return report
