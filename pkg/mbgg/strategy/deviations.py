"""
Answers to deviations from regular play, and the sweeps that check them.

When Breaker leaves regular play, Maker wins at once or within two moves.
When Maker leaves it, Breaker replies so that the position admits a
complete pairing, assembled from one puzzle piece per vertex. Vertices
fall into five categories relative to the active vertex v:

    1  active before v, not M21
    2  active before v, M21
    3  never active, untouched
    4  never active, one joint of the arc from v claimed by Maker
    5  v itself
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from mbgg.errors import (
    InvalidPiecesError,
    MBGGError,
    NotADeviationError,
    ProtocolError,
)
from mbgg.game.hypergraph import (
    GameSpec,
    Position,
    Square,
    Turn,
    apply_move,
    combo_key,
    detect_mate_in_one,
    double_threats,
    reduce_position,
    sorted_squares,
    winning_squares,
)
from mbgg.game.pairing import Pairing, find_complete_pairing, is_complete_pairing
from mbgg.gadgets.spec import (
    joint_pairing,
    local_breaker_reply,
    single_claim_piece,
    star_form,
    star_piece,
    subverted_port,
)
from mbgg.geography.digraph import Vertex, VertexClass
from mbgg.logging import get_logger
from mbgg.reduction.associated import AssociatedGame, restrict
from mbgg.reports import Report
from mbgg.strategy.pieces import (
    drop_claimed,
    half_claimed_outputs,
    lift,
    piece_violations,
    search_piece,
    trait_pairs,
    union_pairing,
)
from mbgg.strategy.regular import RegularPlayState, iter_regular_states, regular_squares_at

logger = get_logger(__name__)

GLOBAL_SEARCH = "*"  # marks a certificate found by searching the whole position


@dataclass(frozen=True)
class DeviationReply:
    p: Square
    q: Square
    certificate: Pairing
    position: Position  # after both moves, Maker to move
    categories: Dict[Vertex, int]
    special: bool
    searched: Tuple[Vertex, ...] = ()


def vertex_category(g: AssociatedGame, rps: RegularPlayState, w: Vertex) -> int:
    if w == rps.active:
        return 5
    if w in rps.visited:
        return 2 if g.classes[w] is VertexClass.M21 else 1
    if g.map.vertex_squares(w) & rps.position.claimed:
        return 4
    return 3


def _open_combo_piece(g: AssociatedGame, w: Vertex, after: Position) -> Optional[Pairing]:
    """
    Trait pairs plus a pair inside every combo they leave open.

    Shortest combos are paired first; a pair never touches a trait pair or a
    surviving joint of a half-claimed outgoing arc.
    """
    pairs = set(trait_pairs(g, w, after).pairs)
    used = set(half_claimed_outputs(g, w, after))
    for pair in pairs:
        used |= pair
    combos = sorted(restrict(after, w, g.map).combos, key=combo_key)
    for combo in combos:
        if any(pair <= combo for pair in pairs):
            continue
        free = [s for s in sorted_squares(combo) if s not in used]
        if len(free) < 2:
            return None
        pair = frozenset(free[:2])
        pairs.add(pair)
        used |= pair
    return Pairing(frozenset(pairs))


def _single_claim(g: AssociatedGame, w: Vertex, p: Square, after: Position) -> Optional[Square]:
    """
    The Maker square whose single-claim piece covers a never-active vertex.

    The deviation wins over a joint Maker already held there; that joint's
    partner is Breaker's, so the pair drops out with the claimed squares.
    """
    own = g.map.vertex_squares(w)
    if p in own:
        return p
    held = own & after.maker_set
    return next(iter(held)) if len(held) == 1 else None


def _untouched_piece(g: AssociatedGame, w: Vertex, after: Position, base: Optional[Square]) -> Pairing:
    """Joint pairing, or the single-claim piece of ``base``, minus claimed squares"""
    spec = g.gadget(w)
    if base is None:
        local = joint_pairing(spec)
    else:
        local = single_claim_piece(spec, g.map.to_local(w, base))
    return drop_claimed(lift(g, w, local), after)


def _star_piece(g: AssociatedGame, rps: RegularPlayState, p: Square, q: Square,
                after: Position) -> Optional[Pairing]:
    v = rps.active
    spec = g.gadget(v)
    unclaimed = g.map.localize(v, rps.position.unclaimed - {p})
    try:
        local = star_piece(spec, g.map.to_local(v, q), unclaimed)
        return drop_claimed(lift(g, v, local).union(trait_pairs(g, v, after)), after)
    except (StopIteration, ValueError, MBGGError):
        return None


def _explicit_piece(g: AssociatedGame, rps: RegularPlayState, w: Vertex, category: int,
                    p: Square, q: Square, after: Position) -> Optional[Pairing]:
    if category == 1:
        return trait_pairs(g, w, after)
    if category == 2:
        return _open_combo_piece(g, w, after)
    if category in (3, 4):
        return _untouched_piece(g, w, after, _single_claim(g, w, p, after))
    if star_form(g.gadget(w), rps.decided_variant(g)):
        return _star_piece(g, rps, p, q, after)
    return _open_combo_piece(g, w, after)


def _special_pieces(g: AssociatedGame, rps: RegularPlayState, after: Position,
                    categories: Dict[Vertex, int]) -> Dict[Vertex, Pairing]:
    """
    Pieces for v and its chosen successor w' when Maker attacked the unchosen
    arc of a Breaker choice after her first move there.
    """
    v = rps.active
    spec = g.gadget(v)
    variant = rps.current.variant
    arc = g.map.port_roles[v][spec.exit_role(variant)]
    w2 = arc[1]
    (regular,) = regular_squares_at(g, rps)
    (other,) = set(g.map.arc_joints[arc]) - {regular}
    interiors = [s for s in g.map.globalize(v, spec.interiors) if s in after.unclaimed]
    if len(interiors) != 1:
        raise InvalidPiecesError(f"expected one free interior at {v}, found {sorted_squares(interiors)}")
    pieces = {v: Pairing.of((regular, interiors[0]))}
    category = categories[w2]
    if category == 1:
        pieces[w2] = Pairing.empty()
    elif category == 2:
        free = [s for s in g.map.globalize(w2, g.gadget(w2).interiors) if s in after.unclaimed]
        if len(free) != 1:
            raise InvalidPiecesError(f"expected one free interior at {w2}")
        pieces[w2] = Pairing.of((other, free[0]))
    elif category == 3:
        local = single_claim_piece(g.gadget(w2), g.map.to_local(w2, regular))
        pieces[w2] = lift(g, w2, local)
    else:
        raise InvalidPiecesError(f"successor {w2} falls in category {category}")
    return pieces


def breaker_reply(g: AssociatedGame, rps: RegularPlayState, p: Square) -> Square:
    """Breaker's answer q to Maker's deviation p"""
    v = rps.active
    spec = g.gadget(v)
    return g.map.to_global(v, local_breaker_reply(
        spec,
        rps.decided_variant(g),
        rps.cursor,
        g.map.to_local(v, p),
        g.map.localize(v, rps.position.unclaimed),
    ))


def breaker_reply_to_deviation(g: AssociatedGame, rps: RegularPlayState, p: Square,
                               piece_budget: int = 5_000) -> DeviationReply:
    """
    Reply to Maker's deviation and certify the result with a complete pairing.

    Raises:
        ProtocolError: no active vertex, Breaker to move, or a second activation
        NotADeviationError: ``p`` is a regular square
        InvalidMoveError: ``p`` is already claimed
        InvalidPiecesError: the pieces could not be assembled
    """
    if rps.finished is not None or rps.active is None:
        raise ProtocolError("regular play has finished")
    if rps.second_activation:
        raise ProtocolError(f"{rps.active} is active for the second time", vertex=rps.active)
    if rps.position.to_move is not Turn.MAKER:
        raise ProtocolError("deviation replies answer Maker's moves", vertex=rps.active)
    if p in regular_squares_at(g, rps):
        raise NotADeviationError(f"{p} is a regular square", square=p)

    v = rps.active
    spec = g.gadget(v)
    q = breaker_reply(g, rps, p)
    after = apply_move(apply_move(rps.position, p), q)

    port = subverted_port(spec, rps.decided_variant(g), rps.cursor)
    subverted = port is not None and g.map.to_local(v, p) in port.joint_names
    special = subverted and rps.cursor == 2

    categories = {w: vertex_category(g, rps, w) for w in g.instance.graph.ordered_vertices()}
    pieces: Dict[Vertex, Pairing] = {}
    if special:
        pieces.update(_special_pieces(g, rps, after, categories))
    searched: List[Vertex] = []
    for w, category in categories.items():
        if w in pieces:
            continue
        piece = _explicit_piece(g, rps, w, category, p, q, after)
        if piece is None or piece_violations(g, w, after, piece):
            piece = search_piece(g, w, after, budget=piece_budget)
            if piece is None:
                raise InvalidPiecesError(f"no puzzle piece at {w} (category {category})",
                                         details={'vertex': w, 'p': p, 'q': q})
            searched.append(w)
        pieces[w] = piece
    residual = reduce_position(after)
    try:
        certificate = union_pairing(pieces)
    except InvalidPiecesError:
        certificate = None
    if certificate is None or not is_complete_pairing(certificate, residual):
        certificate = find_complete_pairing(residual, budget=piece_budget * len(pieces))
        if certificate is None:
            raise InvalidPiecesError("pieces do not combine into a complete pairing",
                                     details={'p': p, 'q': q})
        searched.append(GLOBAL_SEARCH)
    return DeviationReply(p, q, certificate, after, categories, special, tuple(searched))


def _position_key(pos: Position) -> Tuple[FrozenSet[Square], FrozenSet[Square]]:
    return pos.maker_set, pos.breaker_set


def _maker_wins_soon(g: GameSpec) -> bool:
    return bool(winning_squares(g) or double_threats(g))


def verify_breaker_deviations(g: AssociatedGame, solver_limits=None) -> Report:
    """
    Breaker deviations lose: at every Breaker turn of regular play Maker
    threatens a win that only the regular move (or, at a Breaker choice,
    only the two choice squares) prevents.

    With ``solver_limits`` each deviation position is also solved exactly.
    """
    report = Report(title="breaker deviations")
    seen: Set[Tuple] = set()
    problems: List[str] = []
    if solver_limits is not None:
        from mbgg.solver.maker_breaker import Outcome, solve_mb

    for state in iter_regular_states(g):
        pos = state.position
        if state.finished is not None or pos.to_move is not Turn.BREAKER:
            continue
        key = _position_key(pos)
        if key in seen:
            continue
        seen.add(key)
        report.bump("positions")
        v = state.active
        local = restrict(pos, v, g.map)
        whole = reduce_position(pos)
        if g.classes[v] is VertexClass.B12 and state.cursor == 1:
            allowed = g.map.globalize(v, {"x2", "x3"})
            wanted = [g.map.globalize(v, pair) for pair in ({"p_b", "x2"}, {"x2", "x3"}, {"x3", "p_c"})]
            missing = [sorted_squares(c) for c in wanted if c not in local.combos]
            if missing:
                problems.append(f"{v}: choice point lacks {missing}")
        else:
            allowed = regular_squares_at(g, state)
            if detect_mate_in_one(local) != allowed:
                problems.append(f"{v}@{state.cursor}: local threats {sorted_squares(detect_mate_in_one(local))}")
        for y in sorted_squares(pos.unclaimed - allowed):
            report.bump("deviations")
            after = apply_move(pos, y)
            if not _maker_wins_soon(reduce_position(after)):
                problems.append(f"{v}@{state.cursor}: Breaker {y} leaves no Maker threat")
                continue
            if solver_limits is not None:
                result = solve_mb(after, solver_limits)
                if result.outcome is Outcome.INCONCLUSIVE:
                    report.inconclusive = True
                elif result.outcome is not Outcome.MAKER:
                    problems.append(f"{v}@{state.cursor}: Breaker {y} is not a Maker win")
        if not whole.combos:
            problems.append(f"{v}@{state.cursor}: no open combos at a Breaker turn")
    report.add("Breaker deviations lose", not problems, "; ".join(problems[:5]))
    logger.info("breaker_deviations_checked", status=report.status.value, **report.counters)
    return report


def verify_maker_deviations(g: AssociatedGame, piece_budget: int = 5_000) -> Report:
    """
    Every Maker deviation at every Maker turn of regular play gets a certified reply.

    A reply whose certificate needed a search at some vertex, or over the
    whole position, fails "replies built from puzzle pieces".
    """
    report = Report(title="maker deviations")
    seen: Set[Tuple] = set()
    problems: List[str] = []
    searched: List[str] = []
    for state in iter_regular_states(g):
        pos = state.position
        if state.finished is not None or state.second_activation or pos.to_move is not Turn.MAKER:
            continue
        key = (_position_key(pos), state.decided_variant(g), state.active)
        if key in seen:
            continue
        seen.add(key)
        report.bump("positions")
        for p in sorted_squares(pos.unclaimed - regular_squares_at(g, state)):
            report.bump("deviations")
            try:
                reply = breaker_reply_to_deviation(g, state, p, piece_budget)
            except InvalidPiecesError as e:
                problems.append(f"{state.active}@{state.cursor} p={p}: {e.message}")
                continue
            if reply.searched:
                report.bump("searched pieces", len(reply.searched))
                where = ",".join(reply.searched)
                searched.append(f"{state.active}@{state.cursor} p={p} at {where}")
            if reply.special:
                report.bump("special replies")
            residual = reduce_position(reply.position)
            if not reply.certificate.covered <= reply.position.unclaimed or not is_complete_pairing(
                reply.certificate, residual
            ):
                problems.append(f"{state.active}@{state.cursor} p={p} q={reply.q}: certificate incomplete")
    report.add("Maker deviations certified", not problems, "; ".join(problems[:5]))
    report.add("replies built from puzzle pieces", not searched, "; ".join(searched[:5]))
    logger.info("maker_deviations_checked", status=report.status.value, **report.counters)
    return report
