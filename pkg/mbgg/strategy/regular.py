"""
Regular play on an associated game.

Exactly one vertex is active at a time. The active gadget's sequence is
played move by move; when it ends, the head of the outgoing arc whose
joints Maker now owns becomes active. A second activation decides the
game: an M21 vertex lets Maker complete a combo, a B21 vertex leaves
Breaker a winning pairing.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from mbgg.errors import ProtocolError
from mbgg.game.hypergraph import (
    Position,
    Square,
    Turn,
    apply_move,
    is_over,
    maker_has_won,
    reduce_position,
    sorted_squares,
    square_key,
    winning_squares,
)
from mbgg.game.pairing import Pairing, is_complete_pairing, pairing_strategy_play
from mbgg.gadgets.spec import CHOICE_CLASSES, MERGE_CLASSES, PortDirection
from mbgg.geography.digraph import (
    Arc,
    GGState,
    Player,
    Ruleset,
    Vertex,
    VertexClass,
    gg_loser_on_move,
)
from mbgg.logging import get_logger
from mbgg.reduction.associated import AssociatedGame, restrict
from mbgg.reports import Report

logger = get_logger(__name__)

SECOND = "second"


class FinishReason(str, Enum):
    MAKER_WON_M21 = "maker-won-M21"
    BREAKER_PAIRING_B21 = "breaker-pairing-B21"


@dataclass(frozen=True)
class Activation:
    vertex: Vertex
    entry: Optional[Arc]
    variant: Optional[str]  # None while a choice is pending


@dataclass(frozen=True)
class Move:
    mover: Turn
    square: Square
    vertex: Vertex
    stage: int  # index into the activation history
    regular: bool = True


@dataclass(frozen=True)
class RegularPlayState:
    position: Position
    active: Optional[Vertex]
    history: Tuple[Activation, ...]
    cursor: int = 0
    finished: Optional[FinishReason] = None
    moves: Tuple[Move, ...] = ()

    @classmethod
    def initial(cls, g: AssociatedGame) -> "RegularPlayState":
        s = g.instance.start
        variant = g.gadget(s).variants[0]
        return cls(g.fresh_position(), s, (Activation(s, None, variant),))

    @property
    def current(self) -> Activation:
        return self.history[-1]

    @property
    def second_activation(self) -> bool:
        return self.current.variant == SECOND

    @property
    def visited(self) -> List[Vertex]:
        return [a.vertex for a in self.history]

    def needs_choice(self, g: AssociatedGame) -> bool:
        return (
            self.finished is None
            and self.cursor == 0
            and self.current.variant is None
            and g.classes[self.active] in CHOICE_CLASSES
        )

    def decided_variant(self, g: AssociatedGame) -> Optional[str]:
        """The active variant as deviation replies see it; a choice counts as undecided before Maker's first move"""
        if self.cursor == 0 and g.classes[self.active] in CHOICE_CLASSES:
            return None
        return self.current.variant


def resolve_choice(g: AssociatedGame, v: Vertex, choice: str) -> str:
    """Accepts a variant key (choose-b) or the head of an outgoing arc"""
    spec = g.gadget(v)
    if choice in spec.variants:
        return choice
    for role, arc in g.map.port_roles[v].items():
        if arc == (v, choice) and spec.port(role).direction is PortDirection.OUT:
            return f"choose-{role}"
    raise ProtocolError(f"'{choice}' is not a choice at {v}", vertex=v)


def regular_squares_at(g: AssociatedGame, rps: RegularPlayState) -> frozenset:
    """Maker's or Breaker's regular square(s) in the current state"""
    v = rps.active
    if rps.finished is not None:
        return frozenset()
    if rps.second_activation:
        return frozenset({_closing_square(g, rps.position, v)})
    spec = g.gadget(v)
    variant = rps.decided_variant(g)
    if variant is None:
        return frozenset(g.map.to_global(v, spec.sequence(key)[rps.cursor][1]) for key in spec.variants)
    return frozenset({g.map.to_global(v, spec.sequence(variant)[rps.cursor][1])})


def _closing_square(g: AssociatedGame, pos: Position, v: Vertex) -> Square:
    threats = winning_squares(restrict(pos, v, g.map))
    if not threats:
        raise ProtocolError(f"second activation of {v} has no winning claim", vertex=v)
    return sorted_squares(threats)[0]


def _advance(g: AssociatedGame, state: RegularPlayState, variant: str) -> RegularPlayState:
    v = state.active
    spec = g.gadget(v)
    arc = g.map.port_roles[v][spec.exit_role(variant)]
    w = arc[1]
    if w in state.visited:
        cls = g.classes[w]
        if cls not in MERGE_CLASSES:
            raise ProtocolError(f"{w} ({cls.value}) cannot be activated twice", vertex=w)
        history = state.history + (Activation(w, arc, SECOND),)
        if cls is VertexClass.B21:
            logger.debug("regular_play_finished", vertex=w, reason=FinishReason.BREAKER_PAIRING_B21.value)
            return replace(state, active=None, history=history, cursor=0,
                           finished=FinishReason.BREAKER_PAIRING_B21)
        return replace(state, active=w, history=history, cursor=0)
    wspec = g.gadget(w)
    cls = g.classes[w]
    if cls in MERGE_CLASSES:
        entry = f"enter-{g.map.role_of_arc(w, arc)}"
    elif cls in CHOICE_CLASSES:
        entry = None
    else:
        entry = wspec.variants[0]
    return replace(state, active=w, history=state.history + (Activation(w, arc, entry),), cursor=0)


def regular_step(g: AssociatedGame, rps: RegularPlayState,
                 choice: Optional[str] = None) -> Tuple[Move, RegularPlayState]:
    """
    Play the next regular move.

    Args:
        choice: variant key or successor vertex, required exactly when an
            M12 or B12 vertex has just become active

    Raises:
        ProtocolError: play has finished, or the choice is missing or unexpected
    """
    if rps.finished is not None:
        raise ProtocolError("regular play has finished")
    v = rps.active
    stage = len(rps.history) - 1
    if rps.second_activation:
        if choice is not None:
            raise ProtocolError(f"no choice is made at {v}", vertex=v)
        square = _closing_square(g, rps.position, v)
        move = Move(Turn.MAKER, square, v, stage)
        logger.debug("regular_play_finished", vertex=v, reason=FinishReason.MAKER_WON_M21.value)
        return move, replace(rps, position=apply_move(rps.position, square),
                             finished=FinishReason.MAKER_WON_M21, moves=rps.moves + (move,))

    history = rps.history
    if rps.needs_choice(g):
        if choice is None:
            raise ProtocolError(f"{v} needs a choice", vertex=v)
        history = history[:-1] + (replace(rps.current, variant=resolve_choice(g, v, choice)),)
    elif choice is not None:
        raise ProtocolError(f"no choice is made at {v}", vertex=v)

    variant = history[-1].variant
    steps = g.gadget(v).sequence(variant)
    mover, local = steps[rps.cursor]
    if mover is not rps.position.to_move:
        raise ProtocolError(f"sequence expects {mover.value} but {rps.position.to_move.value} is to move", vertex=v)
    square = g.map.to_global(v, local)
    move = Move(mover, square, v, stage)
    state = replace(rps, position=apply_move(rps.position, square), history=history,
                    cursor=rps.cursor + 1, moves=rps.moves + (move,))
    if state.cursor == len(steps):
        state = _advance(g, state, variant)
    return move, state


def choices_of(g: AssociatedGame, rps: RegularPlayState) -> Dict[Vertex, str]:
    return {
        a.vertex: a.variant
        for a in rps.history
        if g.classes[a.vertex] in CHOICE_CLASSES and a.variant not in (None, SECOND)
    }


def run_regular_play(g: AssociatedGame, choices: Optional[Mapping[Vertex, str]] = None) -> RegularPlayState:
    """Play regular play to the end; raises ProtocolError on a missing choice"""
    choices = dict(choices or {})
    state = RegularPlayState.initial(g)
    while state.finished is None:
        choice = None
        if state.needs_choice(g):
            if state.active not in choices:
                raise ProtocolError(f"no choice given for {state.active}", vertex=state.active)
            choice = choices[state.active]
        _, state = regular_step(g, state, choice)
    return state


def iter_regular_states(g: AssociatedGame) -> Iterator[RegularPlayState]:
    """Every state reached by regular play, over all choice variants, depth first"""

    def walk(state: RegularPlayState) -> Iterator[RegularPlayState]:
        while True:
            yield state
            if state.finished is not None:
                return
            if state.needs_choice(g):
                for variant in g.gadget(state.active).variants:
                    _, nxt = regular_step(g, state, variant)
                    yield from walk(nxt)
                return
            _, state = regular_step(g, state)

    yield from walk(RegularPlayState.initial(g))


def iter_regular_traces(g: AssociatedGame) -> Iterator[RegularPlayState]:
    """Final states of all regular-play runs"""
    for state in iter_regular_states(g):
        if state.finished is not None:
            yield state


def remaining_joint_pairing(g: AssociatedGame, pos: Position) -> Pairing:
    """Joint pairs of every arc whose two joints are still unclaimed"""
    return Pairing(frozenset(
        frozenset(pair) for pair in g.map.arc_joints.values() if set(pair) <= pos.unclaimed
    ))


def play_out_after_b21(g: AssociatedGame, pos: Position, maker_moves: Sequence[Square]) -> Position:
    """Breaker answers arbitrary Maker moves with the joint-pair strategy"""
    return pairing_strategy_play(remaining_joint_pairing(g, pos), pos, maker_moves)


def _relaxed(g: AssociatedGame, rps: RegularPlayState) -> Position:
    """The position without Maker's claims on arcs leaving the active vertex"""
    if rps.active is None:
        return rps.position
    allowance: Set[Square] = set()
    for arc in g.instance.graph.out_arcs(rps.active):
        allowance |= set(g.map.arc_joints[arc]) & rps.position.maker_set
    return replace(rps.position, maker_set=rps.position.maker_set - allowance)


def check_invariants(g: AssociatedGame, rps: RegularPlayState) -> Report:
    """The four regular-play invariants for one state"""
    report = Report(title="regular-play invariants")
    pos = rps.position

    bad_moves = []
    for move in rps.moves:
        spec = g.gadget(move.vertex)
        local = g.map.to_local(move.vertex, move.square)
        port = spec.port_of(local) if local else None
        interior = local in spec.interiors
        output = port is not None and port.direction is PortDirection.OUT
        if move.mover is Turn.MAKER and not (interior or output):
            bad_moves.append(f"Maker {move.square} at {move.vertex}")
        if move.mover is Turn.BREAKER and not interior:
            bad_moves.append(f"Breaker {move.square} at {move.vertex}")
    report.add("movers claim allowed squares", not bad_moves, "; ".join(bad_moves))

    visited = set(rps.visited)
    stray = []
    for u in g.instance.graph.ordered_vertices():
        if u in visited:
            continue
        claimed = g.map.vertex_squares(u) & pos.claimed
        allowed = set()
        if rps.active is not None and (rps.active, u) in g.map.arc_joints:
            allowed = set(g.map.arc_joints[(rps.active, u)]) & pos.maker_set
        extra = claimed - allowed
        if extra:
            stray.append(f"{u}: {sorted_squares(extra)}")
    report.add("inactive vertices untouched", not stray, "; ".join(stray))

    relaxed = _relaxed(g, rps)
    open_combos, bad_forms = [], []
    for u in visited:
        if u == rps.active:
            continue
        r = restrict(pos, u, g.map)
        if g.classes[u] is not VertexClass.M21:
            if r.combos:
                open_combos.append(u)
            continue
        if rps.finished is FinishReason.MAKER_WON_M21:
            continue
        form = restrict(relaxed, u, g.map)
        spec = g.gadget(u)
        entered = {a.entry for a in rps.history if a.vertex == u}
        other_pairs = [
            frozenset(g.map.arc_joints[g.map.port_roles[u][p.edge_role]])
            for p in spec.in_ports if g.map.port_roles[u][p.edge_role] not in entered
        ]
        ok = (
            len(form.squares) == 3
            and len(form.combos) == 1
            and next(iter(form.combos)) == form.squares
            and any(pair <= form.squares for pair in other_pairs)
        )
        if not ok:
            bad_forms.append(u)
    report.add("finished gadgets have no open combos", not open_combos,
               f"open at {open_combos}" if open_combos else "")
    report.add("finished M21 gadgets keep one 3-square combo", not bad_forms,
               f"wrong form at {bad_forms}" if bad_forms else "")
    return report


@dataclass(frozen=True)
class RegularOutcome:
    gg_winner: Player
    mb_winner: Turn
    state: RegularPlayState
    pairing_complete: Optional[bool] = None
    final: Optional[Position] = None  # end of the joint-pair play-out after a B21 merge

    @property
    def agree(self) -> bool:
        return (self.gg_winner is Player.ALICE) == (self.mb_winner is Turn.MAKER)


def simulate_regular_outcome(
    g: AssociatedGame,
    alice_choices: Optional[Mapping[Vertex, str]] = None,
    bob_choices: Optional[Mapping[Vertex, str]] = None,
) -> RegularOutcome:
    """
    Regular play next to revised-rules Geography with the same choices.

    Alice decides at M12 vertices and Bob at B12 vertices.

    Raises:
        ProtocolError: a needed choice is missing
    """
    alice_choices = dict(alice_choices or {})
    bob_choices = dict(bob_choices or {})
    state = RegularPlayState.initial(g)
    while state.finished is None:
        choice = None
        if state.needs_choice(g):
            v = state.active
            pool = alice_choices if g.classes[v] is VertexClass.M12 else bob_choices
            if v not in pool:
                raise ProtocolError(f"no choice given for {v}", vertex=v)
            choice = pool[v]
        _, state = regular_step(g, state, choice)

    gg_state = GGState(tuple(state.visited), Ruleset.REVISED)
    gg_winner = gg_loser_on_move(g.instance, gg_state).other()
    pairing_complete = None
    final = None
    if state.finished is FinishReason.MAKER_WON_M21:
        mb_winner = Turn.MAKER if maker_has_won(state.position) else Turn.BREAKER
    else:
        pairing = remaining_joint_pairing(g, state.position)
        pairing_complete = is_complete_pairing(pairing, reduce_position(state.position))
        final = state.position
        # Maker keeps taking the smallest free square until the game is decided
        while not is_over(final):
            final = pairing_strategy_play(pairing, final, [min(final.unclaimed, key=square_key)])
        mb_winner = Turn.MAKER if maker_has_won(final) else Turn.BREAKER
    result = RegularOutcome(gg_winner, mb_winner, state, pairing_complete, final)
    logger.info("regular_play_simulated", gg_winner=gg_winner.value, mb_winner=mb_winner.value,
                agree=result.agree, moves=len(state.moves))
    return result
