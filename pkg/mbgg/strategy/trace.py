"""
Trace logs of regular play.

    activate <vertex> via <u->w|start> variant <key>
    move <n> <maker|breaker> <square> <regular|deviation>
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

from mbgg.errors import MBGGError, ParseError
from mbgg.game.hypergraph import Turn, apply_move, maker_has_won, reduce_position
from mbgg.game.mbh_format import strip_comment
from mbgg.geography.digraph import Arc, Vertex, arc_name
from mbgg.logging import get_logger
from mbgg.reduction.associated import AssociatedGame
from mbgg.reports import Report
from mbgg.strategy.regular import RegularPlayState, regular_step

logger = get_logger(__name__)


@dataclass(frozen=True)
class TraceActivation:
    vertex: Vertex
    via: Optional[Arc]
    variant: str

    def render(self) -> str:
        via = arc_name(self.via) if self.via else "start"
        return f"activate {self.vertex} via {via} variant {self.variant}"


@dataclass(frozen=True)
class TraceMove:
    number: int
    mover: Turn
    square: str
    regular: bool = True

    def render(self) -> str:
        kind = "regular" if self.regular else "deviation"
        return f"move {self.number} {self.mover.value} {self.square} {kind}"


@dataclass
class Trace:
    events: List[Union[TraceActivation, TraceMove]] = field(default_factory=list)

    @property
    def moves(self) -> List[TraceMove]:
        return [e for e in self.events if isinstance(e, TraceMove)]

    def render(self) -> str:
        return "\n".join(e.render() for e in self.events) + "\n"


def trace_from_state(rps: RegularPlayState) -> Trace:
    trace = Trace()
    number = 0
    for stage, act in enumerate(rps.history):
        if act.variant is None:
            continue
        trace.events.append(TraceActivation(act.vertex, act.entry, act.variant))
        for move in rps.moves:
            if move.stage == stage:
                number += 1
                trace.events.append(TraceMove(number, move.mover, move.square, move.regular))
    return trace


def _parse_arc(token: str, lineno: int, path: Optional[str]) -> Optional[Arc]:
    if token == "start":
        return None
    tail, sep, head = token.partition("->")
    if not sep or not tail or not head:
        raise ParseError(f"bad arc '{token}'", line=lineno, path=path)
    return tail, head


def parse_trace(text: str, path: Optional[str] = None) -> Trace:
    trace = Trace()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "activate" and len(tokens) == 6 and tokens[2] == "via" and tokens[4] == "variant":
            trace.events.append(TraceActivation(tokens[1], _parse_arc(tokens[3], lineno, path), tokens[5]))
        elif tokens[0] == "move" and len(tokens) == 5:
            if tokens[2] not in ("maker", "breaker") or tokens[4] not in ("regular", "deviation"):
                raise ParseError(f"bad move line '{line}'", line=lineno, path=path)
            try:
                number = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad move number '{tokens[1]}'", line=lineno, path=path)
            trace.events.append(TraceMove(number, Turn(tokens[2]), tokens[3], tokens[4] == "regular"))
        else:
            raise ParseError(f"bad trace line '{line}'", line=lineno, path=path)
    return trace


def read_trace(path: Union[str, Path]) -> Trace:
    return parse_trace(Path(path).read_text(encoding="utf-8"), path=str(path))


def replay_trace(g: AssociatedGame, trace: Trace) -> Report:
    """
    Re-apply a trace and compare it against the regular-play engine.

    Moves marked regular must be exactly what regular play produces; after
    the first deviation the engine is left behind and moves are only
    checked for legality.
    """
    report = Report(title="trace replay")
    state: Optional[RegularPlayState] = RegularPlayState.initial(g)
    pos = g.fresh_position()
    variants = {}
    problems = []
    for event in trace.events:
        if isinstance(event, TraceActivation):
            variants[event.vertex] = event.variant
            continue
        if event.mover is not pos.to_move:
            problems.append(f"move {event.number}: {event.mover.value} moves out of turn")
            break
        try:
            pos = apply_move(pos, event.square)
        except MBGGError as e:
            problems.append(f"move {event.number}: {e.message}")
            break
        if state is None:
            continue
        if not event.regular:
            state = None
            continue
        if state.finished is not None:
            problems.append(f"move {event.number}: regular play had already finished")
            break
        choice = variants.get(state.active) if state.needs_choice(g) else None
        try:
            expected, state = regular_step(g, state, choice)
        except MBGGError as e:
            problems.append(f"move {event.number}: {e.message}")
            break
        if expected.square != event.square:
            problems.append(f"move {event.number}: regular play claims {expected.square}, trace {event.square}")
            break
    report.add("trace consistent", not problems, "; ".join(problems))
    report.bump("moves", len(trace.moves))
    won = maker_has_won(pos)
    report.note = "maker completed a combo" if won else (
        "no open combos" if not reduce_position(pos).combos else "game continues")
    if state is not None and state.finished is not None:
        report.note += f"; regular play finished ({state.finished.value})"
    logger.debug("trace_replayed", moves=len(trace.moves), status=report.status.value)
    return report
