"""
Maker-Breaker game model.

Hypergraphs, games and positions are immutable values. Squares are plain
strings ordered by ``square_key`` (natural order, so ``v.x2 < v.x10``).
"""

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from mbgg.errors import InvalidArgumentError, InvalidMoveError
from mbgg.logging import get_logger

logger = get_logger(__name__)

Square = str
Combo = FrozenSet[Square]

_CHUNK = re.compile(r"(\d+)")


def square_key(square: Square) -> Tuple:
    """Natural sort key for square and vertex names"""
    return tuple(
        (0, int(part), "") if part.isdigit() else (1, 0, part)
        for part in _CHUNK.split(square) if part
    )


def sorted_squares(squares: Iterable[Square]) -> List[Square]:
    return sorted(squares, key=square_key)


def combo_key(combo: Iterable[Square]) -> Tuple:
    ordered = sorted_squares(combo)
    return (len(ordered), tuple(square_key(s) for s in ordered))


class Turn(str, Enum):
    """Side to move"""
    MAKER = "maker"
    BREAKER = "breaker"

    def other(self) -> "Turn":
        return Turn.BREAKER if self is Turn.MAKER else Turn.MAKER


@dataclass(frozen=True)
class Hypergraph:
    """Squares plus winning combinations"""
    squares: FrozenSet[Square]
    combos: FrozenSet[Combo]

    def __post_init__(self):
        object.__setattr__(self, 'squares', frozenset(self.squares))
        object.__setattr__(self, 'combos', frozenset(frozenset(c) for c in self.combos))
        for combo in self.combos:
            if not combo <= self.squares:
                missing = sorted_squares(combo - self.squares)
                raise InvalidArgumentError(
                    f"combo uses undeclared squares {missing}", field='combos'
                )

    @classmethod
    def from_combos(cls, combos: Iterable[Iterable[Square]], squares: Iterable[Square] = ()) -> "Hypergraph":
        frozen = frozenset(frozenset(c) for c in combos)
        declared = set(squares)
        for combo in frozen:
            declared |= combo
        return cls(frozenset(declared), frozen)

    def ordered_squares(self) -> List[Square]:
        return sorted_squares(self.squares)

    def ordered_combos(self) -> List[Combo]:
        return sorted(self.combos, key=combo_key)

    def combos_containing(self, square: Square) -> List[Combo]:
        return [c for c in self.combos if square in c]


@dataclass(frozen=True)
class GameSpec:
    """A hypergraph together with the side to move"""
    hypergraph: Hypergraph
    to_move: Turn = Turn.MAKER

    @property
    def squares(self) -> FrozenSet[Square]:
        return self.hypergraph.squares

    @property
    def combos(self) -> FrozenSet[Combo]:
        return self.hypergraph.combos

    @classmethod
    def from_combos(cls, combos: Iterable[Iterable[Square]], to_move: Turn = Turn.MAKER,
                    squares: Iterable[Square] = ()) -> "GameSpec":
        return cls(Hypergraph.from_combos(combos, squares), to_move)


@dataclass(frozen=True)
class Position:
    """
    A game in progress.

    The claim-count balance is not enforced here; artificial positions with
    arbitrary claims are legitimate inputs for pairing arguments.
    """
    hypergraph: Hypergraph
    maker_set: FrozenSet[Square] = field(default_factory=frozenset)
    breaker_set: FrozenSet[Square] = field(default_factory=frozenset)
    to_move: Turn = Turn.MAKER

    def __post_init__(self):
        object.__setattr__(self, 'maker_set', frozenset(self.maker_set))
        object.__setattr__(self, 'breaker_set', frozenset(self.breaker_set))
        if self.maker_set & self.breaker_set:
            raise InvalidArgumentError(
                "maker and breaker claims overlap",
                details={'squares': sorted_squares(self.maker_set & self.breaker_set)}
            )
        stray = (self.maker_set | self.breaker_set) - self.hypergraph.squares
        if stray:
            raise InvalidArgumentError(
                "claimed squares outside the hypergraph",
                details={'squares': sorted_squares(stray)}
            )

    @classmethod
    def fresh(cls, game: GameSpec) -> "Position":
        return cls(game.hypergraph, to_move=game.to_move)

    @property
    def claimed(self) -> FrozenSet[Square]:
        return self.maker_set | self.breaker_set

    @property
    def unclaimed(self) -> FrozenSet[Square]:
        return self.hypergraph.squares - self.maker_set - self.breaker_set

    def owner(self, square: Square) -> Optional[Turn]:
        if square in self.maker_set:
            return Turn.MAKER
        if square in self.breaker_set:
            return Turn.BREAKER
        return None

    def claims_balanced(self) -> bool:
        """True when the claim counts fit a game that Maker started"""
        return len(self.maker_set) - len(self.breaker_set) in (0, 1)

    def game_spec(self) -> GameSpec:
        return GameSpec(self.hypergraph, self.to_move)


def rank(h: Hypergraph) -> int:
    """Largest combo size; 0 when there are no combos"""
    return max((len(c) for c in h.combos), default=0)


def is_broken(combo: Iterable[Square], p: Position) -> bool:
    combo = frozenset(combo)
    if combo not in p.hypergraph.combos:
        raise InvalidArgumentError("combo is not a winning combination of the game", field='combo')
    return bool(combo & p.breaker_set)


def reduce_position(p: Position) -> GameSpec:
    """
    The game a position reduces to.

    A residual combo may be empty; that means Maker has already completed it.
    """
    residual = frozenset(
        combo - p.maker_set
        for combo in p.hypergraph.combos
        if not combo & p.breaker_set
    )
    return GameSpec(Hypergraph(p.unclaimed, residual), p.to_move)


def maker_has_won(p: Position) -> bool:
    return any(combo <= p.maker_set for combo in p.hypergraph.combos)


def is_over(p: Position) -> bool:
    if maker_has_won(p):
        return True
    if not p.unclaimed:
        return True
    return all(combo & p.breaker_set for combo in p.hypergraph.combos)


def winning_squares(g: GameSpec) -> FrozenSet[Square]:
    """Squares that form a singleton residual combo, whoever is to move"""
    return frozenset(next(iter(c)) for c in g.combos if len(c) == 1)


def double_threats(g: GameSpec) -> Set[Tuple[Square, FrozenSet[Square]]]:
    """Every (pivot, wings) with {pivot, q} and {pivot, r} both combos, whoever is to move"""
    partners: Dict[Square, Set[Square]] = {}
    for combo in g.combos:
        if len(combo) != 2:
            continue
        a, b = tuple(combo)
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    threats = set()
    for pivot, wings in partners.items():
        for q, r in combinations(sorted_squares(wings), 2):
            threats.add((pivot, frozenset((q, r))))
    return threats


def _require_breaker_turn(g: GameSpec, what: str) -> None:
    if g.to_move is not Turn.BREAKER:
        raise InvalidArgumentError(f"{what} is read on Breaker's turn", field='to_move')


def detect_mate_in_one(g: GameSpec) -> FrozenSet[Square]:
    """
    Squares Breaker must claim to avoid losing at once.

    Raises:
        InvalidArgumentError: Maker is to move
    """
    _require_breaker_turn(g, "mate in one")
    return winning_squares(g)


def detect_mate_in_two(g: GameSpec) -> Set[Tuple[Square, FrozenSet[Square]]]:
    """
    Maker's double threats as (pivot, wings).

    Raises:
        InvalidArgumentError: Maker is to move
    """
    _require_breaker_turn(g, "mate in two")
    return double_threats(g)


def legal_moves(p: Position) -> FrozenSet[Square]:
    return p.unclaimed


def apply_move(p: Position, s: Square) -> Position:
    if s not in p.hypergraph.squares:
        raise InvalidMoveError(f"unknown square {s}", square=s)
    if s in p.maker_set or s in p.breaker_set:
        raise InvalidMoveError(f"square {s} is already claimed", square=s)
    if p.to_move is Turn.MAKER:
        return replace(p, maker_set=p.maker_set | {s}, to_move=Turn.BREAKER)
    return replace(p, breaker_set=p.breaker_set | {s}, to_move=Turn.MAKER)


def apply_moves(p: Position, squares: Iterable[Square]) -> Position:
    for s in squares:
        p = apply_move(p, s)
    return p


def connected_components(h: Hypergraph) -> List[Hypergraph]:
    """Split by combo overlap; isolated squares become comboless components"""
    parent = {s: s for s in h.squares}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for combo in h.combos:
        members = sorted_squares(combo)
        for other in members[1:]:
            ra, rb = find(members[0]), find(other)
            if ra != rb:
                parent[rb] = ra

    groups: Dict[Square, Set[Square]] = {}
    for s in h.squares:
        groups.setdefault(find(s), set()).add(s)

    components = []
    for members in groups.values():
        combos = frozenset(c for c in h.combos if c and c <= members)
        components.append(Hypergraph(frozenset(members), combos))
    # empty combos have no squares to attach to; keep them on the first component
    empties = frozenset(c for c in h.combos if not c)
    components.sort(key=lambda comp: square_key(min(comp.squares, key=square_key)))
    if empties:
        if components:
            first = components[0]
            components[0] = Hypergraph(first.squares, first.combos | empties)
        else:
            components.append(Hypergraph(frozenset(), empties))
    return components
