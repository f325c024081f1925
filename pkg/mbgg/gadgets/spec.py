"""
Gadget hypergraphs in local names.

Every gadget uses the names x1..xk for interiors and p_<role>, q_<role> for
the joint squares of its ports (roles a, b, c). The local constructions
here (joint pairing, single-claim puzzle pieces, deviation replies) are
shared by the validator and by the strategy engine, which maps them to
global squares.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from mbgg.errors import InvalidArgumentError, InvalidLibraryError
from mbgg.game.hypergraph import (
    GameSpec,
    Hypergraph,
    Position,
    Square,
    Turn,
    reduce_position,
    sorted_squares,
)
from mbgg.game.pairing import Pairing, is_complete_pairing, pairing_blocks
from mbgg.geography.digraph import VertexClass


class PortDirection(str, Enum):
    IN = "in"
    OUT = "out"


Step = Tuple[Turn, Square]

SIGNATURES: Dict[VertexClass, Tuple[Tuple[str, PortDirection], ...]] = {
    VertexClass.M12: (("a", PortDirection.IN), ("b", PortDirection.OUT), ("c", PortDirection.OUT)),
    VertexClass.B12: (("a", PortDirection.IN), ("b", PortDirection.OUT), ("c", PortDirection.OUT)),
    VertexClass.M21: (("a", PortDirection.IN), ("b", PortDirection.IN), ("c", PortDirection.OUT)),
    VertexClass.B21: (("a", PortDirection.IN), ("b", PortDirection.IN), ("c", PortDirection.OUT)),
    VertexClass.N11: (("a", PortDirection.IN), ("b", PortDirection.OUT)),
    VertexClass.B01: (("a", PortDirection.OUT),),
}

VARIANTS: Dict[VertexClass, Tuple[str, ...]] = {
    VertexClass.M12: ("choose-b", "choose-c"),
    VertexClass.B12: ("choose-b", "choose-c"),
    VertexClass.M21: ("enter-a", "enter-b"),
    VertexClass.B21: ("enter-a", "enter-b"),
    VertexClass.N11: ("only",),
    VertexClass.B01: ("only",),
}

CHOICE_CLASSES = (VertexClass.M12, VertexClass.B12)
MERGE_CLASSES = (VertexClass.M21, VertexClass.B21)


def joint(prefix: str, role: str) -> Square:
    return f"{prefix}_{role}"


@dataclass(frozen=True)
class PortSlot:
    edge_role: str
    direction: PortDirection
    joint_names: Tuple[Square, Square]

    @property
    def p(self) -> Square:
        return self.joint_names[0]

    @property
    def q(self) -> Square:
        return self.joint_names[1]

    @property
    def pair(self) -> FrozenSet[Square]:
        return frozenset(self.joint_names)


@dataclass(frozen=True)
class GadgetSpec:
    """One gadget hypergraph with its regular-play sequences"""
    vertex_class: VertexClass
    interiors: Tuple[Square, ...]
    ports: Tuple[PortSlot, ...]
    combos: FrozenSet[FrozenSet[Square]]
    sequences: Tuple[Tuple[str, Tuple[Step, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, 'combos', frozenset(frozenset(c) for c in self.combos))

    @property
    def local_squares(self) -> FrozenSet[Square]:
        names = set(self.interiors)
        for port in self.ports:
            names |= port.pair
        return frozenset(names)

    @property
    def variants(self) -> Tuple[str, ...]:
        return tuple(key for key, _ in self.sequences)

    def sequence(self, variant: str) -> Tuple[Step, ...]:
        for key, steps in self.sequences:
            if key == variant:
                return steps
        raise InvalidArgumentError(f"{self.vertex_class.value} has no variant '{variant}'", field='variant')

    def port(self, role: str) -> PortSlot:
        for port in self.ports:
            if port.edge_role == role:
                return port
        raise InvalidArgumentError(f"{self.vertex_class.value} has no port '{role}'", field='role')

    def port_of(self, square: Square) -> Optional[PortSlot]:
        for port in self.ports:
            if square in port.joint_names:
                return port
        return None

    @property
    def in_ports(self) -> List[PortSlot]:
        return [p for p in self.ports if p.direction is PortDirection.IN]

    @property
    def out_ports(self) -> List[PortSlot]:
        return [p for p in self.ports if p.direction is PortDirection.OUT]

    def hypergraph(self) -> Hypergraph:
        return Hypergraph(self.local_squares, self.combos)

    def entry_claims(self, variant: str) -> FrozenSet[Square]:
        """Maker's squares in the gadget at the moment it becomes active"""
        if self.vertex_class is VertexClass.B01:
            return frozenset()
        if self.vertex_class in MERGE_CLASSES:
            role = variant.split("-", 1)[1]
            return self.port(role).pair
        return self.port("a").pair

    def exit_role(self, variant: str) -> str:
        """The outgoing port whose joints Maker owns after the sequence"""
        if self.vertex_class in CHOICE_CLASSES:
            return variant.split("-", 1)[1]
        return self.out_ports[0].edge_role


def builtin_sequences(cls: VertexClass) -> Dict[str, Tuple[Step, ...]]:
    """Regular-play square orders; every sequence starts on Maker's turn and alternates"""
    orders = {
        VertexClass.M12: {
            "choose-b": ["x1", "x2", "p_b", "x3", "q_b", "x5"],
            "choose-c": ["x2", "x1", "p_c", "x4", "q_c", "x5"],
        },
        VertexClass.B12: {
            "choose-b": ["x1", "x3", "p_b", "x2", "q_b", "x4"],
            "choose-c": ["x1", "x2", "p_c", "x3", "q_c", "x4"],
        },
        VertexClass.M21: {
            "enter-a": ["p_c", "x1", "q_c", "x2"],
            "enter-b": ["q_c", "x1", "p_c", "x3"],
        },
        VertexClass.B21: {
            "enter-a": ["p_c", "x1", "q_c", "x2"],
            "enter-b": ["q_c", "x1", "p_c", "x2"],
        },
        VertexClass.N11: {"only": ["p_b", "x1", "q_b", "x2"]},
        VertexClass.B01: {"only": ["p_a", "x1", "q_a", "x2"]},
    }[cls]
    return {
        key: tuple((Turn.MAKER if i % 2 == 0 else Turn.BREAKER, sq) for i, sq in enumerate(order))
        for key, order in orders.items()
    }


def standard_ports(cls: VertexClass) -> Tuple[PortSlot, ...]:
    return tuple(
        PortSlot(role, direction, (joint("p", role), joint("q", role)))
        for role, direction in SIGNATURES[cls]
    )


def standard_interiors(cls: VertexClass) -> Tuple[Square, ...]:
    return tuple(f"x{i}" for i in range(1, cls.interior_count + 1))


def make_spec(cls: VertexClass, combos: Iterable[Iterable[Square]]) -> GadgetSpec:
    """A spec with canonical names, ports and the built-in sequences"""
    return GadgetSpec(
        vertex_class=cls,
        interiors=standard_interiors(cls),
        ports=standard_ports(cls),
        combos=frozenset(frozenset(c) for c in combos),
        sequences=tuple(builtin_sequences(cls).items()),
    )


def joint_pairing(spec: GadgetSpec) -> Pairing:
    return Pairing(frozenset(port.pair for port in spec.ports))


def local_position(spec: GadgetSpec, maker: Iterable[Square] = (), breaker: Iterable[Square] = (),
                   to_move: Turn = Turn.MAKER) -> Position:
    return Position(spec.hypergraph(), frozenset(maker), frozenset(breaker), to_move)


def single_claim_piece(spec: GadgetSpec, p: Square) -> Pairing:
    """
    Puzzle piece for a gadget where Maker holds only ``p``.

    Interior p: the joint pairing. Joint p of port e': the other ports'
    joint pairs plus one class-specific pair.
    """
    if spec.vertex_class is VertexClass.B01:
        raise InvalidArgumentError("the start gadget has no single-claim piece", field='vertex_class')
    if p not in spec.local_squares:
        raise InvalidArgumentError(f"{p} is not a square of the gadget", field='p')
    port = spec.port_of(p)
    if port is None:
        return joint_pairing(spec)
    cstar = [other.pair for other in spec.ports if other is not port]
    (q,) = port.pair - {p}
    cls = spec.vertex_class
    if port.direction is PortDirection.IN:
        cstar.append(frozenset((q, "x1")))
        if cls is VertexClass.M12:
            cstar.append(frozenset(("x2", "x4")))
    elif cls is VertexClass.B12:
        cstar.append(frozenset(("x1", "x4")))
    elif cls is VertexClass.M12:
        cstar.append(frozenset(("x1", "x5") if port.edge_role == "b" else ("x2", "x5")))
    return Pairing(frozenset(cstar))


def piece_trait_violations(
    restricted: GameSpec,
    ports: Sequence[Tuple[FrozenSet[Square], PortDirection]],
    pairing: Pairing,
) -> List[str]:
    """
    Names of the puzzle-piece traits that ``pairing`` breaks.

    Args:
        restricted: the restriction of a position to one gadget
        ports: (joint pair, direction) for every port of the gadget
        pairing: candidate piece
    """
    broken = []
    if not pairing.covered <= restricted.squares:
        broken.append("pairs-on-unclaimed")
    if not is_complete_pairing(pairing, restricted):
        broken.append("complete")
    for pair, direction in ports:
        alive = pair & restricted.squares
        if alive == pair and pair not in pairing.pairs:
            broken.append("joint-pairs")
        if direction is PortDirection.OUT and alive != pair and alive & pairing.covered:
            broken.append("half-claimed-output")
    return sorted(set(broken))


def regular_squares(spec: GadgetSpec, variant: Optional[str], cursor: int) -> FrozenSet[Square]:
    """Maker's regular square(s); an undecided choice yields both first squares"""
    if variant is None:
        return frozenset(spec.sequence(v)[cursor][1] for v in spec.variants)
    return frozenset({spec.sequence(variant)[cursor][1]})


def star_form(spec: GadgetSpec, variant: Optional[str]) -> bool:
    """Maker has two regular squares (undecided choice of a Maker choice class)"""
    return spec.vertex_class is VertexClass.M12 and variant is None


def double_star_form(spec: GadgetSpec) -> bool:
    return spec.vertex_class is VertexClass.B12


def shares_combo(spec: GadgetSpec, a: Square, b: Square) -> bool:
    return any(a in c and b in c for c in spec.combos)


def subverted_port(spec: GadgetSpec, variant: Optional[str], cursor: int) -> Optional[PortSlot]:
    """
    For a Breaker choice gadget after the decision, the port Breaker did not pick.

    Before the decision (cursor 0) there is nothing to subvert.
    """
    if not double_star_form(spec) or variant is None or cursor == 0:
        return None
    chosen = spec.exit_role(variant)
    return next(p for p in spec.out_ports if p.edge_role != chosen)


def subversion_interior(spec: GadgetSpec, port: PortSlot, unclaimed: Iterable[Square]) -> Square:
    """The unclaimed interior sharing a combo with both joints of ``port``"""
    unclaimed = frozenset(unclaimed)
    for x in spec.interiors:
        if x in unclaimed and any(port.pair | {x} <= c for c in spec.combos):
            return x
    raise InvalidLibraryError(
        f"{spec.vertex_class.value} has no interior guarding port {port.edge_role}"
    )


def local_breaker_reply(spec: GadgetSpec, variant: Optional[str], cursor: int,
                        p: Optional[Square], unclaimed: Iterable[Square]) -> Square:
    """
    Breaker's answer to a Maker deviation while this gadget is active.

    Args:
        spec: the active gadget
        variant: chosen variant, None while a choice is pending
        cursor: index of Maker's regular move in the sequence
        p: Maker's deviation in local names, None when it lies outside the gadget
        unclaimed: local squares unclaimed before the deviation
    """
    regular = regular_squares(spec, variant, cursor)
    if star_form(spec, variant):
        ordered = sorted_squares(regular)
        if p is not None:
            sharing = [r for r in ordered if shares_combo(spec, p, r)]
            if len(sharing) == 1:
                return sharing[0]
        return ordered[0]
    port = subverted_port(spec, variant, cursor)
    if port is not None and p is not None and p in port.joint_names:
        return subversion_interior(spec, port, unclaimed)
    (square,) = regular
    return square


def star_piece(spec: GadgetSpec, q: Square, unclaimed: Iterable[Square]) -> Pairing:
    """
    Piece for the two-option form after Breaker took regular square ``q``.

    Pairs the other option q' with the interior that shares combos only
    with q', and keeps the joint pair of the port on q''s side.
    """
    unclaimed = frozenset(unclaimed)
    (other,) = regular_squares(spec, None, 0) - {q}
    near_other = set()
    for combo in spec.combos:
        if other in combo and q not in combo:
            near_other |= combo
    near_q = set()
    for combo in spec.combos:
        if q in combo:
            near_q |= combo
    only_other = (near_other - near_q - {other}) & unclaimed
    port = next(p for p in spec.out_ports if p.pair <= only_other)
    interior = next(x for x in spec.interiors if x in only_other)
    return Pairing.of(port.joint_names, (interior, other))


def minimality_witnesses(spec: GadgetSpec) -> Dict[str, bool]:
    """For each port, whether dropping its pair leaves a combo unblocked"""
    full = joint_pairing(spec)
    out = {}
    for port in spec.ports:
        reduced = Pairing(full.pairs - {port.pair})
        out[port.edge_role] = any(not pairing_blocks(reduced, c) for c in spec.combos)
    return out


def residual(spec: GadgetSpec, maker: Iterable[Square], breaker: Iterable[Square]) -> GameSpec:
    return reduce_position(local_position(spec, maker, breaker))
