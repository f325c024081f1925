"""
Puzzle piece pairings: per-vertex pairings whose union is a complete
pairing of the whole position.

A piece C(v) for the restriction of a position to v's gadget must
    1. be complete on the restriction,
    2. contain {p_e, q_e} for every incident arc e with both joints unclaimed,
    3. cover no joint of an outgoing arc that has lost one of its joints.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

from mbgg.errors import InvalidArgumentError, InvalidLibraryError, InvalidPiecesError
from mbgg.game.hypergraph import Position, Square, sorted_squares
from mbgg.game.pairing import Pairing, find_complete_pairing
from mbgg.gadgets.spec import PortDirection, piece_trait_violations, single_claim_piece
from mbgg.geography.digraph import Vertex
from mbgg.logging import get_logger
from mbgg.reduction.associated import AssociatedGame, restrict

logger = get_logger(__name__)


@dataclass(frozen=True)
class PuzzlePiecePairing:
    vertex: Vertex
    pairing: Pairing
    source: str = "construction"


def lift(g: AssociatedGame, v: Vertex, local: Pairing) -> Pairing:
    """Local pairs of v's gadget in global squares"""
    return Pairing(frozenset(g.map.globalize(v, pair) for pair in local.pairs))


def vertex_ports(g: AssociatedGame, v: Vertex) -> List[Tuple[FrozenSet[Square], PortDirection]]:
    spec = g.gadget(v)
    return [
        (frozenset(g.map.arc_joints[g.map.port_roles[v][port.edge_role]]), port.direction)
        for port in spec.ports
    ]


def trait_pairs(g: AssociatedGame, v: Vertex, pos: Position) -> Pairing:
    """Joint pairs of incident arcs that are fully unclaimed"""
    return Pairing(frozenset(pair for pair, _ in vertex_ports(g, v) if pair <= pos.unclaimed))


def half_claimed_outputs(g: AssociatedGame, v: Vertex, pos: Position) -> FrozenSet[Square]:
    """Surviving joints of outgoing arcs that lost their other joint"""
    out = set()
    for pair, direction in vertex_ports(g, v):
        alive = pair & pos.unclaimed
        if direction is PortDirection.OUT and alive != pair:
            out |= alive
    return frozenset(out)


def piece_violations(g: AssociatedGame, v: Vertex, pos: Position, pairing: Pairing) -> List[str]:
    return piece_trait_violations(restrict(pos, v, g.map), vertex_ports(g, v), pairing)


def drop_claimed(pairing: Pairing, pos: Position) -> Pairing:
    """Pairs touching a claimed square go; combos through Breaker's squares are broken anyway"""
    return pairing.without(pos.claimed)


def puzzle_piece_pairing(g: AssociatedGame, v: Vertex, p: Square, pos: Position) -> PuzzlePiecePairing:
    """
    The single-claim piece of v when Maker holds only ``p`` there.

    Raises:
        InvalidArgumentError: v is the start vertex or the claims at v are not exactly {p} for Maker
        InvalidLibraryError: the gadget's construction breaks a trait
    """
    if v == g.instance.start:
        raise InvalidArgumentError("the start vertex has no single-claim piece", field='v')
    own = g.map.vertex_squares(v)
    if own & pos.maker_set != {p} or own & pos.breaker_set:
        raise InvalidArgumentError(f"Maker must hold exactly {p} at {v} and Breaker nothing", field='pos')
    local = g.map.to_local(v, p)
    pairing = lift(g, v, single_claim_piece(g.gadget(v), local))
    broken = piece_violations(g, v, pos, pairing)
    if broken:
        raise InvalidLibraryError(
            f"single-claim piece of {v} for {p} breaks {broken}",
            details={'vertex': v, 'square': p},
        )
    return PuzzlePiecePairing(v, pairing, "single-claim")


def search_piece(g: AssociatedGame, v: Vertex, pos: Position, budget: int = 5_000) -> Optional[Pairing]:
    """Any pairing with the three traits, by bounded search"""
    required = trait_pairs(g, v, pos)
    return find_complete_pairing(
        restrict(pos, v, g.map),
        budget=budget,
        required=required,
        forbidden=half_claimed_outputs(g, v, pos),
    )


def union_pairing(pieces: Mapping[Vertex, Union[PuzzlePiecePairing, Pairing]]) -> Pairing:
    """
    Union of per-vertex pieces; a joint pair named by both endpoints counts once.

    Raises:
        InvalidPiecesError: two different pairs share a square
    """
    pairs = set()
    for piece in pieces.values():
        pairing = piece.pairing if isinstance(piece, PuzzlePiecePairing) else piece
        pairs |= pairing.pairs
    seen: Dict[Square, FrozenSet[Square]] = {}
    for pair in pairs:
        for square in pair:
            if square in seen:
                raise InvalidPiecesError(
                    f"{square} is covered by {sorted_squares(seen[square])} and {sorted_squares(pair)}",
                    details={'square': square},
                )
            seen[square] = pair
    return Pairing(frozenset(pairs))
