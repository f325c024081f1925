"""
Pairings and pairing strategies.

A complete pairing is Breaker's win certificate: whenever Maker claims one
square of a pair, Breaker answers with the other.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from mbgg.errors import InvalidArgumentError
from mbgg.game.hypergraph import (
    GameSpec,
    Position,
    Square,
    Turn,
    apply_move,
    combo_key,
    maker_has_won,
    sorted_squares,
    square_key,
)
from mbgg.logging import get_logger

logger = get_logger(__name__)

FREE_CHOICE = "free-choice"


@dataclass(frozen=True)
class Pairing:
    """Pairwise disjoint two-square sets"""
    pairs: FrozenSet[FrozenSet[Square]]

    def __post_init__(self):
        pairs = frozenset(frozenset(p) for p in self.pairs)
        seen = set()
        for pair in pairs:
            if len(pair) != 2:
                raise InvalidArgumentError(f"pair {sorted_squares(pair)} does not have two squares", field='pairs')
            if pair & seen:
                raise InvalidArgumentError(
                    "pairs overlap",
                    field='pairs',
                    details={'squares': sorted_squares(pair & seen)}
                )
            seen |= pair
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def of(cls, *pairs: Iterable[Square]) -> "Pairing":
        return cls(frozenset(frozenset(p) for p in pairs))

    @classmethod
    def empty(cls) -> "Pairing":
        return cls(frozenset())

    @property
    def covered(self) -> FrozenSet[Square]:
        out = set()
        for pair in self.pairs:
            out |= pair
        return frozenset(out)

    def partner(self, square: Square) -> Optional[Square]:
        for pair in self.pairs:
            if square in pair:
                (other,) = pair - {square}
                return other
        return None

    def union(self, other: "Pairing") -> "Pairing":
        return Pairing(self.pairs | other.pairs)

    def without(self, squares: Iterable[Square]) -> "Pairing":
        """Drop every pair touching one of ``squares``"""
        drop = frozenset(squares)
        return Pairing(frozenset(p for p in self.pairs if not p & drop))

    def ordered(self) -> List[Tuple[Square, Square]]:
        pairs = [tuple(sorted_squares(p)) for p in self.pairs]
        return sorted(pairs, key=lambda p: (square_key(p[0]), square_key(p[1])))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self) -> str:
        return " ".join("{" + ",".join(p) + "}" for p in self.ordered())


def pairing_blocks(c: Pairing, combo: Iterable[Square]) -> bool:
    combo = frozenset(combo)
    return any(pair <= combo for pair in c.pairs)


def is_complete_pairing(c: Pairing, g: GameSpec) -> bool:
    return all(pairing_blocks(c, combo) for combo in g.combos)


def unblocked_combos(c: Pairing, g: GameSpec) -> List[FrozenSet[Square]]:
    return sorted((combo for combo in g.combos if not pairing_blocks(c, combo)), key=combo_key)


def pairing_strategy_reply(c: Pairing, maker_move: Square, claimed: Iterable[Square]) -> Union[Square, str]:
    """
    Breaker's answer to ``maker_move``.

    Returns the partner square, or ``FREE_CHOICE`` when the move is unpaired
    or its partner is gone.
    """
    claimed = frozenset(claimed)
    partner = c.partner(maker_move)
    if partner is None or partner in claimed:
        return FREE_CHOICE
    return partner


def pairing_strategy_play(c: Pairing, p: Position, maker_moves: Sequence[Square]) -> Position:
    """
    Play Maker's moves against the pairing strategy.

    Breaker's free choices take the smallest unclaimed square. Unusable Maker
    moves (already claimed) end the play-out.
    """
    if p.to_move is not Turn.MAKER:
        raise InvalidArgumentError("pairing play-outs start on Maker's turn", field='position')
    for move in maker_moves:
        if move not in p.unclaimed:
            break
        p = apply_move(p, move)
        if maker_has_won(p) or not p.unclaimed:
            break
        reply = pairing_strategy_reply(c, move, p.claimed)
        if reply == FREE_CHOICE:
            reply = min(p.unclaimed, key=square_key)
        p = apply_move(p, reply)
    return p


class PairingSearchExhausted(Exception):
    """Internal: the pairing search ran out of budget"""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def search_pairing_masks(
    combos: Sequence[int],
    budget: int,
    used: int = 0,
    seed_pairs: Sequence[int] = (),
) -> Optional[List[int]]:
    """
    Backtracking search for pair masks that block every combo mask.

    Args:
        combos: combo bitmasks that must each contain a chosen pair
        budget: maximum number of search nodes
        used: squares that no pair may cover
        seed_pairs: pairs that are fixed in advance

    Returns:
        The chosen pair masks, or None when no pairing exists.

    Raises:
        PairingSearchExhausted: budget ran out before an answer was found
    """
    nodes = 0
    for pair in seed_pairs:
        used |= pair
    remaining = [c for c in combos if not any(pm & c == pm for pm in seed_pairs)]

    def rec(remaining: List[int], used: int, chosen: List[int]) -> Optional[List[int]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise PairingSearchExhausted()
        if not remaining:
            return chosen
        best, best_free, best_options = None, 0, None
        for combo in remaining:
            free = combo & ~used
            k = _popcount(free)
            if k < 2:
                return None
            options = k * (k - 1) // 2
            if best_options is None or options < best_options:
                best, best_free, best_options = combo, free, options
                if options == 1:
                    break
        bits = []
        free = best_free
        while free:
            low = free & -free
            bits.append(low)
            free ^= low
        for i in range(len(bits)):
            for j in range(i + 1, len(bits)):
                pair = bits[i] | bits[j]
                rest = [c for c in remaining if c & pair != pair]
                found = rec(rest, used | pair, chosen + [pair])
                if found is not None:
                    return found
        return None

    found = rec(remaining, used, [])
    if found is None:
        return None
    return list(seed_pairs) + found


def find_complete_pairing(
    g: GameSpec,
    budget: int = 10_000,
    required: Optional[Pairing] = None,
    forbidden: Iterable[Square] = (),
) -> Optional[Pairing]:
    """
    Search for a complete pairing of ``g``.

    Args:
        g: the game (usually a reduced position)
        budget: search node budget
        required: pairs that must be part of the answer
        forbidden: squares the answer must not cover

    Returns:
        A complete pairing, or None when none exists or the budget ran out.
    """
    order = sorted_squares(g.squares)
    index: Dict[Square, int] = {s: i for i, s in enumerate(order)}
    masks = []
    for combo in g.combos:
        mask = 0
        for s in combo:
            mask |= 1 << index[s]
        masks.append(mask)
    forbidden_mask = 0
    for s in forbidden:
        if s in index:
            forbidden_mask |= 1 << index[s]
    seeds = []
    for pair in (required.pairs if required else ()):
        if not pair <= g.squares:
            return None
        mask = 0
        for s in pair:
            mask |= 1 << index[s]
        if mask & forbidden_mask:
            return None
        seeds.append(mask)
    try:
        found = search_pairing_masks(masks, budget, used=forbidden_mask, seed_pairs=seeds)
    except PairingSearchExhausted:
        logger.debug("pairing_search_exhausted", budget=budget, combos=len(masks))
        return None
    if found is None:
        return None
    pairs = []
    for mask in found:
        pairs.append(frozenset(order[i] for i in range(len(order)) if mask >> i & 1))
    return Pairing(frozenset(pairs))
