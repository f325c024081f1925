"""Padding every combo to size five with fresh squares"""

from typing import List

from mbgg.errors import InvalidArgumentError
from mbgg.game.hypergraph import Combo, GameSpec, Hypergraph, combo_key, rank
from mbgg.logging import get_logger

logger = get_logger(__name__)

TARGET_SIZE = 5


def uniformize5(g: GameSpec) -> GameSpec:
    """
    Make ``g`` 5-uniform.

    A combo F with |F| < 5 is replaced by F + {y} and F + {z} for two fresh
    squares, repeatedly, so it turns into 2^(5-|F|) combos over
    2 * (2^(5-|F|) - 1) new squares. Combos are processed smallest first;
    fresh squares are named u5#1, u5#2, ...
    """
    if rank(g.hypergraph) > TARGET_SIZE:
        raise InvalidArgumentError(f"combo larger than {TARGET_SIZE}", field='combos')
    if any(not c for c in g.combos):
        raise InvalidArgumentError("empty combo cannot be padded", field='combos')

    taken = set(g.squares)
    counter = 0

    def fresh() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"u5#{counter}"
            if name not in taken:
                taken.add(name)
                return name

    def pad(combo: Combo, out: List[Combo]) -> None:
        if len(combo) == TARGET_SIZE:
            out.append(combo)
            return
        y, z = fresh(), fresh()
        pad(combo | {y}, out)
        pad(combo | {z}, out)

    padded: List[Combo] = []
    for combo in sorted(g.combos, key=lambda c: (len(c), combo_key(c))):
        pad(frozenset(combo), padded)
    logger.debug("uniformized", combos_in=len(g.combos), combos_out=len(padded), fresh=counter)
    return GameSpec(Hypergraph(frozenset(taken), frozenset(padded)), g.to_move)
