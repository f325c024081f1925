"""Small named games used as fixtures and CLI samples."""

from mbgg.errors import InvalidArgumentError
from mbgg.game.hypergraph import GameSpec, Turn
from mbgg.game.pairing import Pairing

# squares 1..9 row by row
TIC_TAC_TOE_LINES = (
    (1, 2, 3), (4, 5, 6), (7, 8, 9),
    (1, 4, 7), (2, 5, 8), (3, 6, 9),
    (1, 5, 9), (3, 5, 7),
)


def tic_tac_toe() -> GameSpec:
    return GameSpec.from_combos(
        [[str(s) for s in line] for line in TIC_TAC_TOE_LINES], Turn.MAKER
    )


def path_family(n: int) -> GameSpec:
    """Squares 1..n, combos are the windows {k-1, k, k+1}"""
    if n < 3:
        raise InvalidArgumentError("path family needs n >= 3", field='n')
    combos = [[str(k - 1), str(k), str(k + 1)] for k in range(2, n)]
    return GameSpec.from_combos(combos, Turn.MAKER)


def path_pairing(n: int) -> Pairing:
    """{1,2}, {3,4}, ... blocks every window"""
    if n < 3:
        raise InvalidArgumentError("path family needs n >= 3", field='n')
    return Pairing.of(*[(str(i), str(i + 1)) for i in range(1, n, 2)])
