"""
Exhaustive Generalized Geography solver.
"""

import time
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple

from mbgg.geography.digraph import GGInstance, Player, Ruleset, Vertex
from mbgg.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class GGSolveResult:
    winner: Player
    nodes: int
    seconds: float
    ruleset: Ruleset
    principal_line: Tuple[Vertex, ...] = ()

    def render(self) -> str:
        return f"winner={self.winner.value} nodes={self.nodes} line={','.join(self.principal_line)}"


class _GGSearch:
    def __init__(self, inst: GGInstance, ruleset: Ruleset):
        self.inst = inst
        self.ruleset = ruleset
        self.succ = {v: inst.graph.out_neighbors(v) for v in inst.graph.vertices}
        self.memo: Dict[Tuple[FrozenSet[Vertex], Vertex], Tuple[bool, Optional[Vertex]]] = {}
        self.nodes = 0

    def solve(self, marked: FrozenSet[Vertex], last: Vertex) -> Tuple[bool, Optional[Vertex]]:
        """(the player on move wins, a best move)"""
        key = (marked, last)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        fresh = [w for w in self.succ[last] if w not in marked]
        result: Tuple[bool, Optional[Vertex]] = (False, None)
        for w in fresh:
            if not self.solve(marked | {w}, w)[0]:
                result = (True, w)
                break
        else:
            if fresh:
                result = (False, fresh[0])
            elif self.ruleset is Ruleset.REVISED and self.succ[last]:
                # forced onto a marked vertex, which loses
                result = (False, self.succ[last][0])
        self.memo[key] = result
        return result

    def line(self) -> Tuple[Vertex, ...]:
        start = self.inst.start
        line = [start]
        marked = frozenset({start})
        last = start
        while True:
            _, move = self.memo.get((marked, last), (False, None))
            if move is None:
                break
            line.append(move)
            if move in marked:
                break
            marked = marked | {move}
            last = move
        return tuple(line)


def solve_gg(inst: GGInstance, ruleset: Ruleset = Ruleset.REVISED) -> GGSolveResult:
    """
    Winner of Generalized Geography from the start vertex.

    The start is Alice's mark, so Bob moves first from it.
    """
    started = time.perf_counter()
    search = _GGSearch(inst, ruleset)
    bob_wins, _ = search.solve(frozenset({inst.start}), inst.start)
    winner = Player.BOB if bob_wins else Player.ALICE
    result = GGSolveResult(winner, search.nodes, time.perf_counter() - started, ruleset, search.line())
    logger.debug("gg_solved", winner=winner.value, nodes=search.nodes, ruleset=ruleset.value)
    return result
