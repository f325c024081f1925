"""
Exhaustive Maker-Breaker solver.

Games are searched on bitmasks over a fixed square order. A node is the
residual game: live combos minus Maker's squares, broken combos dropped,
supersets of other live combos dropped. Squares outside every live combo
never matter, since an extra square never hurts its owner.

Prunings, all exact:
    Maker to move with a singleton combo wins at once
    Breaker facing two distinct singletons loses; facing one he must block it
    Maker to move with a mate in two wins
    potential sum_F 2^-|F| below 1/2 (Maker to move) or 1 (Breaker) means Breaker wins
    a complete pairing of the residual means Breaker wins
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from mbgg.config import SolverConfig, get_config
from mbgg.errors import InvalidArgumentError, MBGGError
from mbgg.game.hypergraph import (
    GameSpec,
    Position,
    Square,
    Turn,
    apply_moves,
    connected_components,
    maker_has_won,
    reduce_position,
    sorted_squares,
)
from mbgg.game.pairing import (
    Pairing,
    PairingSearchExhausted,
    is_complete_pairing,
    search_pairing_masks,
)
from mbgg.logging import get_logger
from mbgg.solver.transposition import TranspositionTable, transposition_key

logger = get_logger(__name__)


class Outcome(str, Enum):
    MAKER = "maker"
    BREAKER = "breaker"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SolveLimits:
    max_nodes: int = 5_000_000
    max_seconds: float = 600.0
    memo_entries: int = 2_000_000
    pairing_budget: int = 2_000  # 0 disables the built-in pairing search
    threads: int = 1

    @classmethod
    def from_config(cls, config: Optional[SolverConfig] = None) -> "SolveLimits":
        config = config or get_config().solver
        return cls(
            max_nodes=config.max_nodes,
            max_seconds=config.max_seconds,
            memo_entries=config.memo_entries,
            pairing_budget=config.pairing_search_budget,
            threads=config.threads,
        )


Certificate = Union[Pairing, Tuple[Square, ...]]


@dataclass(frozen=True)
class SolveResult:
    outcome: Outcome
    nodes: int
    seconds: float
    to_move: Turn = Turn.MAKER
    principal_line: Tuple[Square, ...] = ()
    certificate: Optional[Certificate] = None  # complete pairing (Breaker) or winning line (Maker)
    memo_hits: int = 0

    @property
    def winner(self) -> Optional[Turn]:
        if self.outcome is Outcome.INCONCLUSIVE:
            return None
        return Turn(self.outcome.value)

    @property
    def conclusive(self) -> bool:
        return self.outcome is not Outcome.INCONCLUSIVE

    def render(self) -> str:
        return f"winner={self.outcome.value} nodes={self.nodes} line={','.join(self.principal_line)}"


class _LimitReached(Exception):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _low_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _normalize(masks) -> Tuple[int, ...]:
    """Drop duplicates and supersets, then sort"""
    kept: List[int] = []
    for m in sorted(set(masks), key=_popcount):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


def _after_maker(combos: Tuple[int, ...], bit: int) -> Tuple[int, ...]:
    return _normalize(c & ~bit for c in combos)


def _after_breaker(combos: Tuple[int, ...], bit: int) -> Tuple[int, ...]:
    return tuple(c for c in combos if not c & bit)


def _double_threat(combos: Tuple[int, ...]) -> Optional[int]:
    """A pivot square lying in two 2-combos, as a square index"""
    seen = 0
    for c in combos:
        if _popcount(c) != 2:
            continue
        for bit in (c & -c, c & (c - 1)):
            if seen & bit:
                return _low_index(bit)
            seen |= bit
    return None


def _potential_breaker_win(combos: Tuple[int, ...], maker_to_move: bool) -> bool:
    top = max(_popcount(c) for c in combos)
    total = sum(1 << (top - _popcount(c)) for c in combos)
    scale = 1 << top
    return total * 2 < scale if maker_to_move else total < scale


class _Search:
    def __init__(self, limits: SolveLimits, table: Optional[TranspositionTable]):
        self.limits = limits
        self.table = table
        self.nodes = 0
        self.deadline = time.monotonic() + limits.max_seconds

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limits.max_nodes:
            raise _LimitReached()
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _LimitReached()

    def pairing(self, combos: Tuple[int, ...]) -> Optional[List[int]]:
        if self.limits.pairing_budget <= 0:
            return None
        try:
            return search_pairing_masks(combos, self.limits.pairing_budget)
        except PairingSearchExhausted:
            return None

    def ordered_moves(self, combos: Tuple[int, ...]) -> List[int]:
        top = max(_popcount(c) for c in combos)
        weight: Dict[int, int] = {}
        for c in combos:
            w = 1 << (top - _popcount(c))
            rest = c
            while rest:
                low = rest & -rest
                i = low.bit_length() - 1
                weight[i] = weight.get(i, 0) + w
                rest ^= low
        return sorted(weight, key=lambda i: (-weight[i], i))

    def solve(self, combos: Tuple[int, ...], maker_to_move: bool) -> Tuple[bool, Optional[int]]:
        """(Maker wins, best move) for a normalized residual game"""
        self.tick()
        if not combos:
            return False, None
        key = transposition_key(combos, maker_to_move)
        if self.table is not None:
            entry = self.table.lookup(key)
            if entry is not None:
                return entry.maker_wins, entry.best_move
        before = self.nodes
        result = self._expand(combos, maker_to_move)
        if self.table is not None:
            self.table.store(key, result[0], self.nodes - before, result[1])
        return result

    def _expand(self, combos: Tuple[int, ...], maker_to_move: bool) -> Tuple[bool, Optional[int]]:
        singles = 0
        for c in combos:
            if c & (c - 1) == 0:
                singles |= c
        if maker_to_move:
            if singles:
                return True, _low_index(singles)
            pivot = _double_threat(combos)
            if pivot is not None:
                return True, pivot
        elif singles:
            block = singles & -singles
            if singles != block:
                return True, _low_index(singles)
            maker_wins, _ = self.solve(_after_breaker(combos, block), True)
            return maker_wins, _low_index(block)

        if _potential_breaker_win(combos, maker_to_move):
            return False, None
        if maker_to_move and self.pairing(combos) is not None:
            return False, None

        moves = self.ordered_moves(combos)
        if maker_to_move:
            for i in moves:
                if self.solve(_after_maker(combos, 1 << i), False)[0]:
                    return True, i
            return False, moves[0]
        for i in moves:
            if not self.solve(_after_breaker(combos, 1 << i), True)[0]:
                return False, i
        return True, moves[0]

    def principal_line(self, combos: Tuple[int, ...], maker_to_move: bool, limit: int) -> Tuple[List[int], bool]:
        """Best moves from the table; the flag says whether the line ends with Maker completing a combo"""
        line: List[int] = []
        while combos and len(line) < limit:
            singles = 0
            for c in combos:
                if c & (c - 1) == 0:
                    singles |= c
            if maker_to_move and singles:
                line.append(_low_index(singles))
                return line, True
            move = self.table.best_move(transposition_key(combos, maker_to_move)) if self.table else None
            if move is None:
                move = _double_threat(combos) if maker_to_move else (_low_index(singles) if singles else None)
            if move is None:
                break
            line.append(move)
            bit = 1 << move
            combos = _after_maker(combos, bit) if maker_to_move else _after_breaker(combos, bit)
            maker_to_move = not maker_to_move
        return line, False


def _index_game(reduced: GameSpec) -> Tuple[List[Square], Tuple[int, ...]]:
    live = set()
    for combo in reduced.combos:
        live |= combo
    order = sorted_squares(live)
    index = {s: i for i, s in enumerate(order)}
    masks = []
    for combo in reduced.combos:
        mask = 0
        for s in combo:
            mask |= 1 << index[s]
        masks.append(mask)
    return order, _normalize(masks)


def _pairing_from_masks(order: Sequence[Square], masks: Sequence[int]) -> Pairing:
    pairs = []
    for m in masks:
        a = _low_index(m)
        b = _low_index(m & (m - 1))
        pairs.append((order[a], order[b]))
    return Pairing.of(*pairs)


def _solve_root(combos: Tuple[int, ...], maker_to_move: bool, limits: SolveLimits,
                use_memo: bool, memo_entries: int) -> Tuple[Optional[bool], List[int], bool, int, int]:
    """(Maker wins or None when cut off, line, line completes a combo, nodes, memo hits)"""
    table = TranspositionTable(memo_entries) if use_memo else None
    search = _Search(limits, table)
    try:
        maker_wins, best = search.solve(combos, maker_to_move)
    except _LimitReached:
        return None, [], False, search.nodes, table.hits if table else 0
    if table is not None:
        line, completes = search.principal_line(combos, maker_to_move, limit=2 * max(len(combos), 1) + 64)
    else:
        line, completes = ([best] if best is not None else []), False
    return maker_wins, line, completes, search.nodes, table.hits if table else 0


def _solve_parallel(combos: Tuple[int, ...], maker_to_move: bool, limits: SolveLimits,
                    use_memo: bool) -> Tuple[Optional[bool], List[int], bool, int, int]:
    """Root moves split across threads, each with a private table"""
    scout = _Search(limits, None)
    moves = scout.ordered_moves(combos)
    memo = max(limits.memo_entries // limits.threads, 1024)

    def child(i: int):
        bit = 1 << i
        if maker_to_move:
            nxt = _after_maker(combos, bit)
            if any(c == 0 for c in nxt):
                return True, [], True, 1, 0
        else:
            nxt = _after_breaker(combos, bit)
        return _solve_root(nxt, not maker_to_move, limits, use_memo, memo)

    with ThreadPoolExecutor(max_workers=limits.threads) as pool:
        results = list(pool.map(child, moves))

    nodes = sum(r[3] for r in results) + 1
    hits = sum(r[4] for r in results)
    want = maker_to_move  # the mover wins if some child is a win for them
    unknown = False
    for i, (maker_wins, line, completes, _, _) in zip(moves, results):
        if maker_wins is None:
            unknown = True
        elif maker_wins == want:
            return maker_wins, [i] + line, completes, nodes, hits
    if unknown:
        return None, [], False, nodes, hits
    first_line = results[0][1]
    return not want, [moves[0]] + first_line, results[0][2], nodes, hits


def solve_mb(
    game: Union[GameSpec, Position],
    limits: Optional[SolveLimits] = None,
    certificate: Optional[Pairing] = None,
    use_memo: bool = True,
) -> SolveResult:
    """
    Decide the winner of a Maker-Breaker game or position.

    Args:
        game: a game (nothing claimed) or a position in progress
        limits: node, time and memory limits; defaults come from the config
        certificate: a pairing to try first; if it is complete Breaker wins at once
        use_memo: False runs the plain search, used as an independent oracle

    Returns:
        SolveResult; exhausted limits give an inconclusive outcome.
    """
    limits = limits or SolveLimits.from_config()
    pos = game if isinstance(game, Position) else Position.fresh(game)
    started = time.perf_counter()
    to_move = pos.to_move

    def done(outcome: Outcome, nodes: int, line: Sequence[Square] = (), cert: Optional[Certificate] = None,
             hits: int = 0) -> SolveResult:
        result = SolveResult(outcome, nodes, time.perf_counter() - started, to_move, tuple(line), cert, hits)
        logger.debug("mb_solved", winner=outcome.value, nodes=nodes, seconds=round(result.seconds, 3),
                     squares=len(pos.unclaimed))
        return result

    if maker_has_won(pos):
        return done(Outcome.MAKER, 0, cert=())
    reduced = reduce_position(pos)
    if certificate is not None and is_complete_pairing(certificate, reduced):
        return done(Outcome.BREAKER, 0, cert=certificate)

    order, combos = _index_game(reduced)
    if not combos:
        return done(Outcome.BREAKER, 1, cert=Pairing.empty())
    if limits.pairing_budget > 0:
        try:
            found = search_pairing_masks(combos, limits.pairing_budget)
        except PairingSearchExhausted:
            found = None
        if found is not None:
            return done(Outcome.BREAKER, 1, cert=_pairing_from_masks(order, found))

    maker_to_move = to_move is Turn.MAKER
    if limits.threads > 1 and len(combos) > 1:
        maker_wins, line, completes, nodes, hits = _solve_parallel(combos, maker_to_move, limits, use_memo)
    else:
        maker_wins, line, completes, nodes, hits = _solve_root(
            combos, maker_to_move, limits, use_memo, limits.memo_entries)
    if maker_wins is None:
        return done(Outcome.INCONCLUSIVE, nodes, hits=hits)
    squares = tuple(order[i] for i in line)
    if maker_wins:
        return done(Outcome.MAKER, nodes, squares, squares if completes else None, hits)
    return done(Outcome.BREAKER, nodes, squares, None, hits)


def certificate_valid(game: Union[GameSpec, Position], result: SolveResult) -> bool:
    """Check a result's certificate on its own: pairing completeness, or a legal line that completes a combo"""
    pos = game if isinstance(game, Position) else Position.fresh(game)
    cert = result.certificate
    if cert is None:
        return False
    if isinstance(cert, Pairing):
        return result.outcome is Outcome.BREAKER and is_complete_pairing(cert, reduce_position(pos))
    try:
        end = apply_moves(pos, cert)
    except MBGGError:
        return False
    return result.outcome is Outcome.MAKER and maker_has_won(end)


def solve_components(game: GameSpec, limits: Optional[SolveLimits] = None) -> SolveResult:
    """
    Solve a fresh game one connected component at a time.

    Maker, moving first, wins the whole game exactly when she wins some
    component moving first there.

    Raises:
        InvalidArgumentError: Breaker is to move
    """
    if game.to_move is not Turn.MAKER:
        raise InvalidArgumentError("component splitting needs Maker to move first", field='game')
    limits = limits or SolveLimits.from_config()
    started = time.perf_counter()
    nodes = 0
    unknown = False
    pairs = set()
    certified = True
    for component in connected_components(game.hypergraph):
        if not component.combos:
            continue
        result = solve_mb(GameSpec(component, Turn.MAKER), limits)
        nodes += result.nodes
        if result.outcome is Outcome.MAKER:
            return SolveResult(Outcome.MAKER, nodes, time.perf_counter() - started, Turn.MAKER,
                               result.principal_line, result.certificate)
        if result.outcome is Outcome.INCONCLUSIVE:
            unknown = True
        elif isinstance(result.certificate, Pairing):
            pairs |= result.certificate.pairs
        else:
            certified = False
    seconds = time.perf_counter() - started
    if unknown:
        return SolveResult(Outcome.INCONCLUSIVE, nodes, seconds)
    cert = Pairing(frozenset(pairs)) if certified else None
    return SolveResult(Outcome.BREAKER, nodes, seconds, Turn.MAKER, (), cert)
