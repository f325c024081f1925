"""
Transposition table for the exhaustive solvers.

Keys are canonical residual games: the live combo bitmasks over the fixed
square order, supersets removed, sorted, plus the side to move. Two
positions with the same residual have the same winner, so equal positions
always share a key.
"""

from dataclasses import dataclass
from threading import Lock
from typing import Dict, Iterable, Optional, Tuple

TTKey = Tuple[Tuple[int, ...], bool]


def transposition_key(combos: Iterable[int], maker_to_move: bool) -> TTKey:
    return tuple(sorted(combos)), maker_to_move


@dataclass(slots=True)
class TTEntry:
    maker_wins: bool
    work: int  # nodes spent below this entry; bigger entries survive replacement
    best_move: Optional[int]  # square index, None at terminal cutoffs


class TranspositionTable:
    """Bounded store of solved residual games."""

    def __init__(self, max_size: int = 1_000_000):
        self.max_size = max_size
        self.table: Dict[TTKey, TTEntry] = {}
        self.hits = 0
        self._lock = Lock()

    def lookup(self, key: TTKey) -> Optional[TTEntry]:
        entry = self.table.get(key)
        if entry is not None:
            self.hits += 1
        return entry

    def best_move(self, key: TTKey) -> Optional[int]:
        entry = self.table.get(key)
        return entry.best_move if entry else None

    def store(self, key: TTKey, maker_wins: bool, work: int, best_move: Optional[int]) -> None:
        with self._lock:
            existing = self.table.get(key)
            if existing is not None and existing.work > work:
                return
            if existing is None and len(self.table) >= self.max_size:
                self._evict()
            self.table[key] = TTEntry(maker_wins, work, best_move)

    def _evict(self) -> None:
        # drop the cheapest of the oldest few entries
        oldest = []
        for key in self.table:
            oldest.append(key)
            if len(oldest) == 8:
                break
        victim = min(oldest, key=lambda k: self.table[k].work)
        del self.table[victim]

    def clear(self) -> None:
        self.table.clear()
        self.hits = 0

    def __len__(self) -> int:
        return len(self.table)
