"""Geography instance to Maker-Breaker game"""

from mbgg.reduction.associated import (
    AssociatedGame,
    ReductionMap,
    build_associated_game,
    global_joint_pairing,
    interior_name,
    joint_names,
    read_map,
    restrict,
    restrict_local,
    write_map,
)
from mbgg.reduction.uniform import uniformize5

__all__ = [
    "AssociatedGame",
    "ReductionMap",
    "build_associated_game",
    "global_joint_pairing",
    "interior_name",
    "joint_names",
    "read_map",
    "restrict",
    "restrict_local",
    "write_map",
    "uniformize5",
]
