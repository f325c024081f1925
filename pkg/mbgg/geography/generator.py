"""
Random and exhaustive sources of convertible instances.

Both work on degree types: the start has (in 0, out k), every other vertex
is (1,1), (1,2) or (2,1). Out-stubs on one side are matched to in-stubs on
the other side, which keeps every arc between the colour classes.
"""

from itertools import combinations_with_replacement, permutations, product
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from mbgg.errors import GenerationError, InvalidArgumentError, InvalidInstanceError
from mbgg.geography.digraph import Digraph, GGInstance, validate_convertible
from mbgg.logging import get_logger

logger = get_logger(__name__)

START = "s"
INNER_TYPES = ((1, 1), (1, 2), (2, 1))

Degrees = Tuple[int, int]


def _stubs(vertices: Sequence[str], degrees: Dict[str, Degrees], which: int) -> List[str]:
    return [v for v in vertices for _ in range(degrees[v][which])]


def _build(degrees: Dict[str, Degrees], sides: Dict[str, str],
           a_targets: Sequence[str], b_targets: Sequence[str]) -> Optional[GGInstance]:
    names = list(degrees)
    side_a = [v for v in names if sides[v] == "A"]
    side_b = [v for v in names if sides[v] == "B"]
    arcs = list(zip(_stubs(side_a, degrees, 1), a_targets))
    arcs += list(zip(_stubs(side_b, degrees, 1), b_targets))
    if len(set(arcs)) != len(arcs):
        return None
    try:
        return GGInstance(Digraph.from_arcs(arcs, names), START)
    except InvalidInstanceError:
        return None


def _sample(rng: np.random.Generator, n: int, start_out: int) -> Optional[GGInstance]:
    inner = n - 1
    max12 = (inner - start_out) // 2
    if max12 < 0:
        return None
    k12 = int(rng.integers(0, max12 + 1))
    k21 = k12 + start_out
    k11 = inner - k12 - k21
    types = [(1, 2)] * k12 + [(2, 1)] * k21 + [(1, 1)] * k11
    order = rng.permutation(inner)
    degrees: Dict[str, Degrees] = {START: (0, start_out)}
    sides = {START: "B"}
    coins = rng.integers(0, 2, size=inner)
    for i in range(inner):
        name = f"v{i + 1}"
        degrees[name] = types[int(order[i])]
        sides[name] = "A" if coins[i] else "B"

    names = list(degrees)
    in_a = _stubs([v for v in names if sides[v] == "A"], degrees, 0)
    in_b = _stubs([v for v in names if sides[v] == "B"], degrees, 0)
    out_a = _stubs([v for v in names if sides[v] == "A"], degrees, 1)
    if len(out_a) != len(in_b):
        return None
    a_targets = [in_b[int(i)] for i in rng.permutation(len(in_b))]
    b_targets = [in_a[int(i)] for i in rng.permutation(len(in_a))]
    return _build(degrees, sides, a_targets, b_targets)


def gen_convertible(vertex_budget: int, seed: int = 0, start_out_degree: int = 1,
                    max_attempts: int = 5_000) -> GGInstance:
    """
    Draw a random convertible instance with at most ``vertex_budget`` vertices.

    Args:
        vertex_budget: maximum number of vertices (at least 3)
        seed: seed for the private random stream
        start_out_degree: 1 for convertible output, 2 for pre-normalization input
        max_attempts: rejection-sampling retries

    Returns:
        GGInstance passing validate_convertible.
    """
    if start_out_degree not in (1, 2):
        raise InvalidArgumentError("start out-degree must be 1 or 2", field='start_out_degree')
    low = 3 if start_out_degree == 1 else 4
    if vertex_budget < low:
        raise GenerationError(f"vertex budget {vertex_budget} is below {low}", attempts=0)
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        n = int(rng.integers(low, vertex_budget + 1))
        inst = _sample(rng, n, start_out_degree)
        if inst is None:
            continue
        if validate_convertible(inst, allow_start_out_two=start_out_degree == 2).passed:
            logger.debug("instance_generated", seed=seed, attempts=attempt,
                         vertices=len(inst.graph.vertices))
            return inst
    raise GenerationError(
        f"no instance within {vertex_budget} vertices after {max_attempts} attempts",
        attempts=max_attempts,
    )


def canonical_form(inst: GGInstance) -> Tuple:
    """Smallest relabelled arc list over all relabellings that fix the start"""
    others = [v for v in inst.graph.ordered_vertices() if v != inst.start]
    best = None
    for perm in permutations(range(1, len(others) + 1)):
        label = {inst.start: 0}
        label.update(zip(others, perm))
        arcs = tuple(sorted((label[u], label[w]) for u, w in inst.graph.arcs))
        if best is None or arcs < best:
            best = arcs
    return (len(others) + 1, best)


def _matchings(sources: List[str], targets: List[str]) -> Set[Tuple[str, ...]]:
    if len(sources) != len(targets):
        return set()
    return set(permutations(targets))


def enumerate_convertible(max_vertices: int, start_out_degree: int = 1) -> List[GGInstance]:
    """Every convertible instance up to isomorphism fixing the start"""
    found: Dict[Tuple, GGInstance] = {}
    options = [(t, side) for t in INNER_TYPES for side in ("A", "B")]
    for n in range(2, max_vertices + 1):
        inner = n - 1
        for assignment in combinations_with_replacement(options, inner):
            degrees: Dict[str, Degrees] = {START: (0, start_out_degree)}
            sides = {START: "B"}
            for i, (t, side) in enumerate(assignment):
                degrees[f"v{i + 1}"] = t
                sides[f"v{i + 1}"] = side
            if sum(d[1] for d in degrees.values()) != sum(d[0] for d in degrees.values()):
                continue
            names = list(degrees)
            side_a = [v for v in names if sides[v] == "A"]
            side_b = [v for v in names if sides[v] == "B"]
            a_options = _matchings(_stubs(side_a, degrees, 1), _stubs(side_b, degrees, 0))
            b_options = _matchings(_stubs(side_b, degrees, 1), _stubs(side_a, degrees, 0))
            for a_targets, b_targets in product(sorted(a_options), sorted(b_options)):
                inst = _build(degrees, sides, a_targets, b_targets)
                if inst is None:
                    continue
                if not validate_convertible(inst, allow_start_out_two=start_out_degree == 2).passed:
                    continue
                key = canonical_form(inst)
                if key not in found:
                    found[key] = inst
    logger.info("instances_enumerated", max_vertices=max_vertices, count=len(found))
    return [found[k] for k in sorted(found)]
