"""
Generalized Geography arena and rules.

Marks alternate starting with Alice: the start vertex is mark 0 (Alice's),
so Bob makes the first real move. Under the original rules a player with no
unmarked out-neighbour loses; under the revised rules a player may step onto
a marked vertex and loses by doing so.
"""

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from mbgg.errors import InvalidArgumentError, InvalidInstanceError, NotBipartiteError
from mbgg.game.hypergraph import sorted_squares, square_key
from mbgg.logging import get_logger
from mbgg.reports import Report

logger = get_logger(__name__)

Vertex = str
Arc = Tuple[Vertex, Vertex]


class Player(str, Enum):
    ALICE = "alice"
    BOB = "bob"

    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


class Ruleset(str, Enum):
    ORIGINAL = "original"
    REVISED = "revised"


class VertexClass(str, Enum):
    """The six vertex classes of a convertible instance"""
    M12 = "M12"
    M21 = "M21"
    B12 = "B12"
    B21 = "B21"
    N11 = "N11"
    B01 = "B01"

    @property
    def interior_count(self) -> int:
        return _INTERIORS[self]


_INTERIORS = {
    VertexClass.M12: 5,
    VertexClass.B12: 4,
    VertexClass.M21: 3,
    VertexClass.B21: 2,
    VertexClass.N11: 2,
    VertexClass.B01: 2,
}


def arc_name(arc: Arc) -> str:
    return f"{arc[0]}->{arc[1]}"


@dataclass(frozen=True)
class Digraph:
    vertices: FrozenSet[Vertex]
    arcs: FrozenSet[Arc]

    def __post_init__(self):
        object.__setattr__(self, 'vertices', frozenset(self.vertices))
        object.__setattr__(self, 'arcs', frozenset(tuple(a) for a in self.arcs))
        for u, w in self.arcs:
            if u not in self.vertices or w not in self.vertices:
                raise InvalidArgumentError(f"arc {u}->{w} leaves the vertex set", field='arcs')
            if u == w:
                raise InvalidArgumentError(f"self-loop at {u}", field='arcs')

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc], vertices: Iterable[Vertex] = ()) -> "Digraph":
        arcs = frozenset(tuple(a) for a in arcs)
        vs = set(vertices)
        for u, w in arcs:
            vs.update((u, w))
        return cls(frozenset(vs), arcs)

    def ordered_vertices(self) -> List[Vertex]:
        return sorted_squares(self.vertices)

    def ordered_arcs(self) -> List[Arc]:
        return sorted(self.arcs, key=lambda a: (square_key(a[0]), square_key(a[1])))

    def out_arcs(self, v: Vertex) -> List[Arc]:
        return sorted((a for a in self.arcs if a[0] == v), key=lambda a: square_key(a[1]))

    def in_arcs(self, v: Vertex) -> List[Arc]:
        return sorted((a for a in self.arcs if a[1] == v), key=lambda a: square_key(a[0]))

    def out_neighbors(self, v: Vertex) -> List[Vertex]:
        return [w for _, w in self.out_arcs(v)]

    def in_neighbors(self, v: Vertex) -> List[Vertex]:
        return [u for u, _ in self.in_arcs(v)]

    def out_degree(self, v: Vertex) -> int:
        return sum(1 for a in self.arcs if a[0] == v)

    def in_degree(self, v: Vertex) -> int:
        return sum(1 for a in self.arcs if a[1] == v)

    def degree(self, v: Vertex) -> int:
        return self.out_degree(v) + self.in_degree(v)

    def undirected_neighbors(self) -> Dict[Vertex, List[Vertex]]:
        adj: Dict[Vertex, List[Vertex]] = {v: [] for v in self.vertices}
        for u, w in self.ordered_arcs():
            adj[u].append(w)
            adj[w].append(u)
        return adj

    def is_weakly_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = self.undirected_neighbors()
        first = min(self.vertices, key=square_key)
        seen = {first}
        queue = deque([first])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class GGInstance:
    graph: Digraph
    start: Vertex

    def __post_init__(self):
        if self.start not in self.graph.vertices:
            raise InvalidInstanceError("start vertex is not in the graph", vertex=self.start)
        if not self.graph.is_weakly_connected():
            raise InvalidInstanceError("graph is not weakly connected")


@dataclass(frozen=True)
class GGState:
    marked: Tuple[Vertex, ...] = ()
    ruleset: Ruleset = Ruleset.ORIGINAL

    @classmethod
    def initial(cls, inst: GGInstance, ruleset: Ruleset = Ruleset.ORIGINAL) -> "GGState":
        return cls((inst.start,), ruleset)

    @property
    def to_move(self) -> Player:
        """Mark i (0-based) belongs to Alice when i is even"""
        return Player.ALICE if len(self.marked) % 2 == 0 else Player.BOB

    @property
    def revisited(self) -> bool:
        return len(self.marked) > 1 and self.marked[-1] in self.marked[:-1]


@dataclass(frozen=True)
class Bipartition:
    side_a: FrozenSet[Vertex]
    side_b: FrozenSet[Vertex]

    def side_of(self, v: Vertex) -> str:
        return "A" if v in self.side_a else "B"


def _check_state(inst: GGInstance, st: GGState) -> None:
    marked = st.marked
    if not marked:
        return
    if marked[0] != inst.start:
        raise InvalidArgumentError("first mark must be the start vertex", field='marked')
    for u, w in zip(marked, marked[1:]):
        if (u, w) not in inst.graph.arcs:
            raise InvalidArgumentError(f"no arc {u}->{w}", field='marked')
    body = marked[:-1] if st.ruleset is Ruleset.REVISED else marked
    if len(set(body)) != len(body):
        raise InvalidArgumentError("a vertex is marked twice", field='marked')


def legal_moves_gg(inst: GGInstance, st: GGState) -> FrozenSet[Vertex]:
    _check_state(inst, st)
    if not st.marked:
        return frozenset({inst.start})
    if st.ruleset is Ruleset.REVISED and st.revisited:
        return frozenset()
    succ = inst.graph.out_neighbors(st.marked[-1])
    if st.ruleset is Ruleset.ORIGINAL:
        return frozenset(w for w in succ if w not in st.marked)
    return frozenset(succ)


def mark(inst: GGInstance, st: GGState, v: Vertex) -> GGState:
    if v not in legal_moves_gg(inst, st):
        raise InvalidArgumentError(f"{v} cannot be marked now", field='vertex')
    return GGState(st.marked + (v,), st.ruleset)


def gg_loser_on_move(inst: GGInstance, st: GGState) -> Player:
    """The loser of a finished game; raises when play can continue"""
    _check_state(inst, st)
    if st.ruleset is Ruleset.REVISED and st.revisited:
        # the revisiting mark was made by the player before the one on move
        return st.to_move.other()
    if st.marked and not [w for w in inst.graph.out_neighbors(st.marked[-1]) if w not in st.marked]:
        # stuck, or under revised rules forced to revisit
        return st.to_move
    raise InvalidArgumentError("game is not over", field='state')


def bipartition_from_start(inst: GGInstance) -> Bipartition:
    """The unique 2-colouring with the start vertex on side B"""
    adj = inst.graph.undirected_neighbors()
    color = {inst.start: "B"}
    queue = deque([inst.start])
    while queue:
        u = queue.popleft()
        flip = "A" if color[u] == "B" else "B"
        for w in adj[u]:
            if w not in color:
                color[w] = flip
                queue.append(w)
            elif color[w] == color[u]:
                raise NotBipartiteError(
                    f"odd cycle through {u} and {w}", details={'edge': [u, w]}
                )
    return Bipartition(
        side_a=frozenset(v for v, c in color.items() if c == "A"),
        side_b=frozenset(v for v, c in color.items() if c == "B"),
    )


def validate_convertible(inst: GGInstance, require_planar: bool = False,
                         allow_start_out_two: bool = False) -> Report:
    """
    Check the degree and colouring constraints of a convertible instance.

    Args:
        inst: the instance
        require_planar: also check planarity
        allow_start_out_two: accept a start of out-degree 2 (before normalization)

    Returns:
        Report with one check per clause.
    """
    g = inst.graph
    report = Report(title="convertible instance")
    report.counters['vertices'] = len(g.vertices)
    report.counters['arcs'] = len(g.arcs)

    try:
        bipartition_from_start(inst)
        report.add("bipartite", True)
    except NotBipartiteError as e:
        report.add("bipartite", False, e.message)
    report.add("weakly-connected", g.is_weakly_connected())

    heavy = [v for v in g.ordered_vertices() if g.degree(v) > 3]
    report.add("degree-bound", not heavy, f"|delta| > 3 at {heavy}" if heavy else "")

    bad = [
        v for v in g.ordered_vertices()
        if v != inst.start and (g.in_degree(v) not in (1, 2) or g.out_degree(v) not in (1, 2))
    ]
    report.add("inner-degrees", not bad, f"in/out degree outside {{1,2}} at {bad}" if bad else "")

    allowed = (1, 2) if allow_start_out_two else (1,)
    s_ok = g.in_degree(inst.start) == 0 and g.out_degree(inst.start) in allowed
    report.add(
        "start-degrees", s_ok,
        "" if s_ok else f"start has in {g.in_degree(inst.start)}, out {g.out_degree(inst.start)}"
    )

    if require_planar:
        import networkx as nx

        nxg = nx.Graph()
        nxg.add_nodes_from(g.vertices)
        nxg.add_edges_from(g.arcs)
        planar, _ = nx.check_planarity(nxg)
        report.add("planar", planar)
    return report


def _fresh_name(base: Vertex, taken: Iterable[Vertex]) -> Vertex:
    taken = set(taken)
    name = base
    n = 0
    while name in taken:
        n += 1
        name = f"{base}_{n}"
    return name


def normalize_start(inst: GGInstance) -> GGInstance:
    """Give the start vertex out-degree 1 by routing it through two fresh vertices"""
    g = inst.graph
    s = inst.start
    out = g.out_degree(s)
    if out == 1:
        return inst
    if out != 2:
        raise InvalidArgumentError(f"start out-degree {out} cannot be normalized", field='start')
    x1 = _fresh_name("x1", g.vertices)
    x2 = _fresh_name("x2", set(g.vertices) | {x1})
    v, w = g.out_neighbors(s)
    arcs = set(g.arcs) - {(s, v), (s, w)}
    arcs |= {(s, x1), (x1, x2), (x2, v), (x2, w)}
    logger.debug("start_normalized", start=s, added=[x1, x2])
    return GGInstance(Digraph(g.vertices | {x1, x2}, frozenset(arcs)), s)


def classify_vertex(inst: GGInstance, bip: Bipartition, v: Vertex) -> VertexClass:
    g = inst.graph
    d_in, d_out = g.in_degree(v), g.out_degree(v)
    if v == inst.start:
        if v in bip.side_b and (d_in, d_out) == (0, 1):
            return VertexClass.B01
    elif (d_in, d_out) == (1, 1):
        return VertexClass.N11
    elif v in bip.side_a:
        if (d_in, d_out) == (1, 2):
            return VertexClass.M12
        if (d_in, d_out) == (2, 1):
            return VertexClass.M21
    elif (d_in, d_out) == (1, 2):
        return VertexClass.B12
    elif (d_in, d_out) == (2, 1):
        return VertexClass.B21
    raise InvalidInstanceError(
        f"vertex {v} (side {bip.side_of(v)}, in {d_in}, out {d_out}) fits no class", vertex=v
    )


def classify_all(inst: GGInstance, bip: Optional[Bipartition] = None) -> Dict[Vertex, VertexClass]:
    bip = bip or bipartition_from_start(inst)
    return {v: classify_vertex(inst, bip, v) for v in inst.graph.ordered_vertices()}


def luxembourg_line() -> GGInstance:
    """The country chain Luxembourg, Germany, Yemen, Norway as a path"""
    names = ["Luxembourg", "Germany", "Yemen", "Norway"]
    return GGInstance(Digraph.from_arcs(zip(names, names[1:])), names[0])
