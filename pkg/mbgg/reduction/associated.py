"""
The Maker-Breaker game associated with a convertible Geography instance.

One gadget per vertex; the joint squares of an arc are shared by the
gadgets of both endpoints. Global names:

    u->w#p, u->w#q   joint squares of arc (u, w)
    v.x3             interior x3 of v's gadget
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from mbgg.errors import InvalidArgumentError, InvalidInstanceError, ParseError
from mbgg.game.hypergraph import GameSpec, Hypergraph, Position, Square, Turn, sorted_squares, square_key
from mbgg.game.mbh_format import strip_comment
from mbgg.game.pairing import Pairing
from mbgg.gadgets.library import GadgetLibrary
from mbgg.gadgets.spec import GadgetSpec, PortDirection
from mbgg.geography.digraph import (
    Arc,
    Bipartition,
    GGInstance,
    Vertex,
    VertexClass,
    arc_name,
    bipartition_from_start,
    classify_all,
    validate_convertible,
)
from mbgg.logging import get_logger

logger = get_logger(__name__)


def joint_names(arc: Arc) -> Tuple[Square, Square]:
    base = arc_name(arc)
    return f"{base}#p", f"{base}#q"


def interior_name(v: Vertex, local: str) -> Square:
    return f"{v}.{local}"


@dataclass
class ReductionMap:
    """Local gadget names to global squares, per vertex"""
    local_to_global: Dict[Vertex, Dict[str, Square]] = field(default_factory=dict)
    arc_joints: Dict[Arc, Tuple[Square, Square]] = field(default_factory=dict)
    owners: Dict[Square, Tuple[Vertex, ...]] = field(default_factory=dict)
    port_roles: Dict[Vertex, Dict[str, Arc]] = field(default_factory=dict)
    vertex_combos: Dict[Vertex, FrozenSet[FrozenSet[Square]]] = field(default_factory=dict)
    operation_count: int = 0

    def to_global(self, v: Vertex, local: str) -> Square:
        try:
            return self.local_to_global[v][local]
        except KeyError:
            raise InvalidArgumentError(f"vertex {v} has no local square {local}", field='local')

    def to_local(self, v: Vertex, square: Square) -> Optional[str]:
        for local, glob in self.local_to_global.get(v, {}).items():
            if glob == square:
                return local
        return None

    def localize(self, v: Vertex, squares: Iterable[Square]) -> FrozenSet[str]:
        """Local names of those ``squares`` that belong to v's gadget"""
        inverse = {glob: local for local, glob in self.local_to_global[v].items()}
        return frozenset(inverse[s] for s in squares if s in inverse)

    def globalize(self, v: Vertex, locals_: Iterable[str]) -> FrozenSet[Square]:
        return frozenset(self.to_global(v, name) for name in locals_)

    def vertex_squares(self, v: Vertex) -> FrozenSet[Square]:
        if v not in self.local_to_global:
            raise InvalidArgumentError(f"unknown vertex {v}", field='vertex')
        return frozenset(self.local_to_global[v].values())

    def role_of_arc(self, v: Vertex, arc: Arc) -> str:
        for role, a in self.port_roles[v].items():
            if a == arc:
                return role
        raise InvalidArgumentError(f"arc {arc_name(arc)} is not incident to {v}", field='arc')

    def arc_of_joint(self, square: Square) -> Optional[Arc]:
        for arc, pair in self.arc_joints.items():
            if square in pair:
                return arc
        return None


@dataclass(frozen=True)
class AssociatedGame:
    spec: GameSpec
    map: ReductionMap
    instance: GGInstance
    library: GadgetLibrary
    bipartition: Bipartition
    classes: Dict[Vertex, VertexClass]

    def gadget(self, v: Vertex) -> GadgetSpec:
        return self.library.require(self.classes[v])

    def fresh_position(self) -> Position:
        return Position.fresh(self.spec)


def _assign_roles(inst: GGInstance, v: Vertex, gadget: GadgetSpec) -> Dict[str, Arc]:
    ins = inst.graph.in_arcs(v)
    outs = inst.graph.out_arcs(v)
    in_roles = [p.edge_role for p in gadget.in_ports]
    out_roles = [p.edge_role for p in gadget.out_ports]
    if len(ins) != len(in_roles) or len(outs) != len(out_roles):
        raise InvalidInstanceError(f"degrees of {v} do not match gadget {gadget.vertex_class.value}", vertex=v)
    roles = dict(zip(in_roles, ins))
    roles.update(zip(out_roles, outs))
    return roles


def build_associated_game(inst: GGInstance, lib: GadgetLibrary) -> AssociatedGame:
    """
    Compile ``inst`` into its associated Maker-Breaker game.

    Raises:
        InvalidInstanceError: the instance is not convertible
        InvalidLibraryError: the library lacks a gadget for a needed class
    """
    report = validate_convertible(inst)
    if not report.passed:
        raise InvalidInstanceError(
            "instance is not convertible",
            details={'failures': [f"{c.name}: {c.detail}" for c in report.failures]},
        )
    bip = bipartition_from_start(inst)
    classes = classify_all(inst, bip)
    m = ReductionMap()
    for arc in inst.graph.ordered_arcs():
        m.arc_joints[arc] = joint_names(arc)
        m.operation_count += 1

    combos = set()
    owners: Dict[Square, List[Vertex]] = {}
    for v in inst.graph.ordered_vertices():
        gadget = lib.require(classes[v])
        roles = _assign_roles(inst, v, gadget)
        m.port_roles[v] = roles
        names: Dict[str, Square] = {}
        for port in gadget.ports:
            p, q = m.arc_joints[roles[port.edge_role]]
            names[port.p] = p
            names[port.q] = q
        for x in gadget.interiors:
            names[x] = interior_name(v, x)
        m.local_to_global[v] = names
        for glob in names.values():
            owners.setdefault(glob, []).append(v)
        mapped = frozenset(frozenset(names[s] for s in c) for c in gadget.combos)
        m.vertex_combos[v] = mapped
        combos |= mapped
        m.operation_count += len(names) + len(gadget.combos)
    m.owners = {s: tuple(vs) for s, vs in owners.items()}

    squares = frozenset(m.owners)
    spec = GameSpec(Hypergraph(squares, frozenset(combos)), Turn.MAKER)
    logger.info(
        "associated_game_built",
        vertices=len(inst.graph.vertices),
        arcs=len(inst.graph.arcs),
        squares=len(squares),
        combos=len(combos),
    )
    return AssociatedGame(spec, m, inst, lib, bip, classes)


def restrict(p: Position, v: Vertex, m: ReductionMap) -> GameSpec:
    """The position restricted to v's gadget: unbroken combos minus Maker's squares"""
    own = m.vertex_squares(v)
    combos = frozenset(c - p.maker_set for c in m.vertex_combos[v] if not c & p.breaker_set)
    return GameSpec(Hypergraph(own - p.claimed, combos), p.to_move)


def restrict_local(g: AssociatedGame, p: Position, v: Vertex) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """Maker's and Breaker's squares in v's gadget, in local names"""
    return g.map.localize(v, p.maker_set), g.map.localize(v, p.breaker_set)


def global_joint_pairing(g: AssociatedGame) -> Pairing:
    return Pairing(frozenset(frozenset(pair) for pair in g.map.arc_joints.values()))


def out_port_arc(g: AssociatedGame, v: Vertex, role: str) -> Arc:
    arc = g.map.port_roles[v].get(role)
    if arc is None or g.gadget(v).port(role).direction is not PortDirection.OUT:
        raise InvalidArgumentError(f"{v} has no outgoing port {role}", field='role')
    return arc


def write_map(m: ReductionMap) -> str:
    lines = []
    for arc in sorted(m.arc_joints, key=lambda a: (square_key(a[0]), square_key(a[1]))):
        p, q = m.arc_joints[arc]
        lines.append(f"joint {arc[0]} {arc[1]} {p} {q}")
    for v in sorted_squares(m.local_to_global):
        for role, arc in sorted(m.port_roles.get(v, {}).items()):
            lines.append(f"port {v} {role} {arc[0]} {arc[1]}")
        for local, glob in sorted(m.local_to_global[v].items()):
            if m.arc_of_joint(glob) is None:
                lines.append(f"interior {v} {local} {glob}")
    return "\n".join(lines) + "\n"


def read_map(text: str, path: Optional[str] = None) -> ReductionMap:
    """
    Parse a sidecar map.

    Joint local names are rebuilt from the port lines; per-vertex combos
    are not part of the sidecar and stay empty.
    """
    m = ReductionMap()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        kind, *tokens = line.split()
        if kind == "joint" and len(tokens) == 4:
            m.arc_joints[(tokens[0], tokens[1])] = (tokens[2], tokens[3])
        elif kind == "port" and len(tokens) == 4:
            m.port_roles.setdefault(tokens[0], {})[tokens[1]] = (tokens[2], tokens[3])
        elif kind == "interior" and len(tokens) == 3:
            m.local_to_global.setdefault(tokens[0], {})[tokens[1]] = tokens[2]
        else:
            raise ParseError(f"bad map line '{line}'", line=lineno, path=path)
    owners: Dict[Square, List[Vertex]] = {}
    for v, roles in m.port_roles.items():
        for role, arc in roles.items():
            if arc not in m.arc_joints:
                raise ParseError(f"port {v} {role} names an arc with no joint line", path=path)
            p, q = m.arc_joints[arc]
            m.local_to_global.setdefault(v, {}).update({f"p_{role}": p, f"q_{role}": q})
    for v, names in m.local_to_global.items():
        for glob in names.values():
            owners.setdefault(glob, []).append(v)
    m.owners = {s: tuple(vs) for s, vs in owners.items()}
    return m
