"""
Gadget library files.

    gadget M12
    interior x1 x2 x3 x4 x5
    port in a p_a q_a
    port out b p_b q_b
    combo x1 x2 p_a q_a
    seq choose-b M:x1 B:x2 M:p_b B:x3 M:q_b B:x5
"""

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Union

from mbgg.config import get_config
from mbgg.errors import InvalidLibraryError, ParseError
from mbgg.game.hypergraph import Turn, combo_key, sorted_squares
from mbgg.game.mbh_format import strip_comment
from mbgg.gadgets.spec import GadgetSpec, PortDirection, PortSlot, Step
from mbgg.geography.digraph import VertexClass
from mbgg.logging import get_logger

logger = get_logger(__name__)

DEFAULT_LIBRARY = "default.gadgets"


@dataclass(frozen=True)
class GadgetLibrary:
    specs: Dict[VertexClass, GadgetSpec] = field(default_factory=dict)

    def require(self, cls: VertexClass) -> GadgetSpec:
        spec = self.specs.get(cls)
        if spec is None:
            raise InvalidLibraryError(f"library has no gadget for {cls.value}", details={'class': cls.value})
        return spec

    def missing(self) -> List[VertexClass]:
        return [cls for cls in VertexClass if cls not in self.specs]

    def replace(self, spec: GadgetSpec) -> "GadgetLibrary":
        specs = dict(self.specs)
        specs[spec.vertex_class] = spec
        return GadgetLibrary(specs)


class _SpecBuilder:
    def __init__(self, cls: VertexClass, line: int):
        self.cls = cls
        self.line = line
        self.interiors: List[str] = []
        self.ports: List[PortSlot] = []
        self.combos: List[frozenset] = []
        self.sequences: List[tuple] = []

    def build(self) -> GadgetSpec:
        return GadgetSpec(
            vertex_class=self.cls,
            interiors=tuple(self.interiors),
            ports=tuple(self.ports),
            combos=frozenset(self.combos),
            sequences=tuple(self.sequences),
        )


def _parse_step(token: str, lineno: int, path: Optional[str]) -> Step:
    mover, sep, square = token.partition(":")
    if not sep or mover not in ("M", "B") or not square:
        raise ParseError(f"bad sequence step '{token}'", line=lineno, path=path)
    return (Turn.MAKER if mover == "M" else Turn.BREAKER, square)


def parse_library(text: str, path: Optional[str] = None) -> GadgetLibrary:
    specs: Dict[VertexClass, GadgetSpec] = {}
    current: Optional[_SpecBuilder] = None

    def flush():
        if current is not None:
            specs[current.cls] = current.build()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "gadget":
            if len(tokens) != 1:
                raise ParseError("gadget takes a class name", line=lineno, path=path)
            try:
                cls = VertexClass(tokens[0])
            except ValueError:
                raise ParseError(f"unknown vertex class '{tokens[0]}'", line=lineno, path=path)
            if cls in specs or (current is not None and current.cls is cls):
                raise ParseError(f"gadget {cls.value} defined twice", line=lineno, path=path)
            flush()
            current = _SpecBuilder(cls, lineno)
            continue
        if current is None:
            raise ParseError(f"'{keyword}' before any gadget line", line=lineno, path=path)
        if keyword == "interior":
            current.interiors.extend(tokens)
        elif keyword == "port":
            if len(tokens) != 4 or tokens[0] not in ("in", "out"):
                raise ParseError("port takes: in|out <role> <p> <q>", line=lineno, path=path)
            current.ports.append(PortSlot(tokens[1], PortDirection(tokens[0]), (tokens[2], tokens[3])))
        elif keyword == "combo":
            if not tokens:
                raise ParseError("empty combo", line=lineno, path=path)
            current.combos.append(frozenset(tokens))
        elif keyword == "seq":
            if len(tokens) < 2:
                raise ParseError("seq takes a variant and steps", line=lineno, path=path)
            steps = tuple(_parse_step(t, lineno, path) for t in tokens[1:])
            current.sequences.append((tokens[0], steps))
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line=lineno, path=path)
    flush()
    return GadgetLibrary(specs)


def dump_spec(spec: GadgetSpec) -> str:
    lines = [f"gadget {spec.vertex_class.value}", "interior " + " ".join(spec.interiors)]
    for port in spec.ports:
        lines.append(f"port {port.direction.value} {port.edge_role} {port.p} {port.q}")
    for combo in sorted(spec.combos, key=combo_key):
        lines.append("combo " + " ".join(sorted_squares(combo)))
    for key, steps in spec.sequences:
        moves = " ".join(f"{'M' if mover is Turn.MAKER else 'B'}:{sq}" for mover, sq in steps)
        lines.append(f"seq {key} {moves}")
    return "\n".join(lines) + "\n"


def dump_library(lib: GadgetLibrary) -> str:
    return "\n".join(dump_spec(lib.specs[cls]) for cls in VertexClass if cls in lib.specs)


def read_library(path: Union[str, Path]) -> GadgetLibrary:
    return parse_library(Path(path).read_text(encoding="utf-8"), path=str(path))


def default_library_text() -> str:
    return resources.files("mbgg.gadgets").joinpath("data", DEFAULT_LIBRARY).read_text(encoding="utf-8")


def load_library(path: Optional[Union[str, Path]] = None) -> GadgetLibrary:
    """
    Load a gadget library.

    Precedence: explicit path, then the configured path (MBGG_GADGET_LIB),
    then the packaged default.
    """
    path = path or get_config().gadgets.library_path
    if path:
        logger.debug("gadget_library_loaded", path=str(path))
        return read_library(path)
    return parse_library(default_library_text(), path=DEFAULT_LIBRARY)
