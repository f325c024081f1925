"""
GG text format.

    start <vertex>
    edge <from> <to>
"""

from pathlib import Path
from typing import List, Optional, Tuple, Union

from mbgg.errors import MBGGError, ParseError
from mbgg.game.mbh_format import strip_comment
from mbgg.geography.digraph import Digraph, GGInstance


def load_gg(text: str, path: Optional[str] = None) -> GGInstance:
    start = None
    arcs: List[Tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "start":
            if len(tokens) != 1:
                raise ParseError("start takes one vertex", line=lineno, path=path)
            if start is not None:
                raise ParseError("start given twice", line=lineno, path=path)
            start = tokens[0]
        elif keyword == "edge":
            if len(tokens) != 2:
                raise ParseError("edge takes two vertices", line=lineno, path=path)
            if tokens[0] == tokens[1]:
                raise ParseError(f"self-loop at {tokens[0]}", line=lineno, path=path)
            if tuple(tokens) in arcs:
                raise ParseError(f"duplicate edge {tokens[0]} {tokens[1]}", line=lineno, path=path)
            arcs.append((tokens[0], tokens[1]))
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line=lineno, path=path)
    if start is None:
        raise ParseError("missing start line", path=path)
    try:
        return GGInstance(Digraph.from_arcs(arcs, [start]), start)
    except MBGGError as e:
        raise ParseError(e.message, path=path)


def read_gg(path: Union[str, Path]) -> GGInstance:
    return load_gg(Path(path).read_text(encoding="utf-8"), path=str(path))


def dump_gg(inst: GGInstance) -> str:
    lines = [f"start {inst.start}"]
    lines += [f"edge {u} {w}" for u, w in inst.graph.ordered_arcs()]
    return "\n".join(lines) + "\n"
