"""
MBH text format: one Maker-Breaker game per file.

    turn maker|breaker
    combo <sq> <sq> ...
    maker <sq> ...
    breaker <sq> ...
    square <sq> ...
"""

import re
from pathlib import Path
from typing import List, Set, Union

from mbgg.errors import MBGGError, ParseError
from mbgg.game.hypergraph import GameSpec, Hypergraph, Position, Turn, sorted_squares

# a comment starts at a token beginning with '#'; square names may contain '#'
_COMMENT = re.compile(r"(?:^|\s)#.*$")


def strip_comment(raw: str) -> str:
    return _COMMENT.sub("", raw).strip()


def load_mbh(text: str, path: str = None) -> Position:
    turn = Turn.MAKER
    combos: List[frozenset] = []
    maker: Set[str] = set()
    breaker: Set[str] = set()
    declared: Set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "turn":
            if len(tokens) != 1 or tokens[0] not in ("maker", "breaker"):
                raise ParseError("turn must be 'maker' or 'breaker'", line=lineno, path=path)
            turn = Turn(tokens[0])
        elif keyword == "combo":
            if not tokens:
                raise ParseError("empty combo", line=lineno, path=path)
            combos.append(frozenset(tokens))
        elif keyword == "maker":
            maker.update(tokens)
        elif keyword == "breaker":
            breaker.update(tokens)
        elif keyword == "square":
            declared.update(tokens)
        else:
            raise ParseError(f"unknown keyword '{keyword}'", line=lineno, path=path)
    squares = declared | maker | breaker
    for combo in combos:
        squares |= combo
    try:
        return Position(Hypergraph(frozenset(squares), frozenset(combos)), maker, breaker, turn)
    except MBGGError as e:
        raise ParseError(e.message, path=path)


def read_mbh(path: Union[str, Path]) -> Position:
    return load_mbh(Path(path).read_text(encoding="utf-8"), path=str(path))


def dump_mbh(game: Union[GameSpec, Position]) -> str:
    if isinstance(game, GameSpec):
        game = Position.fresh(game)
    h = game.hypergraph
    lines = [f"turn {game.to_move.value}"]
    in_combos = set()
    for combo in h.ordered_combos():
        in_combos |= combo
        lines.append("combo " + " ".join(sorted_squares(combo)))
    if game.maker_set:
        lines.append("maker " + " ".join(sorted_squares(game.maker_set)))
    if game.breaker_set:
        lines.append("breaker " + " ".join(sorted_squares(game.breaker_set)))
    isolated = h.squares - in_combos - game.maker_set - game.breaker_set
    if isolated:
        lines.append("square " + " ".join(sorted_squares(isolated)))
    return "\n".join(lines) + "\n"
