"""Tests for Maker-Breaker positions, pairings and the MBH text format."""

import unittest

import pytest

from mbgg.errors import InvalidArgumentError, InvalidMoveError, ParseError
from mbgg.game.examples import path_family, path_pairing, tic_tac_toe
from mbgg.game.hypergraph import (
    GameSpec,
    Hypergraph,
    Position,
    Turn,
    apply_move,
    apply_moves,
    connected_components,
    detect_mate_in_one,
    detect_mate_in_two,
    double_threats,
    is_broken,
    is_over,
    maker_has_won,
    rank,
    reduce_position,
    sorted_squares,
    winning_squares,
)
from mbgg.game.mbh_format import dump_mbh, load_mbh, read_mbh, strip_comment
from mbgg.game.pairing import (
    FREE_CHOICE,
    Pairing,
    find_complete_pairing,
    is_complete_pairing,
    pairing_strategy_play,
    pairing_strategy_reply,
    unblocked_combos,
)


class TestHypergraph(unittest.TestCase):
    """Test hypergraphs and positions."""

    def test_natural_square_order(self):
        self.assertEqual(sorted_squares(["10", "9", "x2", "x10", "a"]), ["9", "10", "a", "x2", "x10"])

    def test_combo_outside_squares_rejected(self):
        with self.assertRaises(InvalidArgumentError):
            Hypergraph(frozenset({"a"}), frozenset({frozenset({"a", "b"})}))

    def test_rank(self):
        self.assertEqual(rank(tic_tac_toe().hypergraph), 3)
        self.assertEqual(rank(Hypergraph(frozenset({"a"}), frozenset())), 0)

    def test_overlapping_claims_rejected(self):
        h = tic_tac_toe().hypergraph
        with self.assertRaises(InvalidArgumentError):
            Position(h, {"1"}, {"1"})

    def test_apply_move_alternates(self):
        pos = apply_moves(Position.fresh(tic_tac_toe()), ["5", "1"])
        self.assertEqual(pos.maker_set, frozenset({"5"}))
        self.assertEqual(pos.breaker_set, frozenset({"1"}))
        self.assertIs(pos.to_move, Turn.MAKER)
        self.assertTrue(pos.claims_balanced())

    def test_claimed_square_cannot_be_taken_again(self):
        pos = apply_move(Position.fresh(tic_tac_toe()), "5")
        with self.assertRaises(InvalidMoveError):
            apply_move(pos, "5")
        with self.assertRaises(InvalidMoveError):
            apply_move(pos, "42")

    def test_reduce_position(self):
        """Broken combos vanish and Maker's squares leave the rest."""
        pos = Position(tic_tac_toe().hypergraph, {"1", "9"}, {"5"}, Turn.BREAKER)
        reduced = reduce_position(pos)
        self.assertEqual(len(reduced.combos), 4)
        self.assertIn(frozenset({"2", "3"}), reduced.combos)
        self.assertNotIn("5", reduced.squares)
        self.assertTrue(is_broken({"1", "5", "9"}, pos))

    def test_mate_in_two_after_corner_opening(self):
        """After M:1 B:5 M:9 the pivots are 3 and 7."""
        pos = Position(tic_tac_toe().hypergraph, {"1", "9"}, {"5"}, Turn.BREAKER)
        threats = detect_mate_in_two(reduce_position(pos))
        self.assertEqual(threats, {("3", frozenset({"2", "6"})), ("7", frozenset({"4", "8"}))})
        self.assertEqual(detect_mate_in_one(reduce_position(pos)), frozenset())

    def test_mate_detection_needs_breaker_to_move(self):
        """Threats are read on Breaker's turn; the turn-free helpers take any turn."""
        g = GameSpec.from_combos([["p"], ["a", "b"], ["a", "c"]], Turn.MAKER)
        with self.assertRaises(InvalidArgumentError):
            detect_mate_in_one(g)
        with self.assertRaises(InvalidArgumentError):
            detect_mate_in_two(g)
        self.assertEqual(winning_squares(g), frozenset({"p"}))
        self.assertEqual(double_threats(g), {("a", frozenset({"b", "c"}))})
        breaker = GameSpec(g.hypergraph, Turn.BREAKER)
        self.assertEqual(detect_mate_in_one(breaker), frozenset({"p"}))
        self.assertEqual(detect_mate_in_two(breaker), double_threats(g))

    def test_game_end(self):
        h = tic_tac_toe().hypergraph
        won = Position(h, {"1", "2", "3"}, {"4", "5"})
        self.assertTrue(maker_has_won(won))
        self.assertTrue(is_over(won))
        self.assertFalse(is_over(Position.fresh(tic_tac_toe())))

    def test_components(self):
        g = GameSpec.from_combos([["1", "2"], ["2", "3"], ["a", "b"]], squares=["z"])
        parts = connected_components(g.hypergraph)
        self.assertEqual([sorted_squares(p.squares) for p in parts],
                         [["1", "2", "3"], ["a", "b"], ["z"]])
        self.assertEqual(len(parts[0].combos), 2)
        self.assertEqual(parts[2].combos, frozenset())


class TestPairing(unittest.TestCase):
    """Test pairings and pairing strategies."""

    def test_pairs_must_be_disjoint(self):
        with self.assertRaises(InvalidArgumentError):
            Pairing.of(("a", "b"), ("b", "c"))
        with self.assertRaises(InvalidArgumentError):
            Pairing.of(("a",))

    def test_partner_and_render(self):
        c = Pairing.of(("3", "4"), ("1", "2"))
        self.assertEqual(c.partner("4"), "3")
        self.assertIsNone(c.partner("5"))
        self.assertEqual(str(c), "{1,2} {3,4}")
        self.assertEqual(c.covered, frozenset({"1", "2", "3", "4"}))

    def test_reply(self):
        c = Pairing.of(("1", "2"))
        self.assertEqual(pairing_strategy_reply(c, "1", {"1"}), "2")
        self.assertEqual(pairing_strategy_reply(c, "1", {"1", "2"}), FREE_CHOICE)
        self.assertEqual(pairing_strategy_reply(c, "9", {"9"}), FREE_CHOICE)

    def test_unblocked(self):
        g = path_family(5)
        c = Pairing.of(("1", "2"))
        self.assertEqual(unblocked_combos(c, g), [frozenset({"2", "3", "4"}), frozenset({"3", "4", "5"})])

    def test_pairing_play_keeps_maker_out(self):
        g = path_family(5)
        end = pairing_strategy_play(path_pairing(5), Position.fresh(g), ["3", "1", "5"])
        self.assertFalse(maker_has_won(end))
        self.assertEqual(end.breaker_set, frozenset({"4", "2"}))

    def test_tic_tac_toe_has_no_complete_pairing(self):
        self.assertIsNone(find_complete_pairing(tic_tac_toe()))

    def test_required_and_forbidden(self):
        g = path_family(4)
        found = find_complete_pairing(g, required=Pairing.of(("2", "3")))
        self.assertIsNotNone(found)
        self.assertIn(frozenset({"2", "3"}), found.pairs)
        self.assertIsNone(find_complete_pairing(g, forbidden=["2", "3"]))

    def test_empty_game_pairs_trivially(self):
        self.assertEqual(len(find_complete_pairing(GameSpec.from_combos([]))), 0)


def test_path_pairing_is_complete(path_game):
    n, g = path_game
    assert is_complete_pairing(path_pairing(n), g)
    found = find_complete_pairing(g)
    assert found is not None and is_complete_pairing(found, g)


def test_path_family_needs_three_squares():
    with pytest.raises(InvalidArgumentError):
        path_family(2)


class TestMBHFormat(unittest.TestCase):
    """Test the MBH text format."""

    def test_comments_and_hash_names(self):
        """A comment starts at a token beginning with '#'."""
        self.assertEqual(strip_comment("combo a u->w#p # trailing"), "combo a u->w#p")
        self.assertEqual(strip_comment("# whole line"), "")

    def test_load(self):
        text = "# a position\nturn breaker\ncombo 1 2 3\ncombo 3 4\nmaker 1\nsquare 9\n"
        pos = load_mbh(text)
        self.assertIs(pos.to_move, Turn.BREAKER)
        self.assertEqual(pos.maker_set, frozenset({"1"}))
        self.assertEqual(pos.hypergraph.squares, frozenset({"1", "2", "3", "4", "9"}))
        self.assertEqual(len(pos.hypergraph.combos), 2)

    def test_dump_then_load_keeps_position(self):
        pos = Position(tic_tac_toe().hypergraph, {"5"}, {"1"}, Turn.MAKER)
        again = load_mbh(dump_mbh(pos))
        self.assertEqual(again, pos)

    def test_errors_name_the_line(self):
        with self.assertRaises(ParseError) as ctx:
            load_mbh("combo a b\nfrobnicate c\n")
        self.assertEqual(ctx.exception.line, 2)
        with self.assertRaises(ParseError):
            load_mbh("turn sideways\n")
        with self.assertRaises(ParseError):
            load_mbh("combo a b\nmaker a\nbreaker a\n")

    def test_read_file(self):
        import tempfile
        from pathlib import Path

        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "ttt.mbh"
            path.write_text(dump_mbh(tic_tac_toe()))
            pos = read_mbh(path)
        self.assertEqual(pos.hypergraph, tic_tac_toe().hypergraph)


if __name__ == "__main__":
    unittest.main()


def breaker_never_loses(c: Pairing, p: Position) -> bool:
    """Every Maker line against the pairing strategy, Breaker's free choices taking the smallest square"""
    seen = set()

    def walk(p):
        key = (p.maker_set, p.breaker_set)
        if key in seen:
            return True
        seen.add(key)
        for move in sorted_squares(p.unclaimed):
            after = apply_move(p, move)
            if maker_has_won(after):
                return False
            if not after.unclaimed:
                continue
            reply = pairing_strategy_reply(c, move, after.claimed)
            if reply == FREE_CHOICE:
                reply = sorted_squares(after.unclaimed)[0]
            if not walk(apply_move(after, reply)):
                return False
        return True

    return walk(p)


@pytest.mark.parametrize("n", range(3, 13))
def test_pairing_strategy_holds_against_every_maker_line(n):
    g = path_family(n)
    c = find_complete_pairing(g)
    assert c is not None
    assert breaker_never_loses(c, Position.fresh(g))


def test_incomplete_pairing_loses_some_line():
    g = path_family(5)
    assert not breaker_never_loses(Pairing.of(("1", "2")), Position.fresh(g))
