"""Tests for the Maker-Breaker and Geography solvers."""

import unittest

import pytest

from mbgg.errors import InvalidArgumentError
from mbgg.game.examples import path_family, path_pairing, tic_tac_toe
from mbgg.game.hypergraph import GameSpec, Position, Turn
from mbgg.game.pairing import Pairing
from mbgg.geography.digraph import Player, Ruleset, luxembourg_line
from mbgg.solver.geography import solve_gg
from mbgg.solver.maker_breaker import (
    Outcome,
    SolveLimits,
    certificate_valid,
    solve_components,
    solve_mb,
)
from mbgg.solver.transposition import TranspositionTable, transposition_key

from tests.conftest import E1_ARCS, E2_ARCS, E3_ARCS, instance

NO_PAIRING = SolveLimits(pairing_budget=0)


class TestSolveMB(unittest.TestCase):
    """Test the exhaustive Maker-Breaker solver."""

    def test_tic_tac_toe_is_a_maker_win(self):
        g = tic_tac_toe()
        result = solve_mb(g)
        self.assertIs(result.outcome, Outcome.MAKER)
        self.assertIs(result.winner, Turn.MAKER)
        self.assertTrue(result.conclusive)
        self.assertTrue(result.render().startswith("winner=maker nodes="))
        self.assertTrue(certificate_valid(g, result))

    def test_single_square_combo(self):
        g = GameSpec.from_combos([["a"]])
        result = solve_mb(g)
        self.assertIs(result.outcome, Outcome.MAKER)
        self.assertEqual(result.certificate, ("a",))
        self.assertTrue(certificate_valid(g, result))

    def test_no_combos_is_a_breaker_win(self):
        result = solve_mb(GameSpec.from_combos([], squares=["a", "b"]))
        self.assertIs(result.outcome, Outcome.BREAKER)
        self.assertEqual(result.certificate, Pairing.empty())

    def test_positions_in_progress(self):
        """Centre against an edge or a corner still wins for Maker."""
        h = tic_tac_toe().hypergraph
        edge = solve_mb(Position(h, {"5"}, {"2"}, Turn.MAKER), NO_PAIRING)
        self.assertIs(edge.outcome, Outcome.MAKER)
        corner = solve_mb(Position(h, {"5"}, {"1"}, Turn.MAKER), NO_PAIRING)
        self.assertIs(corner.outcome, Outcome.MAKER)

    def test_position_with_one_live_line(self):
        """Only 1-4-7 is unbroken, so Breaker answers 4 with 7 and 7 with 4."""
        h = tic_tac_toe().hypergraph
        result = solve_mb(Position(h, {"1", "6", "8"}, {"3", "5", "9"}, Turn.MAKER), NO_PAIRING)
        self.assertIs(result.outcome, Outcome.BREAKER)

    def test_breaker_to_move(self):
        h = tic_tac_toe().hypergraph
        result = solve_mb(Position(h, {"5", "1"}, {"9"}, Turn.BREAKER), NO_PAIRING)
        self.assertIs(result.to_move, Turn.BREAKER)
        self.assertIs(result.outcome, Outcome.MAKER)

    def test_given_certificate_short_circuits(self):
        result = solve_mb(path_family(7), certificate=path_pairing(7))
        self.assertIs(result.outcome, Outcome.BREAKER)
        self.assertEqual(result.nodes, 0)
        self.assertEqual(result.certificate, path_pairing(7))

    def test_node_limit_is_inconclusive(self):
        result = solve_mb(tic_tac_toe(), SolveLimits(max_nodes=1, pairing_budget=0))
        self.assertIs(result.outcome, Outcome.INCONCLUSIVE)
        self.assertIsNone(result.winner)
        self.assertFalse(result.conclusive)

    def test_threads_agree(self):
        result = solve_mb(tic_tac_toe(), SolveLimits(pairing_budget=0, threads=2))
        self.assertIs(result.outcome, Outcome.MAKER)


def test_path_family_is_a_certified_breaker_win(path_game):
    n, g = path_game
    result = solve_mb(g)
    assert result.outcome is Outcome.BREAKER
    assert isinstance(result.certificate, Pairing)
    assert certificate_valid(g, result)


@pytest.mark.parametrize("game", [tic_tac_toe(), path_family(5), path_family(6),
                                  GameSpec.from_combos([["1", "2"], ["2", "3"], ["3", "1"]])])
def test_plain_search_agrees_with_memo(game):
    memo = solve_mb(game, NO_PAIRING)
    plain = solve_mb(game, NO_PAIRING, use_memo=False)
    assert memo.outcome is plain.outcome
    assert plain.memo_hits == 0


def test_triangle_is_a_maker_win():
    g = GameSpec.from_combos([["1", "2"], ["2", "3"], ["3", "1"]])
    assert solve_mb(g, NO_PAIRING).outcome is Outcome.MAKER


def test_certificate_check_rejects_wrong_claims(ttt):
    result = solve_mb(ttt)
    forged = type(result)(Outcome.BREAKER, 0, 0.0, certificate=path_pairing(4))
    assert not certificate_valid(ttt, forged)
    assert not certificate_valid(ttt, type(result)(Outcome.MAKER, 0, 0.0, certificate=("1", "2")))


class TestComponents(unittest.TestCase):
    """Test solving one component at a time."""

    def test_two_breaker_components(self):
        g = GameSpec.from_combos([["1", "2", "3"], ["2", "3", "4"], ["a", "b", "c"], ["b", "c", "d"]])
        result = solve_components(g)
        self.assertIs(result.outcome, Outcome.BREAKER)
        self.assertTrue(certificate_valid(g, result))

    def test_one_maker_component_decides(self):
        g = GameSpec.from_combos([["1", "2", "3"], ["2", "3", "4"], ["a"]])
        self.assertIs(solve_components(g).outcome, Outcome.MAKER)

    def test_breaker_first_rejected(self):
        g = GameSpec.from_combos([["1", "2"]], Turn.BREAKER)
        with self.assertRaises(InvalidArgumentError):
            solve_components(g)


class TestTranspositionTable(unittest.TestCase):
    """Test the bounded transposition table."""

    def test_key_is_canonical(self):
        self.assertEqual(transposition_key([3, 1, 2], True), ((1, 2, 3), True))
        self.assertNotEqual(transposition_key([1], True), transposition_key([1], False))

    def test_store_and_lookup(self):
        table = TranspositionTable()
        key = transposition_key([1, 6], True)
        self.assertIsNone(table.lookup(key))
        table.store(key, True, 10, 2)
        entry = table.lookup(key)
        self.assertTrue(entry.maker_wins)
        self.assertEqual(table.best_move(key), 2)
        self.assertEqual(table.hits, 1)

    def test_more_work_wins_replacement(self):
        table = TranspositionTable()
        key = transposition_key([5], False)
        table.store(key, True, 10, 1)
        table.store(key, False, 5, 2)
        self.assertEqual(table.best_move(key), 1)
        table.store(key, False, 20, 3)
        self.assertEqual(table.best_move(key), 3)

    def test_eviction_keeps_the_bound(self):
        table = TranspositionTable(max_size=2)
        for i in range(5):
            table.store(transposition_key([i], True), True, i, None)
        self.assertEqual(len(table), 2)
        table.clear()
        self.assertEqual(len(table), 0)
        self.assertEqual(table.hits, 0)


class TestSolveGG(unittest.TestCase):
    """Test the Geography solver."""

    def test_examples(self):
        for arcs, winner in ((E1_ARCS, Player.ALICE), (E2_ARCS, Player.BOB), (E3_ARCS, Player.ALICE)):
            for ruleset in Ruleset:
                with self.subTest(arcs=arcs, ruleset=ruleset):
                    self.assertIs(solve_gg(instance(arcs), ruleset).winner, winner)

    def test_luxembourg_line(self):
        result = solve_gg(luxembourg_line(), Ruleset.ORIGINAL)
        self.assertIs(result.winner, Player.BOB)
        self.assertEqual(result.principal_line, ("Luxembourg", "Germany", "Yemen", "Norway"))

    def test_winning_line_for_alice(self):
        result = solve_gg(instance(E3_ARCS))
        self.assertEqual(result.principal_line[:3], ("s", "v", "w2"))
        self.assertTrue(result.render().startswith("winner=alice"))


def test_associated_games_match_geography(e1_game, e2_game):
    assert solve_mb(e1_game.spec).outcome is Outcome.MAKER
    assert solve_mb(e2_game.spec).outcome is Outcome.BREAKER
