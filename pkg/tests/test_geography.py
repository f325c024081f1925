"""Tests for Geography instances, their format and the instance generator."""

import unittest

import pytest

from mbgg.errors import GenerationError, InvalidArgumentError, InvalidInstanceError, ParseError
from mbgg.geography.digraph import (
    Digraph,
    GGInstance,
    GGState,
    Player,
    Ruleset,
    VertexClass,
    bipartition_from_start,
    classify_all,
    gg_loser_on_move,
    legal_moves_gg,
    luxembourg_line,
    mark,
    normalize_start,
    validate_convertible,
)
from mbgg.geography.generator import canonical_form, enumerate_convertible, gen_convertible
from mbgg.geography.gg_format import dump_gg, load_gg, read_gg
from mbgg.solver.geography import solve_gg

from tests.conftest import E1_ARCS, instance


class TestDigraph(unittest.TestCase):
    """Test digraphs and instances."""

    def test_self_loop_rejected(self):
        with self.assertRaises(InvalidArgumentError):
            Digraph.from_arcs([("a", "a")])

    def test_disconnected_instance_rejected(self):
        with self.assertRaises(InvalidInstanceError):
            GGInstance(Digraph.from_arcs([("s", "a"), ("b", "c")]), "s")

    def test_unknown_start_rejected(self):
        with self.assertRaises(InvalidInstanceError):
            GGInstance(Digraph.from_arcs([("s", "a")]), "z")

    def test_degrees_and_neighbors(self):
        g = instance(E1_ARCS).graph
        self.assertEqual(g.in_degree("v"), 2)
        self.assertEqual(g.out_neighbors("v"), ["w"])
        self.assertEqual(g.in_neighbors("v"), ["s", "w"])

    def test_bipartition_puts_start_on_side_b(self):
        bip = bipartition_from_start(instance(E1_ARCS))
        self.assertEqual(bip.side_b, frozenset({"s", "w"}))
        self.assertEqual(bip.side_a, frozenset({"v"}))


def test_classes_e1(e1):
    assert classify_all(e1) == {"s": VertexClass.B01, "v": VertexClass.M21, "w": VertexClass.N11}


def test_classes_e2(e2):
    assert classify_all(e2) == {
        "s": VertexClass.B01, "v": VertexClass.N11, "w": VertexClass.B21, "x": VertexClass.N11,
    }


def test_classes_e3(e3):
    assert classify_all(e3) == {
        "s": VertexClass.B01, "v": VertexClass.M12, "w1": VertexClass.B21,
        "w2": VertexClass.N11, "x": VertexClass.M21,
    }


def test_interior_counts():
    assert [c.interior_count for c in VertexClass] == [5, 3, 4, 2, 2, 2]


class TestValidateConvertible(unittest.TestCase):
    """Test the convertibility checks."""

    def test_examples_pass(self):
        report = validate_convertible(instance(E1_ARCS), require_planar=True)
        self.assertTrue(report.passed)
        self.assertEqual(report.counters["arcs"], 3)

    def test_odd_cycle(self):
        report = validate_convertible(instance([("s", "a"), ("a", "b"), ("b", "c"), ("c", "a")]))
        self.assertTrue(report.failed("bipartite"))

    def test_heavy_vertex(self):
        arcs = [("s", "v"), ("v", "a"), ("v", "b"), ("a", "v"), ("b", "v")]
        report = validate_convertible(instance(arcs))
        self.assertTrue(report.failed("degree-bound"))

    def test_dead_end(self):
        report = validate_convertible(instance([("s", "v"), ("v", "w")]))
        self.assertTrue(report.failed("inner-degrees"))

    def test_start_out_two_needs_flag(self):
        arcs = [("s", "a"), ("s", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("d", "a")]
        inst = instance(arcs)
        self.assertTrue(validate_convertible(inst).failed("start-degrees"))
        self.assertFalse(validate_convertible(inst, allow_start_out_two=True).failed("start-degrees"))


class TestNormalizeStart(unittest.TestCase):
    """Test start normalization."""

    def test_routes_through_two_fresh_vertices(self):
        inst = instance([("s", "a"), ("s", "b"), ("a", "c"), ("b", "c"), ("c", "d"), ("d", "a")])
        out = normalize_start(inst)
        g = out.graph
        self.assertEqual(g.out_neighbors("s"), ["x1"])
        self.assertEqual(g.out_neighbors("x1"), ["x2"])
        self.assertEqual(g.out_neighbors("x2"), ["a", "b"])
        self.assertEqual(len(g.vertices), len(inst.graph.vertices) + 2)

    def test_out_degree_one_unchanged(self):
        inst = instance(E1_ARCS)
        self.assertIs(normalize_start(inst), inst)

    def test_fresh_names_avoid_clashes(self):
        inst = instance([("s", "x1"), ("s", "b"), ("x1", "c"), ("b", "c"), ("c", "d"), ("d", "x1")])
        out = normalize_start(inst)
        self.assertEqual(out.graph.out_neighbors("s"), ["x1_1"])


class TestGeographyRules(unittest.TestCase):
    """Test marking and game end under both rulesets."""

    def setUp(self):
        self.inst = instance(E1_ARCS)

    def test_bob_moves_after_start(self):
        st = GGState.initial(self.inst)
        self.assertIs(st.to_move, Player.BOB)
        self.assertEqual(legal_moves_gg(self.inst, st), frozenset({"v"}))

    def test_original_rules_stuck_player_loses(self):
        st = GGState(("s", "v", "w"), Ruleset.ORIGINAL)
        self.assertEqual(legal_moves_gg(self.inst, st), frozenset())
        self.assertIs(gg_loser_on_move(self.inst, st), Player.BOB)

    def test_revised_rules_revisit_loses(self):
        st = GGState(("s", "v", "w"), Ruleset.REVISED)
        self.assertEqual(legal_moves_gg(self.inst, st), frozenset({"v"}))
        st = mark(self.inst, st, "v")
        self.assertTrue(st.revisited)
        self.assertIs(gg_loser_on_move(self.inst, st), Player.BOB)

    def test_unfinished_game_has_no_loser(self):
        with self.assertRaises(InvalidArgumentError):
            gg_loser_on_move(self.inst, GGState(("s", "v"), Ruleset.ORIGINAL))

    def test_illegal_mark(self):
        with self.assertRaises(InvalidArgumentError):
            mark(self.inst, GGState.initial(self.inst), "w")

    def test_luxembourg_line(self):
        inst = luxembourg_line()
        self.assertEqual(inst.start, "Luxembourg")
        self.assertEqual(len(inst.graph.arcs), 3)


class TestGGFormat(unittest.TestCase):
    """Test the GG text format."""

    def test_load(self):
        inst = load_gg("# E1\nstart s\nedge s v\nedge v w  # back\nedge w v\n")
        self.assertEqual(inst, instance(E1_ARCS))

    def test_dump_then_load(self):
        inst = instance(E1_ARCS)
        self.assertEqual(dump_gg(inst), "start s\nedge s v\nedge v w\nedge w v\n")
        self.assertEqual(load_gg(dump_gg(inst)), inst)

    def test_errors(self):
        for text in ("edge s v\n", "start s\nstart v\n", "start s\nedge s s\n",
                     "start s\nedge s v\nedge s v\n", "start s\nloop s v\n", "start s\nedge s\n"):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    load_gg(text)

    def test_read_file(self):
        import tempfile
        from pathlib import Path

        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "e1.gg"
            path.write_text(dump_gg(instance(E1_ARCS)))
            self.assertEqual(read_gg(path), instance(E1_ARCS))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_generated_instances_are_convertible(seed):
    inst = gen_convertible(8, seed=seed)
    assert validate_convertible(inst).passed
    assert len(inst.graph.vertices) <= 8
    assert gen_convertible(8, seed=seed) == inst


def test_generated_start_out_two_normalizes(seed=5):
    inst = gen_convertible(9, seed=seed, start_out_degree=2)
    assert inst.graph.out_degree(inst.start) == 2
    assert validate_convertible(normalize_start(inst)).passed


def test_generator_rejects_tiny_budget():
    with pytest.raises(GenerationError):
        gen_convertible(2)
    with pytest.raises(InvalidArgumentError):
        gen_convertible(8, start_out_degree=3)


def test_enumeration_finds_the_smallest_instance(e1):
    found = enumerate_convertible(3)
    assert found
    assert all(validate_convertible(i).passed for i in found)
    assert canonical_form(e1) in {canonical_form(i) for i in found}


@pytest.mark.slow
@pytest.mark.parametrize("ruleset", list(Ruleset))
def test_normalizing_keeps_the_winner(ruleset):
    instances = enumerate_convertible(6, start_out_degree=2)
    assert instances
    for inst in instances:
        normalized = normalize_start(inst)
        assert normalized.graph.out_degree(normalized.start) == 1
        assert solve_gg(normalized, ruleset).winner is solve_gg(inst, ruleset).winner, dump_gg(inst)


@pytest.mark.slow
def test_both_rulesets_agree_on_small_instances():
    instances = enumerate_convertible(5) + [gen_convertible(8, seed=seed) for seed in range(25)]
    for inst in instances:
        revised = solve_gg(inst, Ruleset.REVISED)
        original = solve_gg(inst, Ruleset.ORIGINAL)
        assert revised.winner is original.winner, dump_gg(inst)
