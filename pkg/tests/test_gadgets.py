"""Tests for gadget specs, the library file and the gadget validator."""

import unittest

import pytest

from mbgg.config import GadgetConfig, MBGGConfig, set_config
from mbgg.errors import InvalidArgumentError, InvalidLibraryError, ParseError, SynthesisError
from mbgg.game.pairing import Pairing
from mbgg.gadgets.library import GadgetLibrary, dump_library, load_library, parse_library
from mbgg.gadgets.spec import (
    PortDirection,
    joint_pairing,
    local_breaker_reply,
    make_spec,
    minimality_witnesses,
    regular_squares,
    single_claim_piece,
    star_piece,
    subverted_port,
)
from mbgg.gadgets.synthesis import synthesize_gadgets
from mbgg.gadgets.validator import validate_gadget, validate_library
from mbgg.geography.digraph import VertexClass


class TestLibraryFile(unittest.TestCase):
    """Test the packaged library and its text format."""

    def setUp(self):
        self.lib = load_library()

    def test_all_classes_present(self):
        self.assertEqual(self.lib.missing(), [])
        m12 = self.lib.require(VertexClass.M12)
        self.assertEqual(m12.interiors, ("x1", "x2", "x3", "x4", "x5"))
        self.assertEqual(m12.variants, ("choose-b", "choose-c"))
        self.assertEqual([p.direction for p in m12.ports],
                         [PortDirection.IN, PortDirection.OUT, PortDirection.OUT])

    def test_dump_then_parse(self):
        again = parse_library(dump_library(self.lib))
        for cls in VertexClass:
            self.assertEqual(again.require(cls).combos, self.lib.require(cls).combos)
            self.assertEqual(again.require(cls).sequences, self.lib.require(cls).sequences)

    def test_missing_class(self):
        with self.assertRaises(InvalidLibraryError):
            GadgetLibrary().require(VertexClass.N11)

    def test_parse_errors(self):
        bad = [
            "interior x1\n",
            "gadget Q99\n",
            "gadget N11\nport sideways a p_a q_a\n",
            "gadget N11\nseq only M:p_b X:x1\n",
            "gadget N11\ngadget N11\n",
            "gadget N11\nfrobnicate\n",
        ]
        for text in bad:
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_library(text)

    def test_configured_path(self):
        """MBGG_GADGET_LIB (via the config) points at a custom library."""
        import tempfile
        from pathlib import Path

        only_n11 = self.lib.require(VertexClass.N11)
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "one.gadgets"
            path.write_text(dump_library(GadgetLibrary({VertexClass.N11: only_n11})))
            set_config(MBGGConfig(gadgets=GadgetConfig(library_path=str(path))))
            try:
                lib = load_library()
            finally:
                set_config(MBGGConfig())
        self.assertEqual(list(lib.specs), [VertexClass.N11])


def test_default_library_passes_every_check(library):
    report = validate_library(library)
    assert report.passed, report.render_text()


@pytest.mark.parametrize("cls", list(VertexClass))
def test_each_gadget_passes(library, cls):
    report = validate_gadget(library.require(cls))
    assert report.failures == []
    assert report.title == f"gadget {cls.value}"


def test_library_with_missing_class_fails(library):
    report = validate_library(GadgetLibrary({VertexClass.N11: library.require(VertexClass.N11)}))
    assert report.failed("all six classes")


def test_single_combo_n11_fails_threat_check():
    spec = make_spec(VertexClass.N11, [["p_a", "q_a", "x1", "p_b", "q_b"]])
    report = validate_gadget(spec)
    assert not report.passed
    assert report.failed("threats")


def test_oversized_combo_fails_rank_check():
    spec = make_spec(VertexClass.N11, [["p_a", "q_a", "p_b", "q_b", "x1", "x2"]])
    assert validate_gadget(spec).failed("rank")


class TestPieces(unittest.TestCase):
    """Test single-claim puzzle pieces."""

    def setUp(self):
        self.lib = load_library()

    def test_interior_claim_uses_joint_pairing(self):
        spec = self.lib.require(VertexClass.B21)
        self.assertEqual(single_claim_piece(spec, "x2"), joint_pairing(spec))

    def test_m12_input_joint(self):
        spec = self.lib.require(VertexClass.M12)
        self.assertEqual(
            single_claim_piece(spec, "p_a"),
            Pairing.of(("p_b", "q_b"), ("p_c", "q_c"), ("q_a", "x1"), ("x2", "x4")),
        )

    def test_m12_output_joints(self):
        spec = self.lib.require(VertexClass.M12)
        self.assertEqual(single_claim_piece(spec, "q_b"),
                         Pairing.of(("p_a", "q_a"), ("p_c", "q_c"), ("x1", "x5")))
        self.assertEqual(single_claim_piece(spec, "p_c"),
                         Pairing.of(("p_a", "q_a"), ("p_b", "q_b"), ("x2", "x5")))

    def test_b12_output_joint(self):
        spec = self.lib.require(VertexClass.B12)
        self.assertEqual(single_claim_piece(spec, "p_b"),
                         Pairing.of(("p_a", "q_a"), ("p_c", "q_c"), ("x1", "x4")))

    def test_start_gadget_has_no_piece(self):
        with self.assertRaises(InvalidArgumentError):
            single_claim_piece(self.lib.require(VertexClass.B01), "x1")

    def test_minimality_witnesses(self):
        self.assertEqual(minimality_witnesses(self.lib.require(VertexClass.N11)), {"a": True, "b": False})
        self.assertEqual(minimality_witnesses(self.lib.require(VertexClass.M12)),
                         {"a": True, "b": True, "c": True})


class TestLocalReplies(unittest.TestCase):
    """Test Breaker's local answers to Maker deviations."""

    def setUp(self):
        self.lib = load_library()
        self.m12 = self.lib.require(VertexClass.M12)
        self.b12 = self.lib.require(VertexClass.B12)

    def test_undecided_m12_offers_two_squares(self):
        self.assertEqual(regular_squares(self.m12, None, 0), frozenset({"x1", "x2"}))
        self.assertEqual(regular_squares(self.b12, None, 0), frozenset({"x1"}))

    def test_star_reply_takes_the_option_near_the_deviation(self):
        unclaimed = self.m12.local_squares - {"p_a", "q_a"}
        reply = lambda p: local_breaker_reply(self.m12, None, 0, p, unclaimed)
        self.assertEqual(reply("p_b"), "x1")
        self.assertEqual(reply("x3"), "x1")
        self.assertEqual(reply("q_c"), "x2")
        self.assertEqual(reply("x4"), "x2")
        self.assertEqual(reply("x5"), "x1")
        self.assertEqual(reply(None), "x1")

    def test_star_piece(self):
        unclaimed = self.m12.local_squares - {"p_a", "q_a", "x1"}
        self.assertEqual(star_piece(self.m12, "x1", unclaimed), Pairing.of(("p_c", "q_c"), ("x4", "x2")))
        unclaimed = self.m12.local_squares - {"p_a", "q_a", "x2"}
        self.assertEqual(star_piece(self.m12, "x2", unclaimed), Pairing.of(("p_b", "q_b"), ("x3", "x1")))

    def test_subverted_port_gets_its_guard(self):
        """After Breaker picks b, a claim on c's joints is answered at x4."""
        self.assertIsNone(subverted_port(self.b12, "choose-b", 0))
        self.assertEqual(subverted_port(self.b12, "choose-b", 2).edge_role, "c")
        unclaimed = {"p_b", "q_b", "p_c", "q_c", "x2", "x4"}
        self.assertEqual(local_breaker_reply(self.b12, "choose-b", 2, "p_c", unclaimed), "x4")
        self.assertEqual(local_breaker_reply(self.b12, "choose-b", 2, "x2", unclaimed), "p_b")

    def test_plain_reply_is_the_regular_square(self):
        n11 = self.lib.require(VertexClass.N11)
        self.assertEqual(local_breaker_reply(n11, "only", 0, "x2", n11.local_squares), "p_b")


def test_synthesis_reports_exhausted_budget():
    with pytest.raises(SynthesisError) as info:
        synthesize_gadgets(budget=1)
    assert info.value.details["report"].startswith("FAIL")
