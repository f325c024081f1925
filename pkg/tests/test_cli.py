"""Tests for the mbgg command line."""

import json

import pytest

from mbgg.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from mbgg.game.examples import path_family, tic_tac_toe
from mbgg.game.mbh_format import dump_mbh, read_mbh
from mbgg.geography.digraph import validate_convertible
from mbgg.geography.generator import gen_convertible
from mbgg.geography.gg_format import dump_gg, read_gg

from tests.conftest import E1_ARCS, E2_ARCS, E3_ARCS, instance


@pytest.fixture
def e1_file(write_text):
    return str(write_text("e1.gg", dump_gg(instance(E1_ARCS))))


@pytest.fixture
def e3_file(write_text):
    return str(write_text("e3.gg", dump_gg(instance(E3_ARCS))))


def first_line(capsys) -> str:
    return capsys.readouterr().out.splitlines()[0]


def test_validate(e1_file, capsys):
    assert main(["validate", e1_file]) == EXIT_OK
    assert first_line(capsys) == "PASS"


def test_validate_failure(write_text, capsys):
    odd = write_text("odd.gg", "start s\nedge s a\nedge a b\nedge b c\nedge c a\n")
    assert main(["validate", str(odd)]) == EXIT_FAIL
    assert first_line(capsys) == "FAIL"


def test_validate_json(e1_file, capsys):
    assert main(["--json", "validate", e1_file]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["checks"]
    assert all(c["passed"] for c in data["checks"])


def test_normalize(write_text, temp_dir):
    src = write_text("two.gg", "start s\nedge s a\nedge s b\nedge a c\nedge b c\nedge c a\n")
    out = temp_dir / "one.gg"
    assert main(["normalize", str(src), "-o", str(out)]) == EXIT_OK
    inst = read_gg(out)
    assert inst.graph.out_degree("s") == 1
    assert validate_convertible(inst).passed


def test_classify(e1_file, capsys):
    assert main(["classify", e1_file]) == EXIT_OK
    assert set(capsys.readouterr().out.splitlines()) == {"s B01", "v M21", "w N11"}


def test_reduce_with_map(e1_file, temp_dir):
    out, sidecar = temp_dir / "e1.mbh", temp_dir / "e1.map"
    assert main(["reduce", e1_file, "-o", str(out), "--map", str(sidecar)]) == EXIT_OK
    pos = read_mbh(out)
    assert len(pos.hypergraph.squares) == 13
    assert len(pos.hypergraph.combos) == 8
    assert "joint s v s->v#p s->v#q" in sidecar.read_text().splitlines()


def test_reduce_uniform(e1_file, temp_dir):
    out = temp_dir / "e1u.mbh"
    assert main(["reduce", e1_file, "--uniform5", "-o", str(out)]) == EXIT_OK
    assert all(len(c) == 5 for c in read_mbh(out).hypergraph.combos)


def test_solve_gg(e1_file, write_text, capsys):
    assert main(["solve-gg", e1_file]) == EXIT_OK
    assert first_line(capsys).startswith("winner=alice")
    lux = write_text("lux.gg", "start Luxembourg\nedge Luxembourg Germany\nedge Germany Yemen\nedge Yemen Norway\n")
    assert main(["solve-gg", "--revised", str(lux)]) == EXIT_OK
    assert first_line(capsys) == "winner=bob nodes=4 line=Luxembourg,Germany,Yemen,Norway"


def test_solve_mb_with_certificates(write_text, temp_dir, capsys):
    ttt = write_text("ttt.mbh", dump_mbh(tic_tac_toe()))
    assert main(["solve-mb", str(ttt)]) == EXIT_OK
    assert first_line(capsys).startswith("winner=maker")

    path = write_text("path.mbh", dump_mbh(path_family(6)))
    cert = temp_dir / "path.cert"
    assert main(["solve-mb", str(path), "--certify", str(cert)]) == EXIT_OK
    assert first_line(capsys).startswith("winner=breaker")
    lines = cert.read_text().splitlines()
    assert lines and all(line.startswith("pair ") for line in lines)


def test_solve_mb_limits(write_text, capsys):
    ttt = write_text("ttt.mbh", dump_mbh(tic_tac_toe()))
    assert main(["solve-mb", str(ttt), "--max-nodes", "1"]) == EXIT_USAGE
    assert first_line(capsys).startswith("winner=inconclusive")


def test_verify_equivalence(e1_file, capsys):
    assert main(["verify-equivalence", e1_file]) == EXIT_OK
    assert first_line(capsys) == "PASS"


def test_check_gadgets(capsys):
    assert main(["check-gadgets"]) == EXIT_OK
    assert first_line(capsys) == "PASS"


def test_synth_gadgets_budget(capsys):
    assert main(["synth-gadgets", "--budget", "1"]) == EXIT_FAIL
    assert first_line(capsys) == "FAIL"


def test_simulate_and_replay(e3_file, temp_dir, capsys):
    trace = temp_dir / "e3.trace"
    assert main(["simulate-regular", e3_file, "--choices", "v=w2", "--trace", str(trace)]) == EXIT_OK
    assert first_line(capsys) == "PASS"
    assert trace.read_text().splitlines()[0] == "activate s via start variant only"
    assert main(["replay", e3_file, str(trace)]) == EXIT_OK
    assert first_line(capsys) == "PASS"


def test_simulate_breaker_merge(write_text, capsys):
    e2 = write_text("e2.gg", dump_gg(instance(E2_ARCS)))
    assert main(["simulate-regular", str(e2)]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "PASS"
    assert "[ok] Geography and Maker-Breaker winners agree: bob/breaker" in lines
    assert "[ok] joint pairing is complete" in lines


def test_simulate_needs_choices(e3_file, capsys):
    assert main(["simulate-regular", e3_file]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_bad_choice_syntax(e3_file):
    assert main(["simulate-regular", e3_file, "--choices", "v"]) == EXIT_USAGE


@pytest.mark.parametrize("flag,value,title", [
    ("--lemma", "5", "# breaker deviations"),
    ("--lemma", "8", "# maker deviations"),
    ("--side", "breaker", "# breaker deviations"),
    ("--side", "maker", "# maker deviations"),
])
def test_check_deviations(e1_file, capsys, flag, value, title):
    assert main(["check-deviations", e1_file, flag, value]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "PASS"
    assert title in lines


def test_check_deviations_needs_one_selector(e1_file):
    assert main(["check-deviations", e1_file]) == EXIT_USAGE
    assert main(["check-deviations", e1_file, "--lemma", "6"]) == EXIT_USAGE
    assert main(["check-deviations", e1_file, "--lemma", "5", "--side", "maker"]) == EXIT_USAGE


def test_gen_and_enumerate(temp_dir, capsys):
    out = temp_dir / "gen.gg"
    assert main(["gen", "--vertices", "8", "--seed", "1", "-o", str(out)]) == EXIT_OK
    assert validate_convertible(read_gg(out)).passed
    assert main(["enumerate", "--max-vertices", "3"]) == EXIT_OK
    assert first_line(capsys) == "# instance 1"


def test_environment_seed_reaches_gen(monkeypatch, temp_dir):
    monkeypatch.setenv("MBGG_SEED", "3")
    out = temp_dir / "gen.gg"
    assert main(["gen", "--vertices", "8", "-o", str(out)]) == EXIT_OK
    assert read_gg(out) == gen_convertible(8, seed=3)


def test_bad_input(write_text, capsys):
    assert main(["validate", "/nonexistent/file.gg"]) == EXIT_USAGE
    broken = write_text("broken.gg", "edge s v\n")
    assert main(["validate", str(broken)]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err
    assert main(["--config", "/nonexistent/config.json", "check-gadgets"]) == EXIT_USAGE
    assert main(["no-such-command"]) == EXIT_USAGE
