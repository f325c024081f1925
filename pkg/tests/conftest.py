"""Pytest configuration and shared fixtures for testing."""

import logging
import tempfile
from pathlib import Path

import pytest

from mbgg.gadgets.library import load_library
from mbgg.game.examples import path_family, tic_tac_toe
from mbgg.geography.digraph import Digraph, GGInstance
from mbgg.reduction.associated import build_associated_game

# Configure logging for tests
logging.basicConfig(level=logging.DEBUG)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive checks that take a while")


def instance(arcs, start="s") -> GGInstance:
    return GGInstance(Digraph.from_arcs(arcs), start)


# s -> v, v -> w, w -> v: Alice wins
E1_ARCS = [("s", "v"), ("v", "w"), ("w", "v")]
# s -> v -> w, w -> x, x -> w: Bob wins
E2_ARCS = [("s", "v"), ("v", "w"), ("w", "x"), ("x", "w")]
# Alice chooses at v; w2 wins for her, w1 loses
E3_ARCS = [("s", "v"), ("v", "w1"), ("v", "w2"), ("w1", "x"), ("w2", "x"), ("x", "w1")]


@pytest.fixture
def temp_dir():
    """Provide a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(scope="session")
def library():
    """The packaged gadget library."""
    return load_library()


@pytest.fixture
def e1():
    return instance(E1_ARCS)


@pytest.fixture
def e2():
    return instance(E2_ARCS)


@pytest.fixture
def e3():
    return instance(E3_ARCS)


@pytest.fixture
def e1_game(e1, library):
    return build_associated_game(e1, library)


@pytest.fixture
def e2_game(e2, library):
    return build_associated_game(e2, library)


@pytest.fixture
def e3_game(e3, library):
    return build_associated_game(e3, library)


@pytest.fixture
def ttt():
    return tic_tac_toe()


@pytest.fixture(params=range(3, 10))
def path_game(request):
    """(n, path family game) for n = 3..9"""
    return request.param, path_family(request.param)


@pytest.fixture
def write_text(temp_dir):
    """Write a file under temp_dir and return its path."""

    def _write(name: str, text: str) -> Path:
        path = temp_dir / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
