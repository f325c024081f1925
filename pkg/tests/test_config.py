"""Unit tests for mbgg.config module."""

import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from mbgg.config import (
    LoggingConfig,
    SolverConfig,
    GadgetConfig,
    MBGGConfig,
    get_config,
    set_config,
    load_config,
)
from mbgg.errors import ConfigurationError
from mbgg.solver.maker_breaker import SolveLimits


class TestSolverConfig(unittest.TestCase):
    """Test SolverConfig dataclass."""

    def test_defaults(self):
        config = SolverConfig()
        self.assertEqual(config.max_nodes, 5_000_000)
        self.assertEqual(config.max_seconds, 600.0)
        self.assertEqual(config.pairing_search_budget, 2_000)
        self.assertEqual(config.threads, 1)

    def test_limits_follow_config(self):
        """SolveLimits copies every solver setting."""
        limits = SolveLimits.from_config(SolverConfig(max_nodes=10, max_seconds=1.5, threads=3))
        self.assertEqual(limits.max_nodes, 10)
        self.assertEqual(limits.max_seconds, 1.5)
        self.assertEqual(limits.threads, 3)


class TestMBGGConfig(unittest.TestCase):
    """Test MBGGConfig."""

    def test_sections_default(self):
        config = MBGGConfig()
        self.assertIsInstance(config.logging, LoggingConfig)
        self.assertIsInstance(config.solver, SolverConfig)
        self.assertIsInstance(config.gadgets, GadgetConfig)
        self.assertIsNone(config.gadgets.library_path)

    def test_from_env(self):
        """Environment variables override the defaults."""
        env = {"MBGG_MAX_NODES": "123", "MBGG_LOG_LEVEL": "DEBUG",
               "MBGG_GADGET_LIB": "/tmp/lib.gadgets", "MBGG_SEED": "7"}
        with patch.dict(os.environ, env):
            config = MBGGConfig.from_env()
        self.assertEqual(config.solver.max_nodes, 123)
        self.assertEqual(config.logging.level, "DEBUG")
        self.assertEqual(config.gadgets.library_path, "/tmp/lib.gadgets")
        self.assertEqual(config.seed, 7)

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "sub" / "config.json"
            MBGGConfig(solver=SolverConfig(max_nodes=42), seed=3).save(str(path))
            loaded = MBGGConfig.from_file(str(path))
        self.assertEqual(loaded.solver.max_nodes, 42)
        self.assertEqual(loaded.seed, 3)

    def test_unknown_key_is_configuration_error(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "config.json"
            path.write_text(json.dumps({"solver": {"bogus": 1}}))
            with self.assertRaises(ConfigurationError):
                MBGGConfig.from_file(str(path))

    def test_missing_file_is_configuration_error(self):
        with self.assertRaises(ConfigurationError):
            MBGGConfig.from_file("/nonexistent/config.json")


class TestGlobalConfig(unittest.TestCase):
    """Test the process-wide configuration."""

    def tearDown(self):
        set_config(MBGGConfig())

    def test_set_and_get(self):
        config = MBGGConfig(seed=11)
        set_config(config)
        self.assertIs(get_config(), config)

    def test_load_config_sets_global(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "config.json"
            path.write_text(json.dumps({"seed": 5}))
            load_config(str(path))
        self.assertEqual(get_config().seed, 5)


if __name__ == "__main__":
    unittest.main()
