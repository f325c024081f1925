"""
Configuration management for mbgg.

Settings come from defaults, a JSON file or MBGG_* environment variables.
Command-line flags override them for a single invocation.
"""

import os
import json
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict

from mbgg.errors import ConfigurationError


@dataclass
class LoggingConfig:
    """Logging configuration"""
    level: str = "INFO"
    file: Optional[str] = None
    json: bool = False


@dataclass
class SolverConfig:
    """Search limits for the exact solvers"""
    max_nodes: int = 5_000_000
    max_seconds: float = 600.0
    memo_entries: int = 2_000_000
    pairing_search_budget: int = 2_000
    threads: int = 1


@dataclass
class GadgetConfig:
    """Gadget library location"""
    library_path: Optional[str] = None


@dataclass
class MBGGConfig:
    """Main mbgg configuration"""
    logging: LoggingConfig = None
    solver: SolverConfig = None
    gadgets: GadgetConfig = None
    seed: int = 0
    debug: bool = False

    def __post_init__(self):
        if self.logging is None:
            self.logging = LoggingConfig()
        if self.solver is None:
            self.solver = SolverConfig()
        if self.gadgets is None:
            self.gadgets = GadgetConfig()

    @classmethod
    def from_file(cls, config_path: str) -> "MBGGConfig":
        """Load configuration from JSON file"""
        try:
            with open(config_path, 'r') as f:
                config_dict = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigurationError(
                f"Cannot read configuration: {e}",
                details={'path': config_path}
            )

        try:
            return cls(
                logging=LoggingConfig(**config_dict.get('logging', {})),
                solver=SolverConfig(**config_dict.get('solver', {})),
                gadgets=GadgetConfig(**config_dict.get('gadgets', {})),
                seed=int(config_dict.get('seed', 0)),
                debug=bool(config_dict.get('debug', False))
            )
        except TypeError as e:
            raise ConfigurationError(str(e), details={'path': config_path})

    @classmethod
    def from_env(cls) -> "MBGGConfig":
        """Load configuration from environment variables"""
        defaults = SolverConfig()
        return cls(
            logging=LoggingConfig(
                level=os.getenv('MBGG_LOG_LEVEL', 'INFO'),
                file=os.getenv('MBGG_LOG_FILE'),
                json=os.getenv('MBGG_LOG_JSON', 'false').lower() == 'true'
            ),
            solver=SolverConfig(
                max_nodes=int(os.getenv('MBGG_MAX_NODES', str(defaults.max_nodes))),
                max_seconds=float(os.getenv('MBGG_MAX_SECONDS', str(defaults.max_seconds))),
                threads=int(os.getenv('MBGG_THREADS', str(defaults.threads)))
            ),
            gadgets=GadgetConfig(library_path=os.getenv('MBGG_GADGET_LIB')),
            seed=int(os.getenv('MBGG_SEED', '0')),
            debug=os.getenv('MBGG_DEBUG', 'false').lower() == 'true'
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary"""
        return {
            'logging': asdict(self.logging),
            'solver': asdict(self.solver),
            'gadgets': asdict(self.gadgets),
            'seed': self.seed,
            'debug': self.debug
        }

    def save(self, path: str) -> None:
        """Save configuration to JSON file"""
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2)


# Global config instance
_config: Optional[MBGGConfig] = None


def get_config() -> MBGGConfig:
    """Get global configuration"""
    global _config
    if _config is None:
        _config = MBGGConfig.from_env()
    return _config


def set_config(config: MBGGConfig) -> None:
    """Set global configuration"""
    global _config
    _config = config


def load_config(path: str) -> MBGGConfig:
    """Load and set configuration from file"""
    config = MBGGConfig.from_file(path)
    set_config(config)
    return config


def load_config_from_env() -> MBGGConfig:
    """Load and set configuration from environment"""
    config = MBGGConfig.from_env()
    set_config(config)
    return config
