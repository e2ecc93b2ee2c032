"""
CoL Toolkit - Settings
======================
Loads configs/main-config.yaml into frozen dataclasses. Every section has
defaults, so a missing file or section falls back to them; unknown keys are
rejected. Command-line flags override individual values afterwards.
"""
from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from src.logic.errors import ConfigError

ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG = ROOT / "configs" / "main-config.yaml"


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "WARNING"
    format: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class BruteForceSettings:
    max_nodes: Optional[int] = 200_000
    timeout_ms: Optional[int] = None


@dataclass(frozen=True)
class CL5Settings:
    ars_port_bound: int = 16
    binary_occurrence_bound: int = 16
    search_max_nodes: Optional[int] = 100_000
    search_timeout_ms: Optional[int] = None


@dataclass(frozen=True)
class CL15Settings:
    mode: str = "bounded"
    contraction_budget: int = 1
    max_nodes: Optional[int] = 1_000_000
    max_proof_length: int = 64
    max_oformulas: int = 32
    timeout_ms: Optional[int] = None
    modulo_formula_symmetry: bool = False


@dataclass(frozen=True)
class GameSettings:
    static_run_bound: int = 200_000
    max_steps_slack: int = 1
    rounds: int = 3


@dataclass(frozen=True)
class CorpusSettings:
    manifest: str = "corpus/worked/manifest.jsonl"
    seed: int = 20240117
    random_formulas: int = 40

    def manifest_path(self) -> Path:
        path = Path(self.manifest)
        return path if path.is_absolute() else ROOT / path


@dataclass(frozen=True)
class Settings:
    logging: LoggingSettings = field(default_factory=LoggingSettings)
    bruteforce: BruteForceSettings = field(default_factory=BruteForceSettings)
    cl5: CL5Settings = field(default_factory=CL5Settings)
    cl15: CL15Settings = field(default_factory=CL15Settings)
    games: GameSettings = field(default_factory=GameSettings)
    corpus: CorpusSettings = field(default_factory=CorpusSettings)


_SECTIONS = {f.name: f.default_factory for f in fields(Settings)}


def _section(name: str, data: Any):
    factory = _SECTIONS[name]
    if data is None:
        return factory()
    if not isinstance(data, dict):
        raise ConfigError(f"section {name!r} must be a mapping")
    known = {f.name for f in fields(factory())}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in section {name!r}: {', '.join(unknown)}")
    return replace(factory(), **data)


def settings_from_dict(data: Dict[str, Any]) -> Settings:
    # "app" only names the toolkit
    sections = {k: v for k, v in (data or {}).items() if k != "app"}
    unknown = sorted(set(sections) - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(unknown)}")
    return Settings(**{name: _section(name, sections.get(name)) for name in _SECTIONS})


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """Settings from path, or from the bundled config when path is None."""
    config = Path(path) if path is not None else DEFAULT_CONFIG
    if not config.exists():
        if path is not None:
            raise ConfigError(f"config file not found: {config}")
        return Settings()
    try:
        with open(config, "r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot read {config}: {exc}") from exc
    return settings_from_dict(data)


def configure_logging(settings: Settings, verbose: int = 0) -> None:
    """Log to stderr; each -v lowers the threshold one level below the configured one."""
    level = logging.getLevelName(settings.logging.level.upper())
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {settings.logging.level!r}")
    level = max(logging.DEBUG, level - 10 * verbose)
    logging.basicConfig(level=level, format=settings.logging.format, stream=sys.stderr, force=True)


def with_overrides(
    settings: Settings,
    max_nodes: Optional[int] = None,
    timeout_ms: Optional[int] = None,
    max_proof_length: Optional[int] = None,
    contraction_budget: Optional[int] = None,
    mode: Optional[str] = None,
) -> Settings:
    """Apply command-line or per-entry budgets; None leaves a value as configured."""
    bruteforce, cl5, cl15 = settings.bruteforce, settings.cl5, settings.cl15
    if max_nodes is not None:
        bruteforce = replace(bruteforce, max_nodes=max_nodes)
        cl5 = replace(cl5, search_max_nodes=max_nodes)
        cl15 = replace(cl15, max_nodes=max_nodes)
    if timeout_ms is not None:
        bruteforce = replace(bruteforce, timeout_ms=timeout_ms)
        cl5 = replace(cl5, search_timeout_ms=timeout_ms)
        cl15 = replace(cl15, timeout_ms=timeout_ms)
    if max_proof_length is not None:
        cl15 = replace(cl15, max_proof_length=max_proof_length)
    if contraction_budget is not None:
        cl15 = replace(cl15, contraction_budget=contraction_budget)
    if mode is not None:
        cl15 = replace(cl15, mode=mode)
    return replace(settings, bruteforce=bruteforce, cl5=cl5, cl15=cl15)
