"""Shared toolkit configuration.

Values come from a TOML config file plus command-line flags; flags win.
All randomness in a run flows from the single seed.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .corpus import SplitSpec
from .errors import ConfigError
from .synthesis import DEFAULT_VOICES, VOICE_COUNT


@dataclass(frozen=True)
class ToolkitConfig:
    seed: int = 0
    train_fraction: float = 0.8
    val_fraction: float = 0.1
    test_fraction: float = 0.1
    tokenize_mode: str = "word"
    phoneme_inventory: str | None = None
    voices: tuple[str, ...] = DEFAULT_VOICES
    llm_url: str = ""
    llm_auth_env: str = ""
    llm_timeout_s: float = 120.0

    def validate(self) -> "ToolkitConfig":
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if len(self.voices) != VOICE_COUNT:
            raise ConfigError(f"exactly {VOICE_COUNT} voices required")
        if self.tokenize_mode not in ("word", "character", "phoneme"):
            raise ConfigError(f"unknown tokenize_mode {self.tokenize_mode!r}")
        # fraction checks delegated to SplitSpec
        self.split_spec()
        return self

    def split_spec(self) -> SplitSpec:
        return SplitSpec(
            train_fraction=self.train_fraction,
            val_fraction=self.val_fraction,
            test_fraction=self.test_fraction,
            seed=self.seed,
        )


def load_config(path: str | Path | None, overrides: dict | None = None) -> ToolkitConfig:
    """Read a TOML config file and apply non-None flag overrides on top."""
    values: dict = {}
    if path is not None:
        try:
            with open(path, "rb") as fh:
                values = tomllib.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}")
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"bad config file {path}: {e}")
    known = {f.name for f in fields(ToolkitConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "voices" in values:
        values["voices"] = tuple(values["voices"])
    cfg = ToolkitConfig(**values)
    if overrides:
        cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()
