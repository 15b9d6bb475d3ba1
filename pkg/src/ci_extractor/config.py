"""Pipeline configuration: a TOML file plus per-flag overrides (flags win)."""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from ci_extractor.corpus import DEFAULT_SEGMENT_LABELS
from ci_extractor.errors import FormatError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

#: Environment variable naming the default config file.
CONFIG_ENV_VAR = "CI_EXTRACTOR_CONFIG"


def load_toml(path: str | Path) -> dict:
    try:
        with open(path, "rb") as handle:
            return tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"{path}: malformed TOML: {exc}") from exc


@dataclass
class PipelineConfig:
    allow_labels: tuple[str, ...] = DEFAULT_SEGMENT_LABELS
    split_on_colon: bool = False
    lambda1: float = 0.42
    lambda2: float = 0.48
    grid_step: float = 0.1
    dp_rules: str | None = None
    verb_lexicon: str | None = None
    criterion: str = "overlap"
    overlap_threshold: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.criterion not in ("overlap", "exact"):
            raise FormatError(f"unknown match criterion {self.criterion!r}")
        for attr in ("dp_rules", "verb_lexicon"):
            value = getattr(self, attr)
            if value is not None and not Path(value).exists():
                raise FormatError(f"configured {attr} path does not exist: {value}")

    def as_dict(self) -> dict:
        return {f.name: list(v) if isinstance(v := getattr(self, f.name), tuple) else v
                for f in fields(self)}

    def digest(self) -> str:
        return hashlib.sha256(
            json.dumps(self.as_dict(), sort_keys=True).encode("utf-8")
        ).hexdigest()


_CONFIG_KEYS = {f.name for f in fields(PipelineConfig)}


def load_config(path: str | Path | None) -> PipelineConfig:
    """Build a config from a TOML file; ``None`` yields the defaults."""
    if path is None:
        return PipelineConfig()
    data = load_toml(path)
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise FormatError(f"{path}: unknown config keys {sorted(unknown)}")
    if "allow_labels" in data:
        data["allow_labels"] = tuple(data["allow_labels"])
    return PipelineConfig(**data)
