# utils/config.py
"""
Run configuration shared by the CLI, config files and tests.

Values come from (lowest to highest precedence) field defaults, a JSON file
given with --config, explicit flags, and EXACTAPPROX_OUT_DIR for ``out``.
Every numeric option is turned into an exact value here, so a RunConfig that
exists is a valid one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Any, Dict, Mapping, Optional

import ujson

from cfcore.exact import format_exact, parse_exact
from cfcore.surd import Exact
from construction.pad import PadFunction, parse_pad
from utils.errors import ConfigError

COMMANDS = ("decompose", "construct", "verify", "spectrum", "recheck")
REQUIRED = {
    "decompose": ("target",),
    "construct": ("gamma",),
    "verify": ("gamma", "alpha"),
    "spectrum": (),
    "recheck": ("certificate", "alpha"),
}
OUT_ENV = "EXACTAPPROX_OUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    command: str
    gamma: Optional[Exact] = None
    pad: str = "power:1"
    mode: str = "one"
    blocks: int = 3
    Q: int = 5000
    sign: str = "none"
    alpha: Optional[str] = None
    certificate: Optional[str] = None
    target: Optional[Exact] = None
    system: str = "F_4"
    width_goal: Fraction = Fraction(1, 10**30)
    limit: int = 1000
    format: str = "json"
    out: str = "out"
    depth_cap: int = 500
    lookahead: int = 10_000
    workers: int = 4

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.mode not in ("one", "two"):
            raise ConfigError(f"mode must be 'one' or 'two', got {self.mode!r}")
        if self.sign not in ("plus", "minus", "none"):
            raise ConfigError(f"sign must be plus, minus or none, got {self.sign!r}")
        if self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        for name in ("blocks", "Q", "depth_cap", "lookahead", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1")
        if self.limit < 0:
            raise ConfigError("limit must be non-negative")
        if self.width_goal <= 0:
            raise ConfigError("width_goal must be positive")
        missing = [k for k in REQUIRED[self.command] if getattr(self, k) is None]
        if missing:
            raise ConfigError(f"{self.command} needs {', '.join(missing)}")

    @property
    def pad_function(self) -> PadFunction:
        return parse_pad(self.pad)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(mapping) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        values: Dict[str, Any] = dict(mapping)
        for key in ("gamma", "target"):
            if values.get(key) is not None:
                values[key] = parse_exact(values[key])
        if values.get("width_goal") is not None:
            values["width_goal"] = Fraction(str(values["width_goal"]))
        for key in ("blocks", "Q", "limit", "depth_cap", "lookahead", "workers"):
            if values.get(key) is not None:
                try:
                    values[key] = int(values[key])
                except (TypeError, ValueError):
                    raise ConfigError(f"{key} must be an integer, got {values[key]!r}") from None
        if values.get("pad") is not None:
            parse_pad(values["pad"])
        if os.environ.get(OUT_ENV):
            values["out"] = os.environ[OUT_ENV]
        try:
            return cls(**{k: v for k, v in values.items() if v is not None})
        except TypeError as e:
            raise ConfigError(str(e)) from e

    @classmethod
    def from_args(cls, namespace) -> "RunConfig":
        flags = {k: v for k, v in vars(namespace).items() if v is not None and k != "config"}
        config_path = getattr(namespace, "config", None)
        base: Dict[str, Any] = {}
        if config_path:
            try:
                with open(config_path, "r", encoding="utf-8") as f:
                    base = ujson.load(f)
            except (OSError, ValueError) as e:
                raise ConfigError(f"cannot read config file {config_path!r}: {e}") from e
            if not isinstance(base, dict):
                raise ConfigError("config file must hold a JSON object")
        base.update(flags)
        return cls.from_mapping(base)

    def with_overrides(self, **changes: Any) -> "RunConfig":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        for key in ("gamma", "target"):
            if out[key] is not None:
                out[key] = format_exact(out[key])
        out["width_goal"] = format_exact(self.width_goal)
        return out
