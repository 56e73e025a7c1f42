"""Run configuration shared by all CLI subcommands.

Config files are flat ``key = value`` text. Phases accept multiples of pi
written as ``0.25pi``, ``-pi/4`` or ``pi``, which avoids decimal drift.
"""

from __future__ import annotations

import math
import re
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Optional

_PI_RE = re.compile(
    r"^\s*(?P<coef>[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?\s*\*?\s*(?P<sign>[+-])?pi\s*(/\s*(?P<den>\d+(\.\d*)?))?\s*$"
)


def parse_phase(text) -> float:
    """Parse ``"0.25pi"``, ``"-pi/4"``, ``"pi"`` or a plain float."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _PI_RE.match(text.lower())
    if m is None:
        return float(text)
    coef = float(m.group("coef")) if m.group("coef") else 1.0
    if m.group("sign") == "-":
        coef = -coef
    den = float(m.group("den")) if m.group("den") else 1.0
    return coef * math.pi / den


@dataclass(frozen=True)
class RunConfig:
    K: float = 1.0
    M: float = 1.0
    theta1: float = 0.25 * math.pi
    theta2: Optional[float] = None
    L: int = 22
    L_min: int = 50
    L_max: int = 1001
    step: int = 3
    t: float = 1.0
    t_min: float = 0.0
    t_max: float = 20.0
    t_points: int = 2001
    which: str = "max"
    noise_fraction: float = 0.1
    noise_count: int = 1000
    seed: int = 20240101
    normalization: str = "paper"
    theta1_points: int = 20
    workers: int = 1
    output_path: Optional[str] = None
    format: str = "csv"

    def __post_init__(self):
        if self.which not in ("max", "min"):
            raise ValueError(f"which must be max or min, got {self.which!r}")
        if self.normalization not in ("paper", "sample-count"):
            raise ValueError(f"unknown normalization {self.normalization!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def updated(self, values: dict) -> "RunConfig":
        return replace(self, **coerce(values))

    def to_text(self) -> str:
        lines = []
        for key, value in asdict(self).items():
            lines.append(f"{key} = {'none' if value is None else _fmt(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        return cls().updated(parse_kv(text))


_PHASES = {"theta1", "theta2"}
_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _fmt(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def coerce(values: dict) -> dict:
    """Convert raw strings to field types; unknown keys raise ``KeyError``."""
    out = {}
    for key, raw in values.items():
        key = key.replace("-", "_")
        if key == "out":
            key = "output_path"
        if key not in _TYPES:
            raise KeyError(f"unknown config key {key!r}")
        if isinstance(raw, str) and raw.strip().lower() == "none":
            out[key] = None
            continue
        kind = _TYPES[key]
        if key in _PHASES:
            out[key] = parse_phase(raw)
        elif "int" in kind:
            out[key] = int(raw)
        elif "float" in kind:
            out[key] = float(raw) if not isinstance(raw, str) else parse_phase(raw)
        else:
            out[key] = raw if isinstance(raw, str) else str(raw)
    return out


def parse_kv(text: str) -> dict:
    values = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {n}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def load_config_file(path) -> dict:
    return coerce(parse_kv(Path(path).read_text()))
