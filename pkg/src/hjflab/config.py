"""Run configuration: default precision, data directory and output format."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .errors import FormatError
from .qseries import DEFAULT_PREC

MIN_PREC = 8
FORMATS = ("json", "text")
DATA_ENV = "HJF_DATA_DIR"


@dataclass
class Config:
    precision: Fraction = DEFAULT_PREC
    data_dir: Optional[str] = None
    output: str = "json"

    def __post_init__(self):
        self.precision = parse_precision(self.precision)
        if self.output not in FORMATS:
            raise FormatError(f"output: expected one of {', '.join(FORMATS)}, got {self.output!r}")

    def to_json(self) -> dict:
        p = self.precision
        return {"precision": str(p), "data_dir": self.data_dir, "output": self.output}


def parse_precision(v) -> Fraction:
    try:
        p = Fraction(v) if not isinstance(v, float) else Fraction(v).limit_denominator()
    except (TypeError, ValueError, ZeroDivisionError):
        raise FormatError(f"precision: expected a rational number, got {v!r}") from None
    if p < MIN_PREC:
        raise FormatError(f"precision: must be at least {MIN_PREC}, got {p}")
    return p


def load_config(path: Optional[str] = None, env: Optional[Mapping[str, str]] = None) -> Config:
    """Defaults, then the optional JSON file, then the environment."""
    env = os.environ if env is None else env
    fields: dict = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as e:
            raise FormatError(f"{path}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
        if not isinstance(raw, dict):
            raise FormatError(f"{path}: expected a JSON object")
        unknown = set(raw) - {"precision", "data_dir", "output"}
        if unknown:
            raise FormatError(f"{path}: unknown field {sorted(unknown)[0]!r}")
        fields.update(raw)
    if env.get(DATA_ENV):
        fields["data_dir"] = env[DATA_ENV]
    return Config(**fields)
