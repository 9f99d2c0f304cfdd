"""Run defaults, in one place.

Values are read in this order, later ones winning: the defaults below, a
JSON or YAML config file, then command-line flags.  The config file is the
path in ``EXACT_LATTICE_CONFIG`` when set, else ``./exact_lattice.json`` when
present.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import yaml

ENV_VAR = "EXACT_LATTICE_CONFIG"
DEFAULT_FILE = "exact_lattice.json"
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class Config:
    p: int = 2  # residue characteristic for DVR, A_n and torsion-pair universes
    q: int = 5  # field size for the Kronecker quiver (prime)
    N: int = 5  # truncation of the DVR spectrum
    dim_bound: tuple[int, int] = (6, 6)  # Kronecker dimension-vector bound
    window: int = 4  # extra tower levels past the stabilization start
    margin: int = 1  # extra cyclic exponents in the DVR pool
    bound: int = 10  # coresolution length bound
    format: str = "json"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if min(self.p, self.q, self.N, self.window + 1, *self.dim_bound, self.bound, self.jobs) < 1:
            raise ValueError("bounds must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    def to_json(self) -> dict:
        d = asdict(self)
        d["dim_bound"] = list(self.dim_bound)
        return d


def _coerce(d: dict) -> dict:
    names = {f.name for f in fields(Config)}
    out = {}
    for k, v in d.items():
        k = k.replace("-", "_")
        if k not in names:
            raise ValueError(f"unknown config key {k!r}")
        out[k] = tuple(v) if k == "dim_bound" else v
    return out


def config_path() -> Path | None:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    local = Path(DEFAULT_FILE)
    return local if local.exists() else None


def load_config(path: str | os.PathLike | None = None, **overrides) -> Config:
    path = Path(path) if path else config_path()
    data = {}
    if path is not None:
        text = path.read_text()
        data = json.loads(text) if path.suffix == ".json" else (yaml.safe_load(text) or {})
    cfg = Config(**_coerce(data))
    return replace(cfg, **_coerce({k: v for k, v in overrides.items() if v is not None}))


__all__ = ["Config", "load_config", "config_path", "ENV_VAR", "FORMATS"]
