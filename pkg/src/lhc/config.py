"""Run configuration with flags > environment > config file > defaults.

The config file is a flat key=value text file; environment variables are
the upper-cased keys prefixed with LHC_ (e.g. LHC_STORE, LHC_THETA_SIM).
"""

import os
from dataclasses import dataclass, fields
from typing import Optional


@dataclass
class RunConfig:
    store_path: Optional[str] = None
    theta_sim: float = 0.5
    tau_tax: float = 0.75
    theta_emit: float = 0.5
    minsup: float = 0.2
    minconf: float = 0.7
    theta_match: float = 1.0
    alpha: float = 0.1
    window: int = 1
    port: int = 8080
    top_pairs: int = 20
    no_timestamps: bool = False

    def validate(self):
        for name in ("theta_sim", "tau_tax", "theta_emit", "minsup", "minconf", "theta_match"):
            value = getattr(self, name)
            if not (0.0 < value <= 1.0):
                raise ValueError(f"{name} must be in (0, 1], got {value}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if not (0 <= self.port <= 65535):
            raise ValueError(f"port must be in [0, 65535], got {self.port}")
        return self


_ENV_KEY = {
    "store_path": "LHC_STORE",
    "theta_sim": "LHC_THETA_SIM",
    "tau_tax": "LHC_TAU_TAX",
    "theta_emit": "LHC_THETA_EMIT",
    "minsup": "LHC_MINSUP",
    "minconf": "LHC_MINCONF",
    "theta_match": "LHC_THETA_MATCH",
    "alpha": "LHC_ALPHA",
    "window": "LHC_WINDOW",
    "port": "LHC_PORT",
    "top_pairs": "LHC_TOP_PAIRS",
}


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def load_config(flag_values: dict, config_file: Optional[str] = None, env=None) -> RunConfig:
    """Merge flag/env/file/default layers into a validated RunConfig."""
    env = os.environ if env is None else env
    file_values = read_config_file(config_file) if config_file else {}
    config = RunConfig()
    for f in fields(RunConfig):
        raw = None
        if flag_values.get(f.name) is not None:
            raw = flag_values[f.name]
        elif f.name in _ENV_KEY and env.get(_ENV_KEY[f.name]) is not None:
            raw = env[_ENV_KEY[f.name]]
        elif f.name in file_values:
            raw = file_values[f.name]
        if raw is None:
            continue
        if f.type in ("float", float):
            raw = float(raw)
        elif f.type in ("int", int):
            raw = int(raw)
        elif f.type in ("bool", bool) and isinstance(raw, str):
            raw = raw.lower() in ("1", "true", "yes")
        setattr(config, f.name, raw)
    return config.validate()
