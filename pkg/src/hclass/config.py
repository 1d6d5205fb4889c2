"""Defaults, the tolerance table and the optional ``key = value`` config file."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, replace

from .qforms import TruncationConfig

CONFIG_ENV = "HCLASS_CONFIG"

DEFAULT_A_MAX = 50_000
DEFAULT_C_MAX = 20_000
DEFAULT_LATTICE_BOUND = 3000
QUICK_RELAX = 10.0

# suite -> (tolerance, rationale); None means "exact" or "tail bound"
TOLERANCES: dict[str, tuple[float | None, str]] = {
    "thm-1-1": (1e-9, "closed Euler product against exact class numbers; only L-value rounding enters"),
    "thm-1-1-direct": (None, "truncated Kloosterman zeta series; tolerance is the computed tail bound"),
    "thm-1-2": (1e-4, "unfolded a-sum truncated at a_max; tail decays like a_max^(1-k) log a_max"),
    "thm-1-2-exact": (None, "constant terms compared as exact rationals"),
    "cor-1-3": (1e-6, "two closed forms, both limited by numeric L-values"),
    "cor-1-5": (1e-3, "lattice sum truncated at lattice_bound"),
    "thm-1-4-const": (1e-9, "closed forms with numeric zeta(2k-1) only"),
    "reflection": (1e-9, "finite exponential sums in double precision"),
    "local-factors": (1e-10, "finite Gauss sums against exact closed forms"),
    "kohnen": (1e-8, "finite Kloosterman sums accumulated over divisors"),
    "theta-integral": (1e-10, "composite Gauss-Legendre on a smooth integrand"),
    "ramanujan-remark": (1e-10, "exact values against a float divisor sum"),
    "exact": (None, "exact rational arithmetic"),
}

TRUNCATED_SUITES = {"thm-1-2", "cor-1-5"}


@dataclass(frozen=True)
class RunConfig:
    truncation: TruncationConfig
    tol: float | None = None
    seed: int = 0
    quick: bool = False
    timings: bool = False

    def tolerance(self, suite: str) -> float | None:
        if self.tol is not None and TOLERANCES.get(suite, (None,))[0] is not None:
            return self.tol
        base = TOLERANCES[suite][0]
        if base is not None and self.quick and suite in TRUNCATED_SUITES:
            base *= QUICK_RELAX
        return base

    def rationale(self, suite: str) -> str:
        return TOLERANCES[suite][1]


_KEYS = {
    "a_max": int,
    "c_max": int,
    "lattice_bound": int,
    "tol": float,
    "seed": int,
    "quick": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
    "timings": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines (``#`` comments, dashes or underscores in keys)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[hclass]\n" + fh.read())
    out = {}
    for key, raw in parser["hclass"].items():
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ValueError(f"unknown config key {key!r} in {path}")
        out[key] = _KEYS[key](raw)
    return out


def build_config(overrides: dict | None = None, env: dict | None = None) -> RunConfig:
    """Defaults, then the file named by HCLASS_CONFIG, then explicit overrides."""
    env = os.environ if env is None else env
    values = {
        "a_max": DEFAULT_A_MAX,
        "c_max": DEFAULT_C_MAX,
        "lattice_bound": DEFAULT_LATTICE_BOUND,
        "tol": None,
        "seed": 0,
        "quick": False,
        "timings": False,
    }
    path = env.get(CONFIG_ENV)
    if path:
        values.update(read_config_file(path))
    for k, v in (overrides or {}).items():
        if v is not None:
            values[k] = v
    trunc = TruncationConfig(
        a_max=values["a_max"],
        lattice_bound=values["lattice_bound"],
        c_max=values["c_max"],
        tol=values["tol"] or 1e-9,
    )
    if values["quick"]:
        trunc = replace(
            trunc,
            a_max=max(1, trunc.a_max // 2),
            lattice_bound=max(1, trunc.lattice_bound // 2),
            c_max=max(1, trunc.c_max // 2),
        )
    return RunConfig(trunc, values["tol"], values["seed"], values["quick"], values["timings"])
