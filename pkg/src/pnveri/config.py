"""Run configuration: resource caps, seed, group selection, output format.

Every cap-bounded operation takes a RunConfig (or uses the module default)
so that batch runs and tests can tighten or relax limits without touching
call sites.
"""

from __future__ import annotations

import dataclasses
import json
import os


class CapExceeded(Exception):
    """A configured resource cap was hit; callers map this to Skipped."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclasses.dataclass(frozen=True)
class RunConfig:
    max_extension: int = 300          # cap on e_n for roots-of-unity fields
    max_field_degree: int = 1200      # hard cap for build_field
    max_bifactor_degree: int = 120    # total-degree cap for bivariate factoring
    max_recombination: int = 1 << 20  # subset candidates in factor recombination
    max_oracle_field: int = 10 ** 6   # field size for exhaustive oracles
    max_oracle_pairs: int = 10 ** 8   # pair enumerations in oracles
    max_oracle_space: int = 10 ** 6   # candidate coefficient space, exhaustive divisors
    max_divisor: int = 10 ** 9        # largest n for divisor enumeration
    max_points: int = 10 ** 4         # explicit singular-point list length
    seed: int = 0xC0FFEE
    groups: tuple[int, ...] = (1, 2, 3)
    with_b: bool = False
    fmt: str = "text"                 # text | csv | json
    strict: bool = False
    jobs: int = 1

    def __post_init__(self):
        for name in ("max_extension", "max_field_degree", "max_bifactor_degree",
                     "max_recombination", "max_oracle_field", "max_oracle_pairs",
                     "max_oracle_space", "max_divisor", "max_points"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not set(self.groups) <= {1, 2, 3, 4, 5}:
            raise ValueError("groups must be a subset of {1,2,3,4,5}")

    def replace(self, **kw) -> "RunConfig":
        return dataclasses.replace(self, **kw)


def default_config() -> RunConfig:
    """Default configuration; the SEED environment variable overrides the seed."""
    seed = os.environ.get("SEED")
    if seed is not None:
        return RunConfig(seed=int(seed, 0) & (2 ** 64 - 1))
    return RunConfig()


def load_config_file(path: str) -> dict:
    """Read a TOML or JSON config file into a plain dict of RunConfig fields."""
    if path.endswith(".toml"):
        try:
            import tomllib as toml_mod  # py311+
        except ModuleNotFoundError:
            import tomli as toml_mod
        with open(path, "rb") as fh:
            raw = toml_mod.load(fh)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "groups" in raw:
        raw["groups"] = tuple(int(g) for g in raw["groups"])
    return raw
