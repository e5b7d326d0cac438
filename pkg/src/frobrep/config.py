"""Session configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

import os
import random
from dataclasses import asdict, dataclass

from .exactla import field_from_name

SEED_ENV = "FROBREP_SEED"


@dataclass(frozen=True)
class SessionConfig:
    field: str = "QQ"  # "QQ" or a prime
    seed: int = 0
    horizon: int = 50  # cap on tau-orbit lengths
    format: str = "json"  # "json" | "tsv"
    jobs: int = 1
    instances: int = 50  # random instances per sweep
    fuzz: int = 100  # fuzzed locally free inputs for the GP sweep

    def __post_init__(self):
        field_from_name(self.field)
        if self.format not in ("json", "tsv"):
            raise ValueError(f"unknown output format {self.format!r}")
        if self.jobs < 1 or self.horizon < 1 or self.instances < 0 or self.fuzz < 0:
            raise ValueError("jobs and horizon must be positive, counts non-negative")

    @classmethod
    def from_env(cls, **kw) -> SessionConfig:
        """Apply ``FROBREP_SEED`` on top of the given values."""
        env = os.environ.get(SEED_ENV)
        if env not in (None, ""):
            kw["seed"] = int(env)
        return cls(**{k: v for k, v in kw.items() if v is not None})

    @property
    def field_obj(self):
        return field_from_name(self.field)

    def rng(self, *tags) -> random.Random:
        """Deterministic stream for a named task (string seeding is stable across runs)."""
        return random.Random(":".join(map(str, (self.seed, *tags))))

    def to_json(self) -> dict:
        return asdict(self)
