"""Run configuration shared by the CLI and the acceptance suite."""

from __future__ import annotations

import os
from dataclasses import dataclass

SEED_ENV_VAR = "GALOIS_LOCI_SEED"


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tol_accept: float = 1e-8
    tol_dedupe: float = 1e-6
    sample_count: int = 50
    output: str | None = None

    def __post_init__(self):
        if self.tol_accept <= 0 or self.tol_dedupe <= 0:
            raise ValueError("tolerances must be positive")
        if self.sample_count < 1:
            raise ValueError("sample count must be positive")


def seed_from_env(flag_value: int) -> int:
    """The effective seed: the environment variable overrides the flag."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return flag_value
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from exc
