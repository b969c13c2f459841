"""Run configuration shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class RunConfig:
    """Caps and determinism knobs.

    ext_cap is a relative extension degree: operations that need roots may
    move from F_{p^k} to F_{p^(k*j)} for j up to ext_cap.  All randomized
    searches derive their streams from (seed, call site, trial index), so
    identical configurations give byte-identical reports.
    """

    trials: int = 64
    seed: int = 0
    ext_cap: int = 12
    closure_cap: int = 4096
    brute_q_cap: int = 64
    output: Optional[str] = None

    def __post_init__(self):
        for name in ("trials", "ext_cap", "closure_cap", "brute_q_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
