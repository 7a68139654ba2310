"""Lightweight counters used by tests to verify what the engines actually did.

Purely advisory: the counters are plain ints guarded by the GIL, reset
explicitly by whoever cares about them.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Counters:
    ideals_built: int = 0
    colength_runs: int = 0
    standard_bases: int = 0

    def reset(self) -> None:
        self.ideals_built = 0
        self.colength_runs = 0
        self.standard_bases = 0

    def snapshot(self) -> tuple[int, int, int]:
        return (self.ideals_built, self.colength_runs, self.standard_bases)


counters = Counters()
