"""Density series and finite-horizon proxies for the limiting densities.

True lower/upper densities are liminf/limsup of |B_n|/|V_n| and are not
computable from a finite trace; the proxies here report extrema over a
trailing window instead, and nothing in this module claims to decide
the infinite game.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptySeries, OutOfRange


class DensitySeries:
    """Per-turn (n, |V_n|, |B_n|) records; densities derived on demand.

    Counts are kept as exact integers; division happens only when a
    float is requested.
    """

    def __init__(self, turns, vertices, burning):
        self.turns = np.asarray(turns, dtype=np.int64)
        self.vertices = np.asarray(vertices, dtype=np.int64)
        self.burning = np.asarray(burning, dtype=np.int64)
        if not (self.turns.size == self.vertices.size == self.burning.size):
            raise ValueError("mismatched series columns")
        if self.turns.size:
            if np.any(np.diff(self.turns) <= 0):
                raise ValueError("turns must be strictly increasing")
            if np.any(np.diff(self.vertices) < 0) or np.any(np.diff(self.burning) < 0):
                raise ValueError("counts must be nondecreasing")
            if np.any(self.burning > self.vertices) or np.any(self.burning < 0):
                raise ValueError("need 0 <= |B_n| <= |V_n|")

    def __len__(self):
        return self.turns.size

    def densities(self) -> np.ndarray:
        """|B_n|/|V_n| as float64; empty-graph turns count as 0."""
        out = np.zeros(len(self), dtype=np.float64)
        nz = self.vertices > 0
        out[nz] = self.burning[nz] / self.vertices[nz]
        return out

    def density_at(self, n: int) -> float:
        idx = int(np.searchsorted(self.turns, n))
        if idx >= len(self) or self.turns[idx] != n:
            raise OutOfRange(f"no record for turn {n}")
        v = self.vertices[idx]
        return float(self.burning[idx] / v) if v else 0.0

    def tail_extrema(self, tail_fraction: float = 0.5):
        """(min, max) density over the last ceil(tail_fraction * len) records."""
        if len(self) == 0:
            raise EmptySeries("no records")
        if not 0 < tail_fraction <= 1:
            raise OutOfRange("tail_fraction must be in (0, 1]")
        window = math.ceil(tail_fraction * len(self))
        tail = self.densities()[len(self) - window :]
        return float(tail.min()), float(tail.max())

    def checkpoint_densities(self, checkpoints) -> list[float]:
        return [self.density_at(int(n)) for n in checkpoints]

    def summary(self, tail_fraction: float = 0.5, checkpoints=()) -> dict:
        """The summary JSON payload."""
        tail_min, tail_max = self.tail_extrema(tail_fraction)
        final_v = self.vertices[-1]
        final = float(self.burning[-1] / final_v) if final_v else 0.0
        return {
            "turns": int(self.turns[-1]),
            "final_density": final,
            "tail_min": tail_min,
            "tail_max": tail_max,
            "checkpoints": [
                {"n": int(n), "density": self.density_at(int(n))} for n in checkpoints
            ],
        }


def tail_extrema(series: DensitySeries, tail_fraction: float = 0.5):
    return series.tail_extrema(tail_fraction)


def checkpoint_densities(series: DensitySeries, checkpoints):
    return series.checkpoint_densities(checkpoints)
