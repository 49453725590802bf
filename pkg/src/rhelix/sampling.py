"""Deterministic sample plans over parameter intervals and boxes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc


@dataclass(frozen=True)
class SamplePlan:
    """``n_grid`` structured points plus ``n_random`` seeded uniform points.

    For intervals the structured part is a uniform grid including both
    endpoints; for boxes it is an unscrambled Halton sequence, which avoids
    the aliasing of tensor grids on periodic normals.
    """

    n_grid: int = 64
    n_random: int = 16
    seed: int = 0

    @property
    def size(self) -> int:
        return self.n_grid + self.n_random

    def fresh(self, salt: int = 1, density: int = 1) -> "SamplePlan":
        """Independent plan (different random stream, optionally denser)."""
        return SamplePlan(self.n_grid * density, self.n_random * density, self.seed + 7919 * salt)

    def _rng(self):
        return np.random.default_rng([self.seed, 0x5EED])

    def interval(self, lo: float, hi: float):
        lo, hi = float(lo), float(hi)
        grid = np.linspace(lo, hi, self.n_grid) if self.n_grid > 1 else np.array([0.5 * (lo + hi)])
        rand = self._rng().uniform(lo, hi, self.n_random)
        return np.concatenate([grid[: self.n_grid], rand])

    def box(self, bounds):
        bounds = np.asarray(bounds, dtype=float).reshape(-1, 2)
        d = bounds.shape[0]
        lo, hi = bounds[:, 0], bounds[:, 1]
        if d == 0:
            return np.zeros((self.size, 0))
        halton = qmc.Halton(d, scramble=False).random(self.n_grid + 1)[1:]
        rand = self._rng().uniform(size=(self.n_random, d))
        unit = np.vstack([halton, rand])
        return lo + unit * (hi - lo)
