"""Liouville measure density and high-point selection.

The measure density against the n^-2-normalized counting measure is

    m(x) = exp(gamma * X(x) - gamma^2 sigma^2 / 2),

whose renormalization makes E[total mass] = 1 for every subcritical gamma.
High points of the field serve as diffusion start sites.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, NumericalError
from .field import FieldSample


class LatticePoint(NamedTuple):
    a: int
    b: int

    def reduced(self, n: int) -> "LatticePoint":
        return LatticePoint(self.a % n, self.b % n)


@dataclass(frozen=True)
class LiouvilleWeights:
    """Pointwise measure density m and its normalized total mass."""

    values: np.ndarray
    gamma: float
    total_mass: float

    @property
    def n(self) -> int:
        return self.values.shape[0]


def liouville_weights(field: FieldSample, gamma: float) -> LiouvilleWeights:
    """Build m(x) = exp(gamma X(x) - gamma^2 sigma^2 / 2) from a field sample.

    Only the subcritical range 0 <= gamma < 2 is accepted.  The density is
    computed in log space and exponentiated once; non-finite weights abort.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma < 2.0:
        raise ConfigError(f"gamma: subcritical range is [0, 2), got {gamma}")
    log_m = gamma * field.grid - 0.5 * gamma**2 * field.sigma2
    values = np.exp(log_m)
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise NumericalError("liouville weights are not finite and positive")
    n = field.n
    total = float(values.sum() / n**2)
    return LiouvilleWeights(values=values, gamma=gamma, total_mass=total)


def high_points(field: FieldSample, k: int, min_separation: int = 0) -> list[LatticePoint]:
    """The k lattice sites with the largest field values, in decreasing order.

    Ties break toward the smaller row-major index.  A positive
    min_separation greedily skips candidates within that L-infinity torus
    distance of an already accepted site.
    """
    n = field.n
    k = int(k)
    if not 1 <= k <= n * n:
        raise ConfigError(f"k: need 1 <= k <= n^2 = {n * n}, got {k}")
    flat = field.grid.ravel()
    # lexsort uses the last key as primary: descending value, then row-major index.
    order = np.lexsort((np.arange(flat.size), -flat))
    if min_separation <= 0:
        chosen = order[:k]
        return [LatticePoint(int(i) // n, int(i) % n) for i in chosen]

    picked: list[LatticePoint] = []
    for idx in order:
        cand = LatticePoint(int(idx) // n, int(idx) % n)
        if all(_linf_torus(cand, p, n) >= min_separation for p in picked):
            picked.append(cand)
            if len(picked) == k:
                break
    if len(picked) < k:
        raise ConfigError(
            f"k: only {len(picked)} sites satisfy min_separation={min_separation}"
        )
    return picked


def _linf_torus(p: LatticePoint, q: LatticePoint, n: int) -> int:
    da = abs(p.a - q.a)
    db = abs(p.b - q.b)
    return max(min(da, n - da), min(db, n - db))


def write_high_points_csv(path: str | Path, field: FieldSample, points: list[LatticePoint]) -> None:
    """Export start sites as CSV with header rank,a,b,X (rank is 1-based)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "a", "b", "X"])
        for rank, p in enumerate(points, start=1):
            writer.writerow([rank, p.a, p.b, float(field.grid[p.a, p.b])])
