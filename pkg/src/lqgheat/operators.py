"""Graph Laplacian, Liouville generator, and the Crank-Nicolson operators.

All operators act matrix-free on (n, n) grids.  The Laplacian uses edge
weights 1/4 on the periodic lattice, so (Lap f)(x) is the mean over the four
neighbors minus f(x) and its spectrum lies in [-2, 0].  The generator is the
pointwise rescaling m^-1 * Lap, self-adjoint in the m-weighted inner product.
Multiplying the Crank-Nicolson update by D = diag(m) gives the symmetric
pair A = D - (dt/2) Lap (positive definite) and B = D + (dt/2) Lap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericalError
from .measure import LiouvilleWeights


@dataclass(frozen=True)
class GeneratorContext:
    """Bundle of the Liouville weights defining one generator realization."""

    weights: LiouvilleWeights

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def m(self) -> np.ndarray:
        return self.weights.values


def apply_laplacian(f: np.ndarray) -> np.ndarray:
    """Quarter-weighted periodic Laplacian: neighbor mean minus center."""
    nb = np.roll(f, 1, axis=0)
    nb += np.roll(f, -1, axis=0)
    nb += np.roll(f, 1, axis=1)
    nb += np.roll(f, -1, axis=1)
    nb *= 0.25
    nb -= f
    return nb


def apply_generator(ctx: GeneratorContext, f: np.ndarray) -> np.ndarray:
    """Liouville generator m^-1 * Laplacian applied to f."""
    m = ctx.m
    if not np.all(np.isfinite(m)) or np.any(m <= 0.0):
        raise NumericalError("generator weights must be finite and positive")
    return apply_laplacian(f) / m


def cn_system_apply(ctx: GeneratorContext, dt: float, sign: int, f: np.ndarray) -> np.ndarray:
    """Apply m*f - sign*(dt/2)*Lap(f).

    sign=+1 gives the implicit-side operator A = D - (dt/2) Lap, which is
    symmetric positive definite; sign=-1 gives the explicit side
    B = D + (dt/2) Lap.
    """
    if dt <= 0.0:
        raise ConfigError(f"dt: must be positive, got {dt}")
    if sign not in (1, -1):
        raise ConfigError(f"sign: must be +1 or -1, got {sign}")
    out = apply_laplacian(f)
    out *= -sign * (dt / 2.0)
    out += ctx.m * f
    return out


def dense_laplacian(n: int) -> np.ndarray:
    """Quarter-weighted Laplacian as a dense n^2 x n^2 matrix (test oracle).

    Capped at n <= 16 to keep the dense route an oracle, never a solver.
    """
    if n > 16:
        raise ConfigError(f"n: dense assembly capped at n <= 16, got {n}")
    size = n * n
    lap = np.zeros((size, size))
    for a in range(n):
        for b in range(n):
            row = a * n + b
            lap[row, row] = -1.0
            for da, db in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                col = ((a + da) % n) * n + (b + db) % n
                lap[row, col] += 0.25
    return lap


def dense_cn_matrices(ctx: GeneratorContext, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Dense (A, B) for the Crank-Nicolson system (test oracle, n <= 16)."""
    lap = dense_laplacian(ctx.n)
    d = np.diag(ctx.m.ravel())
    half = 0.5 * dt
    return d - half * lap, d + half * lap
