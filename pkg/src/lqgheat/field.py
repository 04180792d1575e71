"""Discrete Gaussian free field on the square torus, sampled spectrally.

The torus (Z/nZ)^2 carries the unnormalized graph Laplacian whose Fourier
eigenvalues are

    lam[j, k] = 4 sin^2(pi j / n) + 4 sin^2(pi k / n),   0 <= j, k < n,

with a single zero mode at (0, 0).  The free field is the centered Gaussian
family with covariance

    Cov(X(x), X(y)) = 2 pi G(x - y),

where G is the Green's function of that Laplacian with the zero mode removed.
Sampling draws one complex standard normal per nonzero mode, scales it by
sqrt(2 pi) / (2 sqrt(sin^2 + sin^2)), and takes the real part of the inverse
DFT with a 1/n prefactor; that prefactor is exactly what makes the output
covariance equal 2 pi G (verified by the covariance tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

TWO_PI = 2.0 * np.pi


def _check_size(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ConfigError(f"n: torus side must be >= 2, got {n}")
    return n


def torus_eigenvalues(n: int) -> np.ndarray:
    """Eigenvalue grid of the unnormalized torus Laplacian.

    Returns an (n, n) array with entry 4 sin^2(pi j/n) + 4 sin^2(pi k/n);
    the only zero is at (0, 0).
    """
    n = _check_size(n)
    s = 4.0 * np.sin(np.pi * np.arange(n) / n) ** 2
    return s[:, None] + s[None, :]


def field_variance(n: int) -> float:
    """Common site variance sigma^2 = E[X(x)^2] of the field on the n-torus.

    Equal to (2 pi / n^2) * sum of reciprocal nonzero eigenvalues; the torus
    is site-transitive so one number covers every site.
    """
    n = _check_size(n)
    lam = torus_eigenvalues(n)
    mask = lam > 0.0
    return float(TWO_PI / n**2 * np.sum(1.0 / lam[mask]))


def green_function(n: int, dx: int, dy: int) -> float:
    """Green's function G(dx, dy) of the torus Laplacian, zero mode removed.

    G(d) = (1/n^2) * sum_{(j,k) != (0,0)} cos(2 pi (j dx + k dy) / n) / lam[j,k].
    Depends only on (dx mod n, dy mod n) and is even in each argument.
    """
    n = _check_size(n)
    lam = torus_eigenvalues(n)
    j = np.arange(n)
    phase = np.cos(TWO_PI * (np.add.outer(j * int(dx), j * int(dy)) % n) / n)
    mask = lam > 0.0
    return float(np.sum(phase[mask] / lam[mask]) / n**2)


@dataclass(frozen=True)
class FieldSample:
    """One realization of the free field.

    grid holds the (n, n) field values, seed the generator seed that produced
    them, and sigma2 the exact common variance field_variance(n).
    """

    grid: np.ndarray
    seed: int
    sigma2: float

    @property
    def n(self) -> int:
        return self.grid.shape[0]


def _spectral_coefficients(n: int, seed: int) -> np.ndarray:
    """Draw the complex mode coefficients for one field realization.

    Philox is counter-based, so the normal stream is reproducible bit-for-bit
    across platforms for a fixed 64-bit seed.
    """
    rng = np.random.Generator(np.random.Philox(np.uint64(seed)))
    z1 = rng.standard_normal((n, n))
    z2 = rng.standard_normal((n, n))
    s = np.sin(np.pi * np.arange(n) / n) ** 2
    root = np.sqrt(s[:, None] + s[None, :])
    coef = np.zeros((n, n), dtype=np.complex128)
    nz = root > 0.0
    coef[nz] = np.sqrt(TWO_PI) * (z1[nz] + 1j * z2[nz]) / (2.0 * root[nz])
    return coef


def sample_gff(n: int, seed: int) -> FieldSample:
    """Sample one free-field realization, deterministic per (n, seed).

    X(a, b) = Re[(1/n) sum_{j,k} coef[j,k] exp(2 pi i (j a + k b) / n)];
    the excluded zero mode makes the grid mean vanish up to round-off.
    """
    n = _check_size(n)
    coef = _spectral_coefficients(n, int(seed))
    grid = np.real(n * np.fft.ifft2(coef))
    return FieldSample(grid=grid, seed=int(seed), sigma2=field_variance(n))


def reference_inverse_dft(coef: np.ndarray) -> np.ndarray:
    """Direct-summation evaluation of the sampling transform, for n <= 16.

    Evaluates Re[(1/n) sum coef[j,k] exp(2 pi i (j a + k b)/n)] term by term
    as an independent oracle for the FFT path.
    """
    n = coef.shape[0]
    if n > 16:
        raise ConfigError(f"n: reference transform capped at n <= 16, got {n}")
    out = np.empty((n, n))
    j = np.arange(n)
    for a in range(n):
        for b in range(n):
            phase = np.exp(2j * np.pi * np.add.outer(j * a, j * b) / n)
            out[a, b] = np.real(np.sum(coef * phase) / n)
    return out


def sample_gff_reference(n: int, seed: int) -> FieldSample:
    """sample_gff computed with the direct transform (test oracle, n <= 16)."""
    n = _check_size(n)
    coef = _spectral_coefficients(n, int(seed))
    grid = reference_inverse_dft(coef)
    return FieldSample(grid=grid, seed=int(seed), sigma2=field_variance(n))
