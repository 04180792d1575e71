import numpy as np
import pytest

from lqgheat import (
    ConfigError,
    field_variance,
    green_function,
    sample_gff,
    sample_gff_reference,
    torus_eigenvalues,
)


def test_eigenvalues_n2_enumerated():
    # lambda_{jk} = 4 sin^2(pi j/2) + 4 sin^2(pi k/2) over j,k in {0,1}
    lam = torus_eigenvalues(2)
    expected = np.array([[0.0, 4.0], [4.0, 8.0]])
    np.testing.assert_allclose(lam, expected, atol=1e-14)


def test_eigenvalues_range_and_zero_mode():
    for n in (2, 3, 8, 17):
        lam = torus_eigenvalues(n)
        assert lam[0, 0] == 0.0
        assert np.count_nonzero(lam == 0.0) == 1
        assert lam.max() <= 8.0 + 1e-12


def test_variance_n2_closed_form():
    # sum over the three nonzero modes: 2*pi/4 * (1/4 + 1/4 + 1/8) = 5*pi/16
    assert field_variance(2) == pytest.approx(5.0 * np.pi / 16.0, rel=1e-15)


def test_variance_equals_green_at_origin():
    for n in (2, 4, 8, 16, 64):
        assert field_variance(n) == pytest.approx(2.0 * np.pi * green_function(n, 0, 0), rel=1e-12)


def test_green_function_symmetries():
    n = 8
    for dx, dy in [(1, 0), (2, 3), (5, 7)]:
        g = green_function(n, dx, dy)
        assert g == pytest.approx(green_function(n, -dx, -dy), rel=1e-13)
        assert g == pytest.approx(green_function(n, dy, dx), rel=1e-13)
        assert g == pytest.approx(green_function(n, dx + n, dy), rel=1e-13)


def test_green_function_sums_to_zero():
    # the zero spatial mode is excluded, so G averages to 0 over the torus
    n = 6
    total = sum(green_function(n, dx, dy) for dx in range(n) for dy in range(n))
    assert total == pytest.approx(0.0, abs=1e-12)


def test_sample_shape_seed_and_sigma2():
    s = sample_gff(16, 42)
    assert s.grid.shape == (16, 16)
    assert s.grid.dtype == np.float64
    assert s.seed == 42
    assert s.sigma2 == pytest.approx(field_variance(16), rel=1e-15)


def test_sample_mean_is_zero():
    # the (0,0) spectral coefficient is zeroed, so the spatial mean vanishes
    s = sample_gff(32, 7)
    assert abs(s.grid.mean()) < 1e-13


def test_sample_is_deterministic():
    a = sample_gff(16, 3)
    b = sample_gff(16, 3)
    np.testing.assert_array_equal(a.grid, b.grid)
    c = sample_gff(16, 4)
    assert not np.array_equal(a.grid, c.grid)


def test_fft_synthesis_matches_direct_dft():
    # same seed, same coefficients; only the transform implementation differs
    for n in (2, 4, 8):
        fast = sample_gff(n, 11)
        slow = sample_gff_reference(n, 11)
        np.testing.assert_allclose(fast.grid, slow.grid, atol=1e-12)


def test_monte_carlo_covariance_small():
    # E[X(0)X(d)] = 2*pi*G(d) spot-checked at n=4 with a modest ensemble
    n, trials = 4, 4000
    acc = np.zeros((n, n))
    for seed in range(trials):
        g = sample_gff(n, seed).grid
        acc += g[0, 0] * g
    acc /= trials
    sigma2 = field_variance(n)
    for dx, dy in [(0, 0), (1, 0), (2, 2), (1, 3)]:
        target = 2.0 * np.pi * green_function(n, dx, dy)
        se = np.sqrt((sigma2**2 + target**2) / trials)
        assert abs(acc[dx, dy] - target) < 5.0 * se


def test_rejects_bad_size():
    with pytest.raises(ConfigError):
        sample_gff(1, 0)
    with pytest.raises(ConfigError):
        field_variance(0)
