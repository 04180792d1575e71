import numpy as np
import pytest

from lqgheat import (
    ConfigError,
    EvolveConfig,
    GeneratorContext,
    LatticePoint,
    NumericalError,
    cn_step,
    dense_heat_oracle,
    evolve,
    high_points,
    liouville_weights,
    sample_gff,
    stride_schedule,
)


def make_ctx(n, seed, gamma):
    return GeneratorContext(liouville_weights(sample_gff(n, seed), gamma))


def weighted_mass(ctx, u):
    return float(np.sum(u * ctx.m))


def test_stride_schedule():
    assert stride_schedule(50, 10) == (0, 10, 20, 30, 40, 50)
    assert stride_schedule(55, 10) == (0, 10, 20, 30, 40, 50)
    assert stride_schedule(0, 10) == (0,)


def test_config_validation():
    with pytest.raises(ConfigError):
        EvolveConfig(total_steps=-1)
    with pytest.raises(ConfigError):
        EvolveConfig(total_steps=10, dt=0.0)
    with pytest.raises(ConfigError):
        EvolveConfig(total_steps=10, cg_tol=1.5)
    with pytest.raises(ConfigError):
        EvolveConfig(total_steps=10, snapshot_schedule=(5, 5))
    with pytest.raises(ConfigError):
        EvolveConfig(total_steps=10, snapshot_schedule=(5, 20))


def test_snapshot_zero_is_indicator(small_trajectory):
    it0, grid0 = small_trajectory.snapshots[0]
    assert it0 == 0
    start = small_trajectory.start
    assert grid0[start.a, start.b] == 1.0
    assert grid0.sum() == 1.0


def test_snapshot_times_follow_dt(small_trajectory):
    assert small_trajectory.snapshot_times() == [0.0, 10.0, 20.0, 30.0, 40.0, 50.0]


def test_single_cn_step_conserves_weighted_mass():
    ctx = make_ctx(8, 21, 1.1)
    start = high_points(sample_gff(8, 21), 1)[0]
    u = np.zeros((8, 8))
    u[start.a, start.b] = 1.0
    config = EvolveConfig(total_steps=1, dt=1.0, cg_tol=1e-13)
    u1, iters = cn_step(ctx, config, u)
    assert iters >= 1
    assert weighted_mass(ctx, u1) == pytest.approx(weighted_mass(ctx, u), rel=1e-12)


def test_mass_series_and_drift(small_trajectory):
    iters = [it for it, _ in small_trajectory.mass_series]
    assert iters[0] == 0
    assert iters[-1] == 50
    assert small_trajectory.mass_drift() < 1e-8


def test_cg_diagnostics_recorded(small_trajectory):
    assert len(small_trajectory.cg_iteration_counts) == 50
    assert len(small_trajectory.cg_residuals) == 50
    assert all(r < 1e-10 for r in small_trajectory.cg_residuals)
    assert all(c >= 0 for c in small_trajectory.cg_iteration_counts)


def test_evolve_is_deterministic():
    ctx = make_ctx(8, 5, 0.7)
    start = LatticePoint(2, 3)
    cfg = EvolveConfig(total_steps=20, snapshot_schedule=(20,), cg_tol=1e-12)
    a = evolve(ctx, start, cfg)
    b = evolve(ctx, start, cfg)
    np.testing.assert_array_equal(a.snapshots[-1][1], b.snapshots[-1][1])


def test_zero_steps_yields_initial_snapshot_only():
    ctx = make_ctx(8, 5, 0.7)
    traj = evolve(ctx, LatticePoint(1, 1), EvolveConfig(total_steps=0))
    assert len(traj.snapshots) == 1
    assert traj.snapshots[0][0] == 0


def test_start_point_is_reduced_modulo_n():
    ctx = make_ctx(8, 5, 0.0)
    traj = evolve(ctx, LatticePoint(9, -1), EvolveConfig(total_steps=0))
    assert traj.start == LatticePoint(1, 7)
    assert traj.snapshots[0][1][1, 7] == 1.0


def test_gamma_zero_matches_spectral_solution():
    # with m = 1 each CN step is a rational filter of the torus Laplacian;
    # compare the full evolution against the exact mode-by-mode recursion
    n, steps, dt = 8, 40, 0.5
    ctx = make_ctx(n, 0, 0.0)
    traj = evolve(ctx, LatticePoint(0, 0), EvolveConfig(total_steps=steps, dt=dt, cg_tol=1e-14, snapshot_schedule=(steps,)))
    u0 = np.zeros((n, n))
    u0[0, 0] = 1.0
    j = np.arange(n)
    lam = -(4.0 * np.sin(np.pi * j / n)[:, None] ** 2 + 4.0 * np.sin(np.pi * j / n)[None, :] ** 2) / 4.0
    gain = (1.0 + 0.5 * dt * lam) / (1.0 - 0.5 * dt * lam)
    u_hat = np.fft.fft2(u0) * gain**steps
    expected = np.real(np.fft.ifft2(u_hat))
    np.testing.assert_allclose(traj.snapshots[-1][1], expected, atol=1e-12)


def test_dense_oracle_t_zero_is_indicator():
    ctx = make_ctx(8, 3, 0.9)
    out = dense_heat_oracle(ctx, LatticePoint(4, 5), 0.0)
    expected = np.zeros((8, 8))
    expected[4, 5] = 1.0
    np.testing.assert_allclose(out, expected, atol=1e-12)


def test_dense_oracle_symmetry_in_weighted_form(rng):
    ctx = make_ctx(8, 13, 1.0)
    m = ctx.m
    for _ in range(5):
        xa, xb, ya, yb = (int(v) for v in rng.integers(0, 8, size=4))
        ux = dense_heat_oracle(ctx, LatticePoint(xa, xb), 3.0)
        uy = dense_heat_oracle(ctx, LatticePoint(ya, yb), 3.0)
        lhs = m[ya, yb] * ux[ya, yb]
        rhs = m[xa, xb] * uy[xa, xb]
        assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-14)


def test_cn_converges_to_dense_oracle_second_order():
    ctx = make_ctx(8, 7, 0.8)
    start = high_points(sample_gff(8, 7), 1)[0]
    target = dense_heat_oracle(ctx, start, 1.0)

    def sup_err(dt):
        steps = round(1.0 / dt)
        cfg = EvolveConfig(total_steps=steps, dt=dt, cg_tol=1e-14, snapshot_schedule=(steps,))
        return float(np.abs(evolve(ctx, start, cfg).snapshots[-1][1] - target).max())

    ratio = sup_err(0.1) / sup_err(0.05)
    assert 3.5 <= ratio <= 4.5


def test_reversibility_small():
    ctx = make_ctx(16, 2, 0.8)
    field = sample_gff(16, 2)
    x, y = high_points(field, 2)
    cfg = EvolveConfig(total_steps=60, cg_tol=1e-13, snapshot_schedule=(60,))
    ux = evolve(ctx, x, cfg).snapshots[-1][1]
    uy = evolve(ctx, y, cfg).snapshots[-1][1]
    m = ctx.m
    lhs = m[y.a, y.b] * ux[y.a, y.b]
    rhs = m[x.a, x.b] * uy[x.a, x.b]
    assert lhs == pytest.approx(rhs, rel=1e-8)


def test_positivity_breach_fails_the_run():
    # a start in a low-weight region makes the explicit side lose positivity
    field = sample_gff(8, 123)
    ctx = GeneratorContext(liouville_weights(field, 0.8))
    low = int(np.argmin(ctx.m))
    start = LatticePoint(low // 8, low % 8)
    cfg = EvolveConfig(total_steps=40, dt=1.0, snapshot_schedule=stride_schedule(40, 10))
    with pytest.raises(NumericalError):
        evolve(ctx, start, cfg)


def test_extreme_weight_contrast_stays_positive_at_default_tolerance():
    # weights spanning many orders of magnitude let solution error hide at
    # light sites unless CG also bounds the preconditioned residual; evolve
    # itself raises if any snapshot dips below -1e-9 * max
    field = sample_gff(64, 1)
    ctx = GeneratorContext(liouville_weights(field, 1.6))
    assert ctx.m.max() / ctx.m.min() > 1e8
    start = high_points(field, 1)[0]
    traj = evolve(ctx, start, EvolveConfig(total_steps=120, snapshot_schedule=stride_schedule(120, 20)))
    assert len(traj.snapshots) == 7


def test_cg_failure_reports_residual():
    ctx = make_ctx(8, 4, 1.2)
    cfg = EvolveConfig(total_steps=5, cg_tol=1e-15, cg_max_iters=1)
    start = high_points(sample_gff(8, 4), 1)[0]
    with pytest.raises(NumericalError, match="residual"):
        evolve(ctx, start, cfg)
