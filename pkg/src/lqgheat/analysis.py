"""Heat-kernel analyses: on-diagonal series, cut profiles, scaling collapse.

Three post-processing stages turn trajectories into the quantities of
interest: the on-diagonal decay p_t(x, x) and its log-log slope (the spectral
dimension), normalized horizontal-cut profiles p_t(x, y) / p_t(x, x), and a
binned-variance cost that scores how well profiles at different times
collapse onto one curve of r^alpha / t.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, NumericalError
from .evolve import Trajectory
from .measure import LatticePoint

RATIO_FLOOR = 1e-8
RATIO_SLACK = 1e-6

# The quarter-weighted stencil integrates du/dt = (1/4) * (continuum
# Laplacian), so one unit of continuum heat time costs four lattice
# iterations.  Comparisons against the continuum Gaussian law rescale by this.
LATTICE_TIME_PER_HEAT_TIME = 4.0


@dataclass(frozen=True)
class OnDiagSeries:
    """Sampled on-diagonal values p = u(start, t) with t strictly increasing."""

    t: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        if len(self.t) != len(self.p):
            raise ConfigError("on-diagonal series: t and p lengths differ")
        if np.any(np.diff(self.t) <= 0.0):
            raise ConfigError("on-diagonal series: times must be strictly increasing")
        positive = self.p[self.t > 0.0]
        if np.any(positive <= 0.0):
            raise NumericalError("on-diagonal series: p must stay positive after t=0")

    @property
    def tp(self) -> np.ndarray:
        return self.t * self.p


@dataclass(frozen=True)
class ProfileEntry:
    t: float
    radii: np.ndarray
    ratios: np.ndarray


@dataclass(frozen=True)
class ProfileSet:
    """Normalized cut profiles rho_t(r) = u(y_r, t) / u(start, t) across times."""

    start: LatticePoint
    entries: tuple[ProfileEntry, ...]

    def __post_init__(self):
        for e in self.entries:
            if e.radii[0] != 0 or e.ratios[0] != 1.0:
                raise ConfigError(f"profile at t={e.t}: rho(0) must equal 1")
            if np.any(e.ratios < 0.0) or np.any(e.ratios > 1.0 + RATIO_SLACK):
                raise NumericalError(f"profile at t={e.t}: ratios outside [0, 1]")

    def times(self) -> list[float]:
        return [e.t for e in self.entries]


@dataclass(frozen=True)
class CollapseReport:
    """Cost curve over the alpha grid and the minimizing exponent."""

    alpha_grid: np.ndarray
    costs: np.ndarray
    alpha_hat: float
    s_max: float

    def cost_at(self, alpha: float) -> float:
        idx = int(np.argmin(np.abs(self.alpha_grid - alpha)))
        return float(self.costs[idx])


def on_diagonal_series(traj: Trajectory) -> OnDiagSeries:
    """Extract u(start, t) from every snapshot of a trajectory."""
    if len(traj.snapshots) < 2:
        raise NumericalError("on-diagonal series needs at least 2 snapshots")
    a, b = traj.start
    t = np.array([it * traj.config.dt for it, _ in traj.snapshots])
    p = np.array([grid[a, b] for _, grid in traj.snapshots])
    return OnDiagSeries(t=t, p=p)


def spectral_dimension(series: OnDiagSeries, window: tuple[float, float]) -> float:
    """Negative twice the log-log slope of p over the time window.

    Fits log p against log t by least squares over snapshots with
    window[0] <= t <= window[1]; at least 5 positive-time snapshots must fall
    inside.
    """
    t_lo, t_hi = window
    keep = (series.t >= t_lo) & (series.t <= t_hi) & (series.t > 0.0)
    if int(keep.sum()) < 5:
        raise NumericalError(
            f"spectral dimension: only {int(keep.sum())} snapshots in window "
            f"[{t_lo:g}, {t_hi:g}]; need >= 5 (extend the run or widen the window)"
        )
    slope = np.polyfit(np.log(series.t[keep]), np.log(series.p[keep]), 1)[0]
    return float(-2.0 * slope)


def horizontal_cut(snapshot: np.ndarray, start: LatticePoint, r_max: int):
    """Profile along the row through start: rho(r) = u(a, b+r) / u(a, b).

    Tiny negative undershoots within the evolver's positivity tolerance are
    clamped to zero.  Returns (radii, ratios) for r = 0 .. r_max.
    """
    n = snapshot.shape[0]
    if not 0 <= r_max < n / 2:
        raise ConfigError(f"r_max: need 0 <= r_max < n/2 = {n / 2:g}, got {r_max}")
    a, b = LatticePoint(int(start[0]), int(start[1])).reduced(n)
    center = snapshot[a, b]
    if center <= 0.0:
        raise NumericalError(f"cut at ({a}, {b}): center value {center:.3e} is not positive")
    radii = np.arange(r_max + 1)
    values = snapshot[a, (b + radii) % n]
    ratios = np.maximum(values, 0.0) / center
    return radii, ratios


def vertical_cut(snapshot: np.ndarray, start: LatticePoint, r_max: int):
    """Column-direction variant of horizontal_cut."""
    return horizontal_cut(snapshot.T, LatticePoint(start[1], start[0]), r_max)


def profiles_from_snapshots(
    snapshots: Sequence[tuple[float, np.ndarray]],
    start: LatticePoint,
    r_max: int,
    direction: str = "horizontal",
) -> ProfileSet:
    """Cut every positive-time snapshot into a ProfileSet."""
    cut = {"horizontal": horizontal_cut, "vertical": vertical_cut}.get(direction)
    if cut is None:
        raise ConfigError(f"direction: must be horizontal or vertical, got {direction!r}")
    entries = []
    for t, grid in snapshots:
        if t <= 0.0:
            continue
        radii, ratios = cut(grid, start, r_max)
        entries.append(ProfileEntry(t=float(t), radii=radii, ratios=ratios))
    return ProfileSet(start=LatticePoint(int(start[0]), int(start[1])), entries=tuple(entries))


def heat_ball_radius(snapshot: np.ndarray, start: LatticePoint) -> int:
    """Largest r such that the cut profile stays above 1/e through r."""
    n = snapshot.shape[0]
    r_max = n // 2 - 1
    _, ratios = horizontal_cut(snapshot, start, r_max)
    below = np.nonzero(ratios < np.exp(-1.0))[0]
    return int(below[0]) - 1 if below.size else r_max


def default_ds_window(
    snapshots: Sequence[tuple[float, np.ndarray]],
    start: LatticePoint,
    radius_bounds: tuple[float, float],
) -> tuple[float, float]:
    """Time window of snapshots whose heat-ball radius lies inside bounds.

    The lower radius bound excludes lattice-discretization times, the upper
    bound excludes finite-volume saturation.
    """
    r_lo, r_hi = radius_bounds
    times = [
        t
        for t, grid in snapshots
        if t > 0.0 and r_lo <= heat_ball_radius(grid, start) <= r_hi
    ]
    if not times:
        raise NumericalError(
            f"no snapshot has heat-ball radius in [{r_lo:g}, {r_hi:g}]; "
            "run longer or adjust the radius bounds"
        )
    return min(times), max(times)


def _collapse_points(profiles: ProfileSet, alpha: float, s_max: float):
    """(log s, log rho, time index) triples entering the collapse cost."""
    log_s, log_rho, t_idx = [], [], []
    for i, e in enumerate(profiles.entries):
        r = e.radii[1:].astype(float)
        rho = e.ratios[1:]
        s = r**alpha / e.t
        keep = (rho > RATIO_FLOOR) & (s <= s_max)
        log_s.append(np.log(s[keep]))
        log_rho.append(np.log(rho[keep]))
        t_idx.append(np.full(int(keep.sum()), i))
    return np.concatenate(log_s), np.concatenate(log_rho), np.concatenate(t_idx)


def collapse_cost(profiles: ProfileSet, alpha: float, s_max: float, bins: int) -> float:
    """Binned spread of log rho curves against s = r^alpha / t; lower is better.

    Points from all times land in equal-width bins over the observed log-s
    range.  Each time's surviving profile is read as a piecewise-linear
    function of s and evaluated at the bin centers its own s-range covers
    (no extrapolation); a bin reached by at least two times contributes the
    variance of log rho across times at its center, and the cost averages
    that over contributing bins.  Comparing times at common s values makes a
    perfect collapse score ~0 regardless of how steep the shared curve is,
    while profiles that only coexist in a bin without overlapping in s carry
    no collapse information and are ignored.
    """
    if alpha <= 0.0:
        raise ConfigError(f"alpha: must be positive, got {alpha}")
    if bins < 4:
        raise ConfigError(f"bins: must be >= 4, got {bins}")
    if len(set(profiles.times())) < 2:
        raise NumericalError("collapse cost needs profiles at >= 2 distinct times")

    log_s, log_rho, t_idx = _collapse_points(profiles, alpha, s_max)
    if log_s.size == 0:
        raise NumericalError(
            f"no profile points survive the filters (rho > {RATIO_FLOOR:g}, "
            f"s <= {s_max:g}); increase s_max or run longer"
        )
    lo, hi = float(log_s.min()), float(log_s.max())
    if hi <= lo:
        raise NumericalError(
            "surviving profile points share a single s value; "
            "collapse is undefined for this (alpha, s_max)"
        )
    width = (hi - lo) / bins
    centers = np.exp(lo + width * (np.arange(bins) + 0.5))

    readings: list[list[float]] = [[] for _ in range(bins)]
    for ti in range(len(profiles.entries)):
        mine = t_idx == ti
        if int(mine.sum()) < 2:
            continue
        s = np.exp(log_s[mine])
        y = log_rho[mine]
        order = np.argsort(s)
        s = s[order]
        y = y[order]
        covered = (centers >= s[0]) & (centers <= s[-1])
        if not covered.any():
            continue
        values = np.interp(centers[covered], s, y)
        for k, v in zip(np.nonzero(covered)[0], values):
            readings[k].append(float(v))

    variances = [float(np.var(vals)) for vals in readings if len(vals) >= 2]
    if not variances:
        raise NumericalError(
            "no collapse bin is reached by two distinct times; "
            "profiles are too sparse for this (alpha, s_max, bins)"
        )
    return float(np.mean(variances))


def fit_alpha(
    profiles: ProfileSet,
    alpha_range: tuple[float, float],
    step: float,
    s_max: float,
    bins: int,
) -> CollapseReport:
    """Grid-search collapse_cost over alpha; ties resolve to the smaller alpha.

    Grid values where the cost is undefined (no bin reached by two times,
    which happens when a trial alpha squeezes every profile onto a point)
    are kept in the report with an infinite cost and skipped by the argmin.
    """
    lo, hi = alpha_range
    if lo <= 0.0 or hi <= lo:
        raise ConfigError(f"alpha_range: need 0 < lo < hi, got ({lo}, {hi})")
    if step <= 0.0:
        raise ConfigError(f"step: must be positive, got {step}")
    grid = np.arange(lo, hi + 0.5 * step, step)
    costs = np.empty(grid.size)
    last_error: NumericalError | None = None
    for i, a in enumerate(grid):
        try:
            costs[i] = collapse_cost(profiles, float(a), s_max, bins)
        except NumericalError as err:
            costs[i] = np.inf
            last_error = err
    if not np.isfinite(costs).any():
        raise NumericalError(
            f"collapse cost is undefined on the whole alpha grid: {last_error}"
        )
    best = int(np.argmin(costs))  # argmin takes the first, hence smallest alpha
    return CollapseReport(
        alpha_grid=grid, costs=costs, alpha_hat=float(grid[best]), s_max=s_max
    )


def euclidean_reference(t: float, radii: np.ndarray) -> np.ndarray:
    """Continuum Gaussian profile exp(-r^2 / (4 t)) at unit diffusivity."""
    if t <= 0.0:
        raise ConfigError(f"t: must be positive, got {t}")
    r = np.asarray(radii, dtype=float)
    return np.exp(-(r**2) / (4.0 * t))


def euclidean_deviation(profiles: ProfileSet, s_max: float = 4.0) -> float:
    """Worst relative gap between measured ratios and the Gaussian law.

    Lattice iterations run four times faster than continuum heat time, so
    profile times are divided by LATTICE_TIME_PER_HEAT_TIME before the
    comparison; s = r^2 / t uses the converted time.
    """
    worst = 0.0
    for e in profiles.entries:
        tau = e.t / LATTICE_TIME_PER_HEAT_TIME
        r = e.radii[1:].astype(float)
        rho = e.ratios[1:]
        keep = r**2 / tau <= s_max
        if not keep.any():
            continue
        ref = euclidean_reference(tau, r[keep])
        worst = max(worst, float(np.max(np.abs(rho[keep] - ref) / ref)))
    return worst


def write_ondiag_csv(path: str | Path, series: OnDiagSeries) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "p", "tp"])
        for t, p in zip(series.t, series.p):
            writer.writerow([float(t), float(p), float(t * p)])


def write_profiles_csv(path: str | Path, profiles: ProfileSet) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "r", "ratio"])
        for e in profiles.entries:
            for r, rho in zip(e.radii, e.ratios):
                writer.writerow([float(e.t), int(r), float(rho)])


def write_collapse_csv(path: str | Path, report: CollapseReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "cost"])
        for alpha, cost in zip(report.alpha_grid, report.costs):
            writer.writerow([float(alpha), float(cost)])
