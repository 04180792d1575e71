"""Command-line pipeline: deterministic runs and parallel sweeps.

Subcommands: sample-field, run-heat, analyze, sweep.  Every command takes
--config <path> plus per-key override flags, echoes the effective
configuration into its output directory, and returns exit code 0 on success,
2 on configuration errors, 3 on numerical failures, 4 on I/O failures.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .analysis import (
    collapse_cost,
    default_ds_window,
    fit_alpha,
    on_diagonal_series,
    profiles_from_snapshots,
    spectral_dimension,
    write_collapse_csv,
    write_ondiag_csv,
    write_profiles_csv,
)
from .config import RunConfig
from .errors import ConfigError, GridFormatError, NumericalError
from .evolve import EvolveConfig, Trajectory, evolve, stride_schedule
from .field import FieldSample, field_variance, sample_gff
from .gridio import read_grid, write_grid
from .measure import LatticePoint, high_points, liouville_weights, write_high_points_csv
from .operators import GeneratorContext

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

# Hard ceiling on relative mass drift before a heat run is declared broken.
MASS_DRIFT_HARD_TOL = 1e-6

SNAP_PATTERN = re.compile(r"snap_(\d+)\.grid$")


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _echo_config(cfg: RunConfig, out_dir: Path) -> None:
    (out_dir / "config.json").write_text(cfg.to_json())


def _sample_field_artifacts(cfg: RunConfig, out_dir: Path) -> FieldSample:
    sample = sample_gff(cfg.n, cfg.seed)
    write_grid(out_dir / "field.grid", sample.grid)
    _write_json(out_dir / "field.json", {"n": sample.n, "seed": sample.seed, "sigma2": sample.sigma2})
    write_high_points_csv(out_dir / "highpoints.csv", sample, high_points(sample, cfg.k))
    return sample


def _load_or_sample_field(cfg: RunConfig, out_dir: Path) -> FieldSample:
    grid_path = out_dir / "field.grid"
    if not grid_path.exists():
        return _sample_field_artifacts(cfg, out_dir)
    grid = read_grid(grid_path)
    if grid.shape[0] != cfg.n:
        raise ConfigError(f"n: config says {cfg.n} but {grid_path} holds n={grid.shape[0]}")
    seed = cfg.seed
    meta_path = out_dir / "field.json"
    if meta_path.exists():
        seed = int(json.loads(meta_path.read_text()).get("seed", seed))
    return FieldSample(grid=grid, seed=seed, sigma2=field_variance(cfg.n))


def _resolve_starts(cfg: RunConfig, sample: FieldSample) -> list[tuple[str, LatticePoint]]:
    mode, payload = cfg.parse_start_mode()
    if mode == "highest":
        points = high_points(sample, cfg.k)
        return [(f"rank{i:02d}", p) for i, p in enumerate(points, start=1)]
    if mode == "rank":
        points = high_points(sample, payload)
        return [(f"rank{payload:02d}", points[-1])]
    if mode == "point":
        p = LatticePoint(*payload).reduced(cfg.n)
        return [(f"a{p.a}_b{p.b}", p)]
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence((cfg.seed, 0x5747))))
    sites = rng.integers(0, cfg.n, size=(cfg.k, 2))
    return [(f"rand{i:02d}", LatticePoint(int(a), int(b))) for i, (a, b) in enumerate(sites, start=1)]


def _write_trajectory(traj_dir: Path, traj: Trajectory, meta: dict) -> None:
    traj_dir.mkdir(parents=True, exist_ok=True)
    for it, grid in traj.snapshots:
        write_grid(traj_dir / f"snap_{it}.grid", grid)
    with open(traj_dir / "mass.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "mass"])
        for it, mass in traj.mass_series:
            writer.writerow([it, mass])
    with open(traj_dir / "cg.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["iter", "cg_iters", "residual"])
        for it, (iters, res) in enumerate(zip(traj.cg_iteration_counts, traj.cg_residuals), start=1):
            writer.writerow([it, iters, res])
    _write_json(traj_dir / "meta.json", meta)


def _read_trajectory_dir(traj_dir: Path) -> tuple[dict, list[tuple[int, np.ndarray]]]:
    meta_path = traj_dir / "meta.json"
    if not meta_path.exists():
        raise FileNotFoundError(f"{meta_path}: missing trajectory metadata")
    meta = json.loads(meta_path.read_text())
    snaps = []
    for name in os.listdir(traj_dir):
        match = SNAP_PATTERN.match(name)
        if match:
            snaps.append((int(match.group(1)), read_grid(traj_dir / name)))
    if not snaps:
        raise GridFormatError(f"{traj_dir}: no snap_<iter>.grid files found")
    snaps.sort(key=lambda pair: pair[0])
    return meta, snaps


def cmd_sample_field(cfg: RunConfig, seeds: list[int] | None = None) -> Path:
    """Write field.grid, field.json and highpoints.csv (or one grid per seed)."""
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(cfg, out_dir)
    if seeds is None:
        _sample_field_artifacts(cfg, out_dir)
    else:
        for seed in seeds:
            write_grid(out_dir / f"field_{seed}.grid", sample_gff(cfg.n, seed).grid)
        _write_json(
            out_dir / "fields.json",
            {"n": cfg.n, "seeds": [seeds[0], seeds[-1]], "count": len(seeds), "sigma2": field_variance(cfg.n)},
        )
    return out_dir


def cmd_run_heat(cfg: RunConfig) -> list[Path]:
    """Evolve the heat flow from each requested start point.

    Loads output_dir/field.grid when present, otherwise samples it first.
    Fails hard (exit 3) on solver stalls, positivity breaches, or relative
    mass drift beyond MASS_DRIFT_HARD_TOL.
    """
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(cfg, out_dir)
    sample = _load_or_sample_field(cfg, out_dir)
    ctx = GeneratorContext(liouville_weights(sample, cfg.gamma))
    evolve_cfg = EvolveConfig(
        total_steps=cfg.total_steps,
        dt=cfg.dt,
        cg_tol=cfg.cg_tol,
        snapshot_schedule=stride_schedule(cfg.total_steps, cfg.snapshot_stride),
    )
    traj_dirs = []
    for label, start in _resolve_starts(cfg, sample):
        traj = evolve(ctx, start, evolve_cfg)
        drift = traj.mass_drift()
        if drift > MASS_DRIFT_HARD_TOL:
            raise NumericalError(
                f"trajectory {label}: relative mass drift {drift:.3e} exceeds "
                f"{MASS_DRIFT_HARD_TOL:.1e}"
            )
        traj_dir = out_dir / f"traj_{label}"
        _write_trajectory(
            traj_dir,
            traj,
            {
                "start": [traj.start.a, traj.start.b],
                "label": label,
                "n": cfg.n,
                "gamma": cfg.gamma,
                "seed": sample.seed,
                "dt": cfg.dt,
                "total_steps": cfg.total_steps,
                "snapshot_stride": cfg.snapshot_stride,
                "cg_tol": cfg.cg_tol,
                "mass_drift": drift,
            },
        )
        traj_dirs.append(traj_dir)
    return traj_dirs


def cmd_analyze(cfg: RunConfig, traj_dir: str | Path) -> dict:
    """Run all three analyses on one trajectory directory.

    Writes ondiag.csv (full series), profiles.csv (every positive-time
    snapshot), collapse.csv, and report.json.  The spectral-dimension fit and
    the collapse fit both use the snapshots whose heat-ball radius falls in
    the configured window.
    """
    traj_dir = Path(traj_dir)
    meta, snaps = _read_trajectory_dir(traj_dir)
    n = snaps[0][1].shape[0]
    if n != cfg.n:
        raise ConfigError(f"n: config says {cfg.n} but snapshots hold n={n}")
    dt = float(meta["dt"])
    start = LatticePoint(*(int(v) for v in meta["start"]))

    traj = Trajectory(
        start=start,
        config=EvolveConfig(total_steps=max(it for it, _ in snaps), dt=dt, cg_tol=cfg.cg_tol),
        snapshots=snaps,
    )
    series = on_diagonal_series(traj)
    timed = [(it * dt, grid) for it, grid in snaps]

    radius_bounds = (cfg.ds_rmin, cfg.resolved_ds_rmax())
    window = default_ds_window(timed, start, radius_bounds)
    d_s = spectral_dimension(series, window)

    all_profiles = profiles_from_snapshots(timed, start, n // 2 - 1)
    fit_times = [t for t, _ in timed if window[0] <= t <= window[1]]
    fit_profiles = profiles_from_snapshots(
        [(t, g) for t, g in timed if t in fit_times], start, n // 2 - 1
    )
    report = fit_alpha(
        fit_profiles, (cfg.alpha_lo, cfg.alpha_hi), cfg.alpha_step, cfg.s_max, cfg.bins
    )

    write_ondiag_csv(traj_dir / "ondiag.csv", series)
    write_profiles_csv(traj_dir / "profiles.csv", all_profiles)
    write_collapse_csv(traj_dir / "collapse.csv", report)
    summary = {
        "d_s": d_s,
        "alpha_hat": report.alpha_hat,
        "cost_at_alpha_hat": report.cost_at(report.alpha_hat),
        "cost_at_2": collapse_cost(fit_profiles, 2.0, cfg.s_max, cfg.bins),
        "windows": {
            "ds_t": [window[0], window[1]],
            "ds_radius_bounds": [radius_bounds[0], radius_bounds[1]],
            "profile_times": fit_times,
            "s_max": cfg.s_max,
        },
        "config": cfg.to_dict(),
    }
    _write_json(traj_dir / "report.json", summary)
    return summary


def run_single(cfg_dict: dict, seed: int, gamma: float, rank: int) -> dict:
    """One sweep cell: sample, evolve from the rank-th highest point, analyze.

    Top-level so process pools can pickle it; returns the sweep.csv row.
    """
    base = RunConfig.from_dict(cfg_dict)
    sub_dir = Path(base.output_dir) / f"seed{seed}_gamma{gamma:g}_rank{rank}"
    cfg = base.with_overrides(
        seed=seed, gamma=gamma, start_mode=f"rank:{rank}", output_dir=str(sub_dir)
    )
    traj_dirs = cmd_run_heat(cfg)
    summary = cmd_analyze(cfg, traj_dirs[0])
    return {
        "seed": seed,
        "gamma": gamma,
        "rank": rank,
        "d_s": summary["d_s"],
        "alpha_hat": summary["alpha_hat"],
        "cost_at_alpha_hat": summary["cost_at_alpha_hat"],
        "cost_at_2": summary["cost_at_2"],
    }


def cmd_sweep(
    cfg: RunConfig,
    seeds: list[int],
    gammas: list[float],
    ranks: list[int],
    workers: int | None = None,
) -> tuple[Path, list[str]]:
    """Run every (seed, gamma, rank) cell concurrently and aggregate sweep.csv.

    Per-cell failures are recorded and the sweep continues; the caller turns
    a non-empty failure list into a nonzero exit code.
    """
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(cfg, out_dir)
    cells = [(s, g, r) for s in seeds for g in gammas for r in ranks]
    rows, failures = [], []
    max_workers = workers or os.cpu_count() or 1
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        futures = {pool.submit(run_single, cfg.to_dict(), s, g, r): (s, g, r) for s, g, r in cells}
        for future, cell in futures.items():
            try:
                rows.append(future.result())
            except Exception as err:  # noqa: BLE001 - cell isolation is the point
                failures.append(f"seed={cell[0]} gamma={cell[1]} rank={cell[2]}: {err}")
    rows.sort(key=lambda row: (row["seed"], row["gamma"], row["rank"]))
    sweep_path = out_dir / "sweep.csv"
    with open(sweep_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seed", "gamma", "rank", "d_s", "alpha_hat", "cost_at_alpha_hat", "cost_at_2"])
        for row in rows:
            writer.writerow([
                row["seed"], row["gamma"], row["rank"], row["d_s"],
                row["alpha_hat"], row["cost_at_alpha_hat"], row["cost_at_2"],
            ])
    if failures:
        _write_json(out_dir / "sweep_failures.json", {"failures": failures})
    return sweep_path, failures


def _parse_int_list(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi)))
    return [int(v) for v in text.split(",") if v]


def _parse_float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v]


_OVERRIDE_SPECS = [
    ("--n", "n", int),
    ("--gamma", "gamma", float),
    ("--seed", "seed", int),
    ("--dt", "dt", float),
    ("--total-steps", "total_steps", int),
    ("--snapshot-stride", "snapshot_stride", int),
    ("--start-mode", "start_mode", str),
    ("--k", "k", int),
    ("--cg-tol", "cg_tol", float),
    ("--alpha-lo", "alpha_lo", float),
    ("--alpha-hi", "alpha_hi", float),
    ("--alpha-step", "alpha_step", float),
    ("--s-max", "s_max", float),
    ("--bins", "bins", int),
    ("--ds-rmin", "ds_rmin", float),
    ("--ds-rmax", "ds_rmax", float),
    ("--output-dir", "output_dir", str),
]


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="path to a JSON configuration file")
    for flag, dest, typ in _OVERRIDE_SPECS:
        sub.add_argument(flag, dest=dest, type=typ, default=None)


def _effective_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.load(args.config) if args.config else RunConfig()
    overrides = {dest: getattr(args, dest) for _, dest, _ in _OVERRIDE_SPECS}
    return cfg.with_overrides(**overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lqgheat",
        description="Heat-kernel experiments on Liouville-weighted torus lattices",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_sample = subs.add_parser("sample-field", help="sample a free field and export it")
    _add_common(p_sample)
    p_sample.add_argument("--seeds", help="seed range lo..hi for an ensemble of fields")
    p_sample.set_defaults(func=_main_sample_field)

    p_heat = subs.add_parser("run-heat", help="evolve the heat equation from start points")
    _add_common(p_heat)
    p_heat.set_defaults(func=_main_run_heat)

    p_analyze = subs.add_parser("analyze", help="post-process one trajectory directory")
    _add_common(p_analyze)
    p_analyze.add_argument("trajectory_dir", help="directory written by run-heat")
    p_analyze.set_defaults(func=_main_analyze)

    p_sweep = subs.add_parser("sweep", help="expand (seeds x gammas x ranks) into runs")
    _add_common(p_sweep)
    p_sweep.add_argument("--seeds", default="0..1", help="int list or lo..hi range")
    p_sweep.add_argument("--gammas", default=None, help="comma-separated gamma values")
    p_sweep.add_argument("--ranks", default="1..2", help="int list or lo..hi range")
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.set_defaults(func=_main_sweep)
    return parser


def _main_sample_field(args: argparse.Namespace) -> int:
    cfg = _effective_config(args)
    seeds = _parse_int_list(args.seeds) if args.seeds else None
    if seeds is not None and not seeds:
        raise ConfigError(f"seeds: no values in {args.seeds!r}")
    cmd_sample_field(cfg, seeds)
    return EXIT_OK


def _main_run_heat(args: argparse.Namespace) -> int:
    cmd_run_heat(_effective_config(args))
    return EXIT_OK


def _main_analyze(args: argparse.Namespace) -> int:
    cmd_analyze(_effective_config(args), args.trajectory_dir)
    return EXIT_OK


def _main_sweep(args: argparse.Namespace) -> int:
    cfg = _effective_config(args)
    gammas = _parse_float_list(args.gammas) if args.gammas else [cfg.gamma]
    _, failures = cmd_sweep(
        cfg, _parse_int_list(args.seeds), gammas, _parse_int_list(args.ranks), args.workers
    )
    if failures:
        for line in failures:
            print(f"sweep cell failed: {line}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GridFormatError as err:
        print(f"grid format error: {err}", file=sys.stderr)
        return EXIT_IO
    except OSError as err:
        print(f"i/o error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
