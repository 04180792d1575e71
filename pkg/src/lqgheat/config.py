"""Run configuration: one flat JSON document drives every CLI command.

Every key has a desk-scale default (n=256, 20k steps); the paper-scale
settings (n=1024, stride 10000) stay reachable through the same file.
CLI flags override individual keys.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError

_START_MODES = ("highest", "random")  # plus "point:a,b" / "rank:r" forms


@dataclass(frozen=True)
class RunConfig:
    n: int = 256
    gamma: float = 0.0
    seed: int = 0
    dt: float = 1.0
    total_steps: int = 20000
    snapshot_stride: int = 1000
    start_mode: str = "highest"
    k: int = 1
    cg_tol: float = 1e-10
    alpha_lo: float = 0.5
    alpha_hi: float = 3.0
    alpha_step: float = 0.05
    s_max: float = 2.0
    bins: int = 24
    ds_rmin: float = 5.0
    ds_rmax: float | None = None  # None resolves to n/4
    output_dir: str = "runs/out"

    def validate(self) -> "RunConfig":
        if self.n < 2:
            raise ConfigError(f"n: torus side must be >= 2, got {self.n}")
        if not 0.0 <= self.gamma < 2.0:
            raise ConfigError(f"gamma: subcritical range is [0, 2), got {self.gamma}")
        if self.dt <= 0.0:
            raise ConfigError(f"dt: must be positive, got {self.dt}")
        if self.total_steps < 0:
            raise ConfigError(f"total_steps: must be >= 0, got {self.total_steps}")
        if self.snapshot_stride < 1:
            raise ConfigError(f"snapshot_stride: must be >= 1, got {self.snapshot_stride}")
        if not 1 <= self.k <= self.n * self.n:
            raise ConfigError(f"k: need 1 <= k <= n^2, got {self.k}")
        if not 0.0 < self.cg_tol < 1.0:
            raise ConfigError(f"cg_tol: must lie in (0, 1), got {self.cg_tol}")
        if self.alpha_lo <= 0.0 or self.alpha_hi <= self.alpha_lo:
            raise ConfigError(
                f"alpha_lo/alpha_hi: need 0 < lo < hi, got ({self.alpha_lo}, {self.alpha_hi})"
            )
        if self.alpha_step <= 0.0:
            raise ConfigError(f"alpha_step: must be positive, got {self.alpha_step}")
        if self.s_max <= 0.0:
            raise ConfigError(f"s_max: must be positive, got {self.s_max}")
        if self.bins < 4:
            raise ConfigError(f"bins: must be >= 4, got {self.bins}")
        if self.ds_rmin < 0.0:
            raise ConfigError(f"ds_rmin: must be >= 0, got {self.ds_rmin}")
        if self.ds_rmax is not None and self.ds_rmax <= self.ds_rmin:
            raise ConfigError(
                f"ds_rmax: must exceed ds_rmin={self.ds_rmin}, got {self.ds_rmax}"
            )
        self.parse_start_mode()
        return self

    def parse_start_mode(self):
        """Decode start_mode into ('highest'|'random'|'point'|'rank', payload)."""
        mode = self.start_mode
        if mode in _START_MODES:
            return mode, None
        if mode.startswith("point:"):
            try:
                a, b = (int(v) for v in mode[len("point:"):].split(","))
            except ValueError:
                raise ConfigError(
                    f"start_mode: expected 'point:a,b' with integers, got {mode!r}"
                ) from None
            return "point", (a, b)
        if mode.startswith("rank:"):
            try:
                rank = int(mode[len("rank:"):])
            except ValueError:
                raise ConfigError(f"start_mode: expected 'rank:r', got {mode!r}") from None
            if rank < 1:
                raise ConfigError(f"start_mode: rank must be >= 1, got {rank}")
            return "rank", rank
        raise ConfigError(
            f"start_mode: must be 'highest', 'random', 'point:a,b' or 'rank:r', got {mode!r}"
        )

    def resolved_ds_rmax(self) -> float:
        return self.ds_rmax if self.ds_rmax is not None else self.n / 4.0

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"{unknown[0]}: unknown configuration key")
        cfg = cls(**data)
        return cfg.validate()

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"config: invalid JSON ({err})") from err
        if not isinstance(data, dict):
            raise ConfigError("config: top-level JSON value must be an object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        return cls.from_json(Path(path).read_text())

    def with_overrides(self, **overrides) -> "RunConfig":
        updates = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **updates).validate()
