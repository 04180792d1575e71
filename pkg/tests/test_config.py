import json

import pytest

from lqgheat import ConfigError, RunConfig


def test_defaults_validate():
    cfg = RunConfig()
    assert cfg.n == 256
    assert cfg.gamma == 0.0
    assert cfg.dt == 1.0
    assert cfg.start_mode == "highest"
    cfg.validate()


def test_round_trip_json():
    cfg = RunConfig(n=64, gamma=1.2, seed=9, start_mode="rank:3", output_dir="runs/x")
    again = RunConfig.from_json(cfg.to_json())
    assert again == cfg


def test_serialized_keys_are_canonical():
    keys = set(RunConfig().to_dict())
    assert keys == {
        "n", "gamma", "seed", "dt", "total_steps", "snapshot_stride",
        "start_mode", "k", "cg_tol", "alpha_lo", "alpha_hi", "alpha_step",
        "s_max", "bins", "ds_rmin", "ds_rmax", "output_dir",
    }


def test_unknown_key_rejected_with_key_path():
    with pytest.raises(ConfigError, match="grid_size"):
        RunConfig.from_dict({"grid_size": 64})


def test_invalid_values_report_key_path():
    with pytest.raises(ConfigError, match="gamma"):
        RunConfig(gamma=2.5).validate()
    with pytest.raises(ConfigError, match="total_steps"):
        RunConfig(total_steps=-5).validate()
    with pytest.raises(ConfigError, match="snapshot_stride"):
        RunConfig(snapshot_stride=0).validate()
    with pytest.raises(ConfigError, match="alpha_lo"):
        RunConfig(alpha_lo=-1.0).validate()
    with pytest.raises(ConfigError, match="cg_tol"):
        RunConfig(cg_tol=2.0).validate()


def test_malformed_json_is_config_error():
    with pytest.raises(ConfigError):
        RunConfig.from_json("{not json")


def test_start_mode_parsing():
    assert RunConfig(start_mode="highest").parse_start_mode() == ("highest", None)
    assert RunConfig(start_mode="random").parse_start_mode() == ("random", None)
    assert RunConfig(start_mode="point:3,5").parse_start_mode() == ("point", (3, 5))
    assert RunConfig(start_mode="rank:4").parse_start_mode() == ("rank", 4)
    with pytest.raises(ConfigError, match="start_mode"):
        RunConfig(start_mode="middle").parse_start_mode()
    with pytest.raises(ConfigError, match="start_mode"):
        RunConfig(start_mode="point:a,b").parse_start_mode()
    with pytest.raises(ConfigError, match="start_mode"):
        RunConfig(start_mode="rank:0").parse_start_mode()


def test_ds_rmax_resolves_to_quarter_n():
    assert RunConfig(n=128).resolved_ds_rmax() == 32.0
    assert RunConfig(n=128, ds_rmax=20.0).resolved_ds_rmax() == 20.0


def test_with_overrides_skips_none():
    cfg = RunConfig(n=64, gamma=0.4)
    out = cfg.with_overrides(gamma=None, seed=7)
    assert out.n == 64
    assert out.gamma == 0.4
    assert out.seed == 7


def test_load_from_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"n": 32, "gamma": 0.8}))
    cfg = RunConfig.load(path)
    assert cfg.n == 32
    assert cfg.gamma == 0.8
    assert cfg.total_steps == RunConfig().total_steps
