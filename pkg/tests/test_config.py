from pathlib import Path

import pytest

from core.configuration import RunConfig
from core.errors import ConfigValidationError, IngestError
from core.load_save import RunStateManager, load_manifest

PRESETS = Path(__file__).resolve().parent.parent / "saved_states"


def test_defaults_are_valid():
    config = RunConfig()
    assert config.validate() == []
    assert config.uci.d_max_km == 5.0
    assert config.ais.max_gap_s == 21600.0
    assert config.sar.gate_km == 3.0


def test_file_then_overrides_then_seed(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[uci]\nd_max_km = 2\n[run]\nseed = 4\n")
    config = RunConfig.build(path, ["uci.t_min_s=1800", "evidential.rule_file=\"\""], seed=9)
    assert config.uci.d_max_km == 2.0 and isinstance(config.uci.d_max_km, float)
    assert config.uci.t_min_s == 1800.0
    assert config.run.seed == 9


def test_every_problem_is_reported_at_once(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text("[uci]\nd_max_km = -1\nspeed = 3\n[harbour]\nx = 1\n")
    with pytest.raises(ConfigValidationError) as info:
        RunConfig.build(path, ["sar.gate_km=wide", "nodot=1"])
    problems = "\n".join(info.value.problems)
    for fragment in ("uci.speed", "[harbour]", "sar.gate_km", "nodot", "uci.d_max_km must be"):
        assert fragment in problems


def test_type_coercion():
    config = RunConfig()
    assert config.apply_overrides(["run.plot=true", "netrisk.choke_k=3"]) == []
    assert config.run.plot is True and config.netrisk.choke_k == 3
    assert config.apply_overrides(["netrisk.choke_k=2.5"])
    assert config.apply_overrides(["run.plot=1"])


def test_unreadable_config(tmp_path):
    with pytest.raises(IngestError):
        RunConfig.build(tmp_path / "absent.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("[uci\n")
    with pytest.raises(IngestError):
        RunConfig.build(bad)


def test_hash_ignores_output_directory_only():
    a = RunConfig.build(None, ["run.out_dir=\"one\""])
    b = RunConfig.build(None, ["run.out_dir=\"two\""])
    c = RunConfig.build(None, ["uci.d_max_km=4"])
    assert a.config_hash() == b.config_hash() != c.config_hash()
    assert "out_dir" not in a.to_toml()


def test_saved_toml_reloads_to_same_hash(tmp_path):
    config = RunConfig.build(None, ["uci.s_max_kn=4.5", "netrisk.initial_kind=\"power\""], seed=3)
    path = tmp_path / "run_config.toml"
    path.write_text(config.to_toml())
    assert RunConfig.build(path).config_hash() == config.config_hash()


@pytest.mark.parametrize("name", ["baltic", "shetland", "adriatic"])
def test_presets_validate(name):
    config = RunConfig.build(PRESETS / f"{name}.toml")
    assert config.validate() == []


def test_run_key_follows_inputs(tmp_path):
    data = tmp_path / "ais.csv"
    data.write_text("a\n")
    config = RunConfig()
    first = RunStateManager(tmp_path / "runs", "ingest", config, {"ais": str(data)})
    again = RunStateManager(tmp_path / "runs", "ingest", config, {"ais": str(data)})
    assert first.run_dir == again.run_dir
    data.write_text("b\n")
    changed = RunStateManager(tmp_path / "runs", "ingest", config, {"ais": str(data)})
    assert changed.run_dir != first.run_dir
    with pytest.raises(IngestError):
        RunStateManager(tmp_path / "runs", "ingest", config, {"ais": str(tmp_path / "absent.csv")})


def test_manifest_written_on_finish(tmp_path):
    state = RunStateManager(tmp_path, "density", RunConfig(), params={"start": "x"})
    state.open()
    assert not (state.run_dir / "run_config.toml").exists()
    assert state.finish()
    assert (state.run_dir / "run_config.toml").exists()
    manifest = load_manifest(state.run_dir)
    assert manifest["subcommand"] == "density"
    assert manifest["config_hash"] == RunConfig().config_hash()
    assert load_manifest(tmp_path / "nowhere") is None


def test_reopened_run_is_unfinished_until_finish(tmp_path):
    state = RunStateManager(tmp_path, "density", RunConfig())
    state.open()
    assert state.finish()
    state.open()
    assert load_manifest(state.run_dir) is None
    assert not (state.run_dir / "run_config.toml").exists()
