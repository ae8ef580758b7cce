import csv
import json
from pathlib import Path

import pytest

import main as cli
from IO.handler import read_jsonl
from commands.ingest import IngestCommand
from core.errors import InvariantError
from core.load_save import load_manifest

REPO = Path(__file__).resolve().parent.parent


def read_rows(path):
    with open(path) as f:
        return list(csv.DictReader(line for line in f if not line.startswith("#")))


def run_ok(capsys, *argv) -> Path:
    assert cli.main([str(a) for a in argv]) == 0
    return Path(capsys.readouterr().out.strip().splitlines()[-1])


@pytest.fixture(scope="module")
def cases(tmp_path_factory):
    """Run directory of `scenario --name all`."""
    out = tmp_path_factory.mktemp("scenarios")
    assert cli.run(["scenario", "--name", "all", "--out", str(out)]) == 0
    (run_dir,) = out.glob("scenario-*")
    return run_dir


# ============================================================================
# EXIT CODES
# ============================================================================

def test_no_subcommand_is_an_input_error(capsys):
    assert cli.main([]) == 1
    assert "no subcommand" in capsys.readouterr().err


def test_usage_errors_exit_one(tmp_path, capsys):
    assert cli.main(["ingest", "--bogus"]) == 1
    assert cli.main(["frobnicate"]) == 1
    assert cli.main(["ingest"]) == 1
    assert "--ais" in capsys.readouterr().err


def test_missing_input_file(tmp_path, capsys):
    assert cli.main(["ingest", "--ais", str(tmp_path / "absent.csv"), "--out", str(tmp_path)]) == 1
    assert "absent.csv" in capsys.readouterr().err


def test_invalid_configuration(tmp_path, capsys):
    ais = tmp_path / "ais.csv"
    ais.write_text("mmsi,timestamp,lat,lon,sog,cog,heading,nav_status\n")
    assert cli.main(["ingest", "--ais", str(ais), "--set", "uci.d_max_km=-1", "--out", str(tmp_path)]) == 1
    assert "uci.d_max_km" in capsys.readouterr().err


def test_invariant_violation_exits_two(tmp_path, monkeypatch, capsys):
    def broken(self, args, config, state):
        raise InvariantError("track out of order")

    monkeypatch.setattr(IngestCommand, "run", broken)
    ais = tmp_path / "ais.csv"
    ais.write_text("mmsi,timestamp,lat,lon,sog,cog,heading,nav_status\n")
    assert cli.main(["ingest", "--ais", str(ais), "--out", str(tmp_path)]) == 2
    assert "track out of order" in capsys.readouterr().err
    (run_dir,) = tmp_path.glob("ingest-*")
    assert not (run_dir / "manifest.json").exists()
    assert not (run_dir / "run_config.toml").exists()


def test_rule_file_without_rules(tmp_path, capsys):
    rules = tmp_path / "empty_rules.txt"
    rules.write_text("# nothing yet\nFRAME benign threat\n")
    anomalies = tmp_path / "anomalies.jsonl"
    anomalies.write_text("# tool: uci-monitor\n")
    code = cli.main(["assess", "--anomalies", str(anomalies), "--rules", str(rules), "--out", str(tmp_path)])
    assert code == 1
    assert "empty_rules.txt" in capsys.readouterr().err


# ============================================================================
# PIPELINE ON THE SYNTHETIC CASES
# ============================================================================

def test_scenario_writes_every_input(cases):
    for name in ("adriatic", "baltic", "shetland"):
        assert (cases / name / "ais.csv").exists()
        assert (cases / name / "uci.geojson").exists()
        truth = json.loads((cases / name / "truth.json").read_text())
        assert truth["scenario"] == name and truth["tool"] == "uci-monitor"
    assert (cases / "shetland" / "graph_edges.csv").exists()
    manifest = load_manifest(cases)
    assert "baltic/truth.json" in manifest["artifacts"]


def test_baltic_chain(cases, tmp_path, capsys):
    case = cases / "baltic"
    truth = json.loads((case / "truth.json").read_text())["truth"]
    common = ["--out", tmp_path, "--config", REPO / "saved_states" / "baltic.toml"]

    ingest = run_ok(capsys, "ingest", "--ais", case / "ais.csv", "--vessels", case / "vessels.csv", *common)
    summary = read_rows(ingest / "track_summary.csv")
    assert len(summary) == 3

    filtered = run_ok(capsys, "filter", "--ais", case / "ais.csv", "--uci", case / "uci.geojson", *common)
    assert [int(r["mmsi"]) for r in read_rows(filtered / "candidates.csv")] == [truth["loiter_mmsi"]]

    scene = run_ok(capsys, "associate", "--ais", case / "ais.csv", "--detections", case / "detections.csv",
                   *common)
    flags = {r["detection_id"]: r["flag"] for r in read_rows(scene / "associations.csv")}
    for detection_id, flag in truth["expected_flags"].items():
        assert flags[detection_id] == flag

    found = run_ok(capsys, "anomalies", "--ais", case / "ais.csv", "--uci", case / "uci.geojson",
                   "--history", case / "history.csv", "--detections", case / "detections.csv", *common)
    events = read_jsonl(found / "anomalies.jsonl")
    kinds = {e["kind"] for e in events if e["mmsi"] == truth["loiter_mmsi"]}
    assert "loiter_near_uci" in kinds
    assert any(e["kind"] == "unassociated_sar" and e["mmsi"] == truth["dark_mmsi"] for e in events)

    assessed = run_ok(capsys, "assess", "--anomalies", found / "anomalies.jsonl",
                      "--vessels", case / "vessels.csv", *common)
    records = {r["mmsi"]: r for r in read_jsonl(assessed / "assessments.jsonl")}
    assert truth["loiter_mmsi"] in records
    assert list(records) == sorted(records)
    rows = read_rows(assessed / "assessment_summary.csv")
    assert {int(r["mmsi"]) for r in rows} == set(records)


def test_anomalies_without_history(cases, tmp_path, capsys):
    case = cases / "baltic"
    truth = json.loads((case / "truth.json").read_text())["truth"]
    found = run_ok(capsys, "anomalies", "--ais", case / "ais.csv", "--uci", case / "uci.geojson",
                   "--out", tmp_path, "--config", REPO / "saved_states" / "baltic.toml")
    events = read_jsonl(found / "anomalies.jsonl")
    assert any(e["kind"] == "loiter_near_uci" and e["mmsi"] == truth["loiter_mmsi"] for e in events)


def test_adriatic_prediction_and_model_file(cases, tmp_path, capsys):
    case = cases / "adriatic"
    truth = json.loads((case / "truth.json").read_text())["truth"]
    at = truth["sar_time"]
    fitted = run_ok(capsys, "predict", "--ais", case / "ais.csv", "--mmsi", truth["dark_mmsi"],
                    "--at", at, "--out", tmp_path)
    (row,) = read_rows(fitted / "predictions.csv")
    assert row["timestamp"] == at and float(row["radius_3sigma_m"]) > 0

    replayed = run_ok(capsys, "predict", "--model", fitted / "ou_model.txt", "--at", at, "--out", tmp_path)
    (again,) = read_rows(replayed / "predictions.csv")
    assert (float(again["lat"]), float(again["lon"])) == pytest.approx((float(row["lat"]), float(row["lon"])))

    bridged = run_ok(capsys, "predict", "--ais", case / "ais.csv", "--out", tmp_path)
    bridges = [r for r in read_rows(bridged / "gap_bridges.csv") if int(r["mmsi"]) == truth["dark_mmsi"]]
    assert len(bridges) == 1 and int(bridges[0]["gap_s"]) == truth["gap_s"]


def test_prediction_before_model_anchor_is_rejected(cases, tmp_path, capsys):
    case = cases / "adriatic"
    truth = json.loads((case / "truth.json").read_text())["truth"]
    fitted = run_ok(capsys, "predict", "--ais", case / "ais.csv", "--mmsi", truth["dark_mmsi"],
                    "--at", truth["sar_time"], "--out", tmp_path)
    code = cli.main(["predict", "--model", str(fitted / "ou_model.txt"), "--at", "2000-01-01T00:00:00Z",
                     "--out", str(tmp_path)])
    assert code == 1
    assert "precedes" in capsys.readouterr().err


def test_shetland_network_risk(cases, tmp_path, capsys):
    case = cases / "shetland"
    run_dir = run_ok(capsys, "netrisk", "--edges", case / "graph_edges.csv", "--nodes", case / "graph_nodes.csv",
                     "--out", tmp_path, "--config", REPO / "saved_states" / "shetland.toml")
    curve = read_rows(run_dir / "robustness.csv")
    assert curve and all(0.0 <= float(r["giant_fraction"]) <= 1.0 for r in curve)
    chokes = read_rows(run_dir / "choke_points.csv")
    assert {r["element"] for r in chokes} == {"node", "edge"}
    assert read_rows(run_dir / "cascade.csv")


def test_density_over_history(cases, tmp_path, capsys):
    case = cases / "baltic"
    run_dir = run_ok(capsys, "density", "--ais", case / "history.csv", "--set", "density.cell_deg=0.1",
                     "--out", tmp_path)
    cells = read_rows(run_dir / "density.csv")
    assert cells and sum(float(r["weight"]) for r in cells) > 0
    meta = json.loads((run_dir / "density_meta.json").read_text())
    assert meta["subcommand"] == "density"


# ============================================================================
# DETERMINISM
# ============================================================================

def tree(run_dir: Path):
    return {p.relative_to(run_dir).as_posix(): p.read_bytes() for p in sorted(run_dir.rglob("*")) if p.is_file()}


def test_same_inputs_give_identical_run_directories(cases, tmp_path, capsys):
    case = cases / "baltic"
    argv = ["anomalies", "--ais", case / "ais.csv", "--uci", case / "uci.geojson",
            "--detections", case / "detections.csv"]
    first = run_ok(capsys, *argv, "--out", tmp_path / "a")
    second = run_ok(capsys, *argv, "--out", tmp_path / "b")
    assert first.name == second.name
    assert tree(first) == tree(second)


def test_scenarios_are_reproducible(cases, tmp_path, capsys):
    again = run_ok(capsys, "scenario", "--name", "all", "--out", tmp_path)
    assert tree(again) == tree(cases)
    other = run_ok(capsys, "scenario", "--name", "all", "--seed", 1, "--out", tmp_path)
    assert other.name != again.name
