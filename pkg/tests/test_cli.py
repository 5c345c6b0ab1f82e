import csv
import json

import pytest

from dronedock.cli import EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, main


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(tmp_path, command, doc, out="out"):
    cfg = write_config(tmp_path, doc)
    out_path = tmp_path / out
    code = main([command, "--config", cfg, "--out", str(out_path)])
    return code, out_path


@pytest.fixture(scope="module")
def calibrated_doc(tmp_path_factory):
    """Config carrying the module and wiring fitted by ``calibrate``."""
    tmp = tmp_path_factory.mktemp("cal")
    code, out = run(tmp, "calibrate", {})
    assert code == EXIT_OK
    fitted = json.loads(out.read_text())
    return {"module": fitted["module"], "network": {"r_wiring": fitted["r_wiring"]}}


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestSweep:
    def test_default_grid(self, tmp_path):
        code, out = run(tmp_path, "sweep", {"network": {"topology": "SC"}})
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert len(lines) == 101
        assert lines[0].startswith("r_load_ohm,")

    def test_bad_range(self, tmp_path, capsys):
        code, _ = run(tmp_path, "sweep", {"sweep": {"r_min": 50, "r_max": 10}})
        assert code == EXIT_INPUT
        assert "r_min must be < r_max" in capsys.readouterr().err

    def test_calibrated_peak(self, tmp_path, calibrated_doc):
        code, out = run(tmp_path, "sweep", calibrated_doc)
        assert code == EXIT_OK
        peak = max(float(row["p_out_w"]) for row in read_csv(out))
        assert peak == pytest.approx(96.5, rel=0.01)

    def test_stdout_clean(self, tmp_path, capsys):
        run(tmp_path, "sweep", {})
        assert capsys.readouterr().out == ""

    def test_multiple_topologies_rejected(self, tmp_path):
        code, _ = run(tmp_path, "sweep", {"network": {"topology": ["SC", "PC"]}})
        assert code == EXIT_INPUT


class TestCompare:
    def test_calibrated_ratio(self, tmp_path, calibrated_doc):
        doc = dict(calibrated_doc, network=dict(calibrated_doc["network"], topology=["SC", "PC", "PCD"]))
        code, out = run(tmp_path, "compare", doc)
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["sc_pc_peak_ratio"] >= 1.8
        assert [e["topology"] for e in report["topologies"]] == ["SC", "PC", "PCD"]

    def test_single_topology(self, tmp_path):
        code, out = run(tmp_path, "compare", {"network": {"topology": "PC"}})
        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert "sc_pc_peak_ratio" not in report and "sc_peak_ratios" not in report

    def test_missing_file(self, tmp_path, capsys):
        code = main(["compare", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "o")])
        assert code == EXIT_INPUT
        assert "cannot read config" in capsys.readouterr().err

    def test_battery_charge_time(self, tmp_path):
        code, out = run(tmp_path, "compare", {"battery": {"capacity": 50.0}})
        assert code == EXIT_OK
        entry = json.loads(out.read_text())["topologies"][0]
        assert entry["charge_time_h"] == pytest.approx(50.0 / entry["peak_p_out_w"])


class TestCalibrate:
    def test_default_target(self, tmp_path):
        code, out = run(tmp_path, "calibrate", {})
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["report"]["p_out_peak_w"] == pytest.approx(96.5, rel=0.005)
        assert doc["report"]["eta_at_peak"] == pytest.approx(0.566, abs=0.005)
        assert set(doc["module"]) >= {"r_droop", "eta_link", "p_idle"}

    def test_infeasible(self, tmp_path):
        code, out = run(tmp_path, "calibrate", {"calibration": {"p_out_peak": 500.0}})
        assert code == EXIT_INFEASIBLE
        doc = json.loads(out.read_text())
        assert doc["status"] == "infeasible" and doc["best"]

    def test_ratio_disabled(self, tmp_path):
        code, out = run(tmp_path, "calibrate", {"calibration": {"sc_pc_ratio": None}})
        assert code == EXIT_OK
        doc = json.loads(out.read_text())
        assert doc["r_wiring"] == 0.0 and doc["report"]["sc_pc_ratio"] is None

    def test_idempotent(self, tmp_path, calibrated_doc):
        code, out = run(tmp_path, "calibrate", calibrated_doc)
        assert code == EXIT_OK
        again = json.loads(out.read_text())
        for key, value in calibrated_doc["module"].items():
            assert again["module"][key] == pytest.approx(value, abs=1e-6)
        assert again["r_wiring"] == pytest.approx(calibrated_doc["network"]["r_wiring"], abs=1e-6)


class TestAlign:
    @pytest.mark.parametrize("mu, ok", [(0.2, True), (0.3, False)])
    def test_self_locking_is_a_finding(self, tmp_path, mu, ok):
        code, out = run(tmp_path, "align", {"frustum": {"slope_angle_deg": 12.7, "mu": mu}})
        assert code == EXIT_OK
        assert json.loads(out.read_text())["self_locking_ok"] is ok

    def test_negative_mu(self, tmp_path):
        code, _ = run(tmp_path, "align", {"frustum": {"mu": -0.2}})
        assert code == EXIT_INPUT

    def test_missing_frustum(self, tmp_path):
        code, _ = run(tmp_path, "align", {})
        assert code == EXIT_INPUT

    def test_stdout_without_out(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"frustum": {}, "seating": {"dx": 5.0}})
        assert main(["align", "--config", cfg]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["gaps_mm"][0] == pytest.approx(0.0, abs=1e-12)


class TestConfigErrors:
    @pytest.mark.parametrize(
        "doc",
        [
            {"modul": {}},
            {"module": {"r_drop": 0.1}},
            {"network": {"topology": "XC"}},
            {"network": {"gaps": [0, 0]}},
            {"sweep": {"n_points": 1}},
            {"module": {"eta_link": 1.5}},
            {"calibration": {"sc_pc_ratio": "two"}},
        ],
    )
    def test_rejected(self, tmp_path, doc):
        code, _ = run(tmp_path, "sweep", doc)
        assert code == EXIT_INPUT

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["sweep", "--config", str(path), "--out", str(tmp_path / "o")]) == EXIT_INPUT


@pytest.mark.parametrize(
    "command, doc",
    [
        ("sweep", {}),
        ("compare", {"network": {"topology": ["SC", "PC", "PCD"]}}),
        ("calibrate", {}),
        ("align", {"frustum": {}, "seating": {"dx": 3.0, "yaw": 100.0}}),
    ],
)
def test_deterministic(tmp_path, command, doc):
    _, first = run(tmp_path, command, doc, out="a")
    _, second = run(tmp_path, command, doc, out="b")
    assert first.read_bytes() == second.read_bytes()
