"""Command-line client: exit codes, formats, and parity with the service."""

import csv
import io
import json

import pytest

from mobishift import synthetic_inspection_records
from mobishift.cli import main
from mobishift.fleet import CSV_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFactorsCommand:
    def test_table_lists_every_mode(self, capsys):
        code, out, _ = run(capsys, "factors", "--grid", "NL")
        assert code == 0
        for mode in ("car", "cs", "rail", "bus", "bicycle", "walking", "carpool"):
            assert mode in out

    def test_json_matches_service_bytes(self, capsys, client):
        code, out, _ = run(capsys, "factors", "--grid", "NL", "--format", "json")
        assert code == 0
        http = client.get("/api/v1/factors?grid=NL")
        assert out.rstrip("\n").encode() == http.content

    def test_rail_value_on_dutch_grid(self, capsys):
        code, out, _ = run(capsys, "factors", "--grid", "NL", "--format", "json")
        body = json.loads(out)
        rail = next(f for f in body["factors"] if f["mode"] == "rail")
        assert rail["g_per_pkt"] == pytest.approx(101, abs=1)

    def test_unknown_grid_is_domain_error(self, capsys):
        code, _, err = run(capsys, "factors", "--grid", "atlantis")
        assert code == 1
        assert "atlantis" in err


class TestCaseCommand:
    def test_json_matches_service_bytes(self, capsys, client):
        code, out, _ = run(capsys, "case", "calgary", "--format", "json")
        assert code == 0
        http = client.get("/api/v1/case-studies/calgary")
        assert out.rstrip("\n").encode() == http.content

    def test_json_total(self, capsys):
        _, out, _ = run(capsys, "case", "calgary", "--format", "json")
        assert json.loads(out)["total_delta_kg"] == pytest.approx(-84, abs=1)

    def test_table_mentions_total_and_rate(self, capsys):
        code, out, _ = run(capsys, "case", "calgary")
        assert code == 0
        assert "total" in out
        assert "reduction" in out

    def test_csv_rows_parse(self, capsys):
        code, out, _ = run(capsys, "case", "calgary", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        modes = {r["mode"] for r in rows}
        assert "car" in modes and "cs" in modes

    def test_region_aliases(self, capsys):
        for alias in ("nl", "netherlands", "sf", "san-francisco", "calgary"):
            code, out, _ = run(capsys, "case", alias, "--format", "json")
            assert code == 0

    def test_unknown_region_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["case", "gotham"])
        assert exc.value.code == 2

    def test_unknown_scenario_is_usage_error(self, capsys):
        code, _, err = run(capsys, "case", "calgary", "--scenario", "9")
        assert code == 2
        assert "scenario" in err

    def test_inapplicable_scenario_is_domain_error(self, capsys):
        code, _, err = run(capsys, "case", "calgary", "--scenario", "1")
        assert code == 1
        assert "scenario" in err

    def test_no_modal_shift_flag(self, capsys):
        _, out, _ = run(
            capsys, "case", "calgary", "--no-modal-shift", "--format", "json"
        )
        body = json.loads(out)
        assert body["no_modal_shift"] is True
        assert body["total_delta_kg"] == pytest.approx(-175, abs=1)


class TestCalcCommand:
    def write_request(self, tmp_path, payload):
        path = tmp_path / "request.json"
        path.write_text(json.dumps(payload))
        return str(path)

    def test_identical_profiles_cancel(self, capsys, tmp_path):
        profile = {"label": "same", "distances": {"car": 9000.0}}
        path = self.write_request(
            tmp_path, {"before": profile, "during": profile}
        )
        code, out, _ = run(capsys, "calc", "--input", path)
        assert code == 0
        assert json.loads(out)["delta"]["total"] == 0.0

    def test_stdin_input(self, capsys, tmp_path, monkeypatch):
        profile = {"label": "same", "distances": {"bus": 1000.0}}
        payload = json.dumps({"before": profile, "during": profile})
        monkeypatch.setattr("sys.stdin", io.StringIO(payload))
        code, out, _ = run(capsys, "calc", "--input", "-")
        assert code == 0
        assert json.loads(out)["delta"]["total"] == 0.0

    def test_matches_service_bytes(self, capsys, tmp_path, client):
        payload = {
            "before": {"label": "b", "distances": {"car": 10000.0}},
            "during": {"label": "d", "distances": {"car": 8000.0, "cs": 1500.0}},
            "scenario": 2,
        }
        path = self.write_request(tmp_path, payload)
        code, out, _ = run(capsys, "calc", "--input", path)
        http = client.post("/api/v1/calculate", json=payload)
        assert code == 0
        assert out.rstrip("\n").encode() == http.content

    def test_invalid_request_is_data_error(self, capsys, tmp_path):
        path = self.write_request(
            tmp_path,
            {"before": {"distances": {"car": -1.0}}, "during": {"distances": {}}},
        )
        code, _, err = run(capsys, "calc", "--input", path)
        assert code == 1
        assert "error" in err

    def test_missing_file_is_data_error(self, capsys):
        code, _, err = run(capsys, "calc", "--input", "/nonexistent.json")
        assert code == 1


class TestSweepCommand:
    def test_json_matches_service_bytes(self, capsys, client):
        code, out, _ = run(capsys, "sweep", "bus-occupancy", "--format", "json")
        http = client.get("/api/v1/sweeps/bus-occupancy")
        assert code == 0
        assert out.rstrip("\n").encode() == http.content

    def test_grid_range(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep", "grid",
            "--min", "39", "--max", "1397", "--steps", "5",
            "--format", "json",
        )
        assert code == 0
        totals = [p["total_delta_kg"] for p in json.loads(out)["points"]]
        assert len(totals) == 5
        assert totals == sorted(totals)

    def test_csv_output(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "bus-occupancy", "--points", "5,40", "--format", "csv"
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [float(r["bus_occupancy"]) for r in rows] == [5.0, 40.0]

    def test_partial_range_is_domain_error(self, capsys):
        code, _, err = run(capsys, "sweep", "grid", "--min", "39")
        assert code == 1

    def test_unknown_parameter_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "fare"])
        assert exc.value.code == 2


class TestRegressCommand:
    @pytest.fixture()
    def inspection_csv(self, tmp_path):
        records = synthetic_inspection_records(20000, seed=5, malformed_rows=2)
        path = tmp_path / "inspections.csv"
        with path.open("w") as fh:
            fh.write(",".join(CSV_HEADER) + "\n")
            for r in records:
                fh.write(
                    f"{r.vehicle_id},{r.test_date.isoformat()},{r.result},"
                    f"{r.odometer_km},{r.first_use_date.isoformat()}\n"
                )
        return str(path)

    def test_age_regression(self, capsys, inspection_csv):
        code, out, _ = run(
            capsys,
            "regress", "--csv", inspection_csv,
            "--reference-year", "2017",
            "--format", "json",
        )
        assert code == 0
        body = json.loads(out)
        assert body["predictor"] == "age"
        assert body["coefficient"] > 0
        assert body["p_value"] < 0.05
        assert body["rejected_records"] == 2

    def test_table_output(self, capsys, inspection_csv):
        code, out, _ = run(
            capsys, "regress", "--csv", inspection_csv, "--reference-year", "2017"
        )
        assert code == 0
        assert "coef" in out
        assert "pseudo R2" in out

    def test_missing_csv_is_data_error(self, capsys):
        code, _, err = run(
            capsys, "regress", "--csv", "/nope.csv", "--reference-year", "2017"
        )
        assert code == 1


class TestFleetCommand:
    def test_usage_table(self, capsys, tmp_path):
        usage = [
            {"city": "Calgary", "vkt_per_year": 8400000, "fleet_size": 630},
            {"city": "Seattle", "vkt_per_year": 9825000, "fleet_size": 750},
            {"city": "Vancouver", "vkt_per_year": 14700000, "fleet_size": 1275},
            {"city": "Washington D.C.", "vkt_per_year": 5820000, "fleet_size": 600},
        ]
        path = tmp_path / "usage.json"
        path.write_text(json.dumps(usage))
        code, out, _ = run(
            capsys, "fleet", "--usage", str(path), "--format", "json"
        )
        assert code == 0
        body = json.loads(out)
        assert body["usage"]["average_rounded_km"] == 11900

    def test_lifetimes(self, capsys, tmp_path):
        rows = [
            {"label": "low annual", "age_years": 10.6, "annual_km": 18100, "ltm_km": 192000},
            {"label": "scrappage", "age_years": 17.3, "annual_km": 12300, "ltm_km": 213000},
            {"label": "high annual", "age_years": 16.9, "annual_km": 17600, "ltm_km": 298000},
        ]
        path = tmp_path / "lifetimes.json"
        path.write_text(json.dumps(rows))
        code, out, _ = run(
            capsys, "fleet", "--lifetimes", str(path), "--format", "json"
        )
        assert code == 0
        avg = json.loads(out)["lifetimes"]
        assert avg["average_age_years"] == pytest.approx(15.0, abs=0.1)
        assert avg["average_annual_km"] == pytest.approx(16000, abs=100)
        assert avg["average_ltm_km"] == pytest.approx(234000, abs=1000)

    def test_needs_at_least_one_input(self, capsys):
        code, _, err = run(capsys, "fleet")
        assert code == 2


class TestTopLevel:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0

    def test_missing_subcommand_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_data_dir_flag(self, capsys, tmp_path):
        import shutil
        from pathlib import Path

        bundled = Path(__file__).resolve().parents[1] / "src" / "mobishift" / "data"
        target = tmp_path / "data"
        shutil.copytree(bundled, target)
        code, out, _ = run(
            capsys,
            "--data-dir", str(target),
            "case", "calgary", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["total_delta_kg"] == pytest.approx(-84, abs=1)
