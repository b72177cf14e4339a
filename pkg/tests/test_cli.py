import json
import math
from importlib import resources

import jsonschema
import pytest

from covest import __version__
from covest.cli import SCALING_HEADER, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def load_schema():
    path = resources.files("covest") / "schemas" / "run.schema.json"
    return json.loads(path.read_text())


def csv_lines(out):
    return [line for line in out.splitlines() if not line.startswith("#")]


class TestPhaseOpt:
    def test_exact(self, capsys):
        code, payload = run_json(capsys, "phase-opt", "--n", "2")
        assert code == 0
        assert payload["result"]["error"] == pytest.approx(0.146447, abs=1e-6)
        assert payload["manifest"]["version"] == __version__

    def test_bdm(self, capsys):
        code, payload = run_json(capsys, "phase-opt", "--n", "2", "--method", "bdm")
        assert code == 0
        assert payload["result"]["error"] == pytest.approx(1.0 / 6.0, abs=1e-12)

    def test_bdm_rejects_n0(self, capsys):
        code = main(["phase-opt", "--n", "0", "--method", "bdm"])
        assert code == 1

    def test_unknown_method_rejected(self):
        with pytest.raises(SystemExit) as exc:
            main(["phase-opt", "--n", "2", "--method", "sideways"])
        assert exc.value.code == 1


class TestSu2Design:
    def test_external_n3(self, capsys):
        code, payload = run_json(capsys, "su2-design", "--n", "3")
        assert code == 0
        assert payload["result"]["error"] == pytest.approx(0.25, abs=1e-12)
        dims = [b["dim"] for b in payload["result"]["blocks"]]
        assert dims == [2, 4]

    def test_self_entangled_n1_infeasible(self, capsys):
        code = main(["su2-design", "--n", "1", "--mode", "self-entangled"])
        assert code == 1

    def test_external_n999_scaling(self, capsys):
        code, payload = run_json(capsys, "su2-design", "--n", "999")
        assert code == 0
        ratio = payload["result"]["error"] * 999**2 / math.pi**2
        assert 0.95 <= ratio <= 1.05


class TestVerifyIntegrals:
    def test_small_table_passes(self, capsys):
        code, payload = run_json(capsys, "verify-integrals", "--kmax", "5")
        assert code == 0
        assert all(row["pass"] for row in payload["result"]["identities"])

    def test_impossible_tolerance_fails(self, capsys):
        code, payload = run_json(
            capsys, "verify-integrals", "--kmax", "3", "--tol", "1e-16"
        )
        assert code == 2
        assert not payload["result"]["pass"]


class TestSimulateCommand:
    def test_deterministic_report(self, capsys):
        args = ["simulate", "--protocol", "phase", "--n", "7",
                "--trials", "20000", "--seed", "42"]
        code1, payload1 = run_json(capsys, *args)
        code2, payload2 = run_json(capsys, *args)
        assert code1 == code2 == 0
        del payload1["manifest"]["timestamp"], payload2["manifest"]["timestamp"]
        assert payload1 == payload2

    def test_su2_run_passes(self, capsys):
        code, payload = run_json(
            capsys, "simulate", "--protocol", "su2", "--n", "5", "--trials", "50000"
        )
        assert code == 0
        assert abs(payload["result"]["z_score"]) < 4.0

    def test_zero_trials_rejected(self, capsys):
        code = main(["simulate", "--protocol", "phase", "--n", "1", "--trials", "0"])
        assert code == 1

    def test_even_n_su2_rejected(self, capsys):
        code = main(["simulate", "--protocol", "su2", "--n", "4", "--trials", "100"])
        assert code == 1


class TestScaling:
    def test_csv_header_exact(self, capsys):
        code, out = run_cli(capsys, "scaling", "--max-n", "10", "--format", "csv")
        assert code == 0
        lines = csv_lines(out)
        assert lines[0] == SCALING_HEADER
        assert len(lines) == 11  # header + 10 rows

    def test_exact_errors_monotone(self, capsys):
        code, payload = run_json(capsys, "scaling", "--max-n", "10")
        rows = payload["result"]["rows"]
        exact = [row["phase_exact"] for row in rows]
        assert exact == sorted(exact, reverse=True)

    def test_large_n_ratios(self, capsys):
        code, payload = run_json(
            capsys, "scaling", "--max-n", "1000", "--step", "500"
        )
        last = payload["result"]["rows"][-1]
        assert last["phase_exact"] / last["phase_asymptote"] == pytest.approx(
            1.0, rel=0.05
        )
        assert last["su2_error"] / last["su2_asymptote"] == pytest.approx(
            1.0, rel=0.05
        )


class TestOutputContracts:
    @pytest.mark.parametrize(
        "argv",
        [
            ["phase-opt", "--n", "3"],
            ["su2-design", "--n", "5", "--mode", "self-entangled"],
            ["verify-integrals", "--kmax", "2"],
            ["scaling", "--max-n", "4"],
            ["simulate", "--protocol", "phase", "--n", "2", "--trials", "5000"],
        ],
    )
    def test_json_validates_against_schema(self, capsys, argv):
        _, payload = run_json(capsys, *argv)
        jsonschema.validate(payload, load_schema())

    def test_output_file_and_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("COVEST_OUTPUT_DIR", str(tmp_path))
        code = main(["phase-opt", "--n", "1", "--output", "report.json"])
        assert code == 0
        payload = json.loads((tmp_path / "report.json").read_text())
        assert payload["result"]["error"] == pytest.approx(0.25, abs=1e-12)

    def test_csv_carries_manifest_comments(self, capsys):
        _, out = run_cli(capsys, "phase-opt", "--n", "1", "--format", "csv")
        assert "# command=phase-opt" in out
        assert f"# version={__version__}" in out

    def test_missing_command_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 1
