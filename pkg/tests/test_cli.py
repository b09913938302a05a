import csv
import io
import json
from fractions import Fraction

import pytest

from strata_morse.cli import example_problem_files, load_problem_file
from strata_morse.exceptions import ProblemFileError
from strata_morse.run import main

SPINDLE_SMALL = {
    "version": 1,
    "spectral": {
        "kind": "spindle_circle",
        "grid_points": 60,
        "mode_cutoff": 0,
        "epsilon_list": [0, 10],
    },
}

TORUS_WITHOUT_SADDLES = {
    "version": 1,
    "morse": {
        "space": {"torus": 2},
        "components": [
            {"name": "min", "base": "point", "stable": [{"disc": 2}]},
            {"name": "max", "unstable": [{"disc": 2}]},
        ],
    },
}


def write(tmp_path, name, payload) -> str:
    path = tmp_path / name
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestCohomologyCommand:
    def test_json(self, problems_dir, capsys):
        code = main(
            ["cohomology", str(problems_dir / "torus2_cohomology.json"), "--format", "json"]
        )
        assert code == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["poincare"] == "1+2b+b^2"
        assert summary["betti"] == [1, 2, 1]
        assert summary["witt"] is True
        assert summary["strata"] == []

    def test_text(self, problems_dir, capsys):
        path = problems_dir / "suspension_torus_gamma_cohomology.json"
        assert main(["cohomology", str(path)]) == 0
        out = capsys.readouterr().out
        assert "P(b) = 1+b+b^2+b^3" in out
        assert "dφ∧(dθ1-dθ2)" in out
        assert "Witt: no" in out
        assert "self-dual: yes" in out

    def test_csv(self, problems_dir, capsys):
        path = problems_dir / "suspension_torus_dtheta1_cohomology.json"
        assert main(["cohomology", str(path), "--format", "csv"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0] == ["degree", "label"]
        assert rows[1:] == [
            ["0", "1"],
            ["1", "dθ1"],
            ["2", "dφ∧dθ2"],
            ["3", "dφ∧dθ1∧dθ2"],
        ]

    def test_output_is_deterministic(self, problems_dir, capsys):
        path = str(problems_dir / "suspension_torus_gamma_cohomology.json")
        main(["cohomology", path, "--format", "json"])
        first = capsys.readouterr().out
        main(["cohomology", path, "--format", "json"])
        assert capsys.readouterr().out == first


class TestMorseCommand:
    def test_torus_passes(self, problems_dir, capsys):
        path = str(problems_dir / "torus_height.json")
        assert main(["morse", path, "--format", "json", "--threads", "2"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["morse"] == "1+3b+2b^2"
        assert summary["morse_flipped"] == "2+3b+b^2"
        assert summary["strong"]["quotient"] == "b"
        assert summary["all_passed"] is True

    def test_csv_lists_the_components(self, problems_dir, capsys):
        assert main(["morse", str(problems_dir / "spindle.json"), "--format", "csv"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0][0] == "name"
        assert [row[0] for row in rows[1:]] == ["minimum", "maximum"]

    def test_text(self, problems_dir, capsys):
        assert main(["morse", str(problems_dir / "suspension_torus_gamma.json")]) == 0
        out = capsys.readouterr().out
        assert "M(h)  = 1+b+b^2+b^3" in out
        assert "all checks passed: yes" in out

    def test_failed_check_exits_with_one(self, tmp_path, capsys):
        path = write(tmp_path, "broken.json", TORUS_WITHOUT_SADDLES)
        assert main(["morse", path, "--format", "json"]) == 1
        summary = json.loads(capsys.readouterr().out)
        assert summary["all_passed"] is False
        assert summary["strong"]["holds"] is False


class TestInputErrors:
    @pytest.mark.parametrize(
        "payload",
        [
            "{\n  \"version\": 1,\n  \"space\": {\"torus\": 2},\n}",
            {"version": 2, "space": {"torus": 2}},
            {"version": 1, "space": {"torus": 2}, "colour": "red"},
            {"version": 1, "space": {"torus": 2}, "morse": {"space": {"torus": 2}}},
            {"version": 1, "space": {"suspension": {"link": {"torus": 2}, "w": [[1]]}}},
            {"version": 1, "spectral": {"kind": "spindle_circle", "w": [[1, 0]]}},
        ],
    )
    def test_exit_code_two(self, tmp_path, capsys, payload):
        path = write(tmp_path, "bad.json", payload)
        assert main(["cohomology", path]) == 2
        assert "error" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["morse", str(tmp_path / "absent.json")]) == 2

    def test_wrong_command_for_the_file(self, problems_dir):
        assert main(["cohomology", str(problems_dir / "torus_height.json")]) == 2

    def test_invalid_override(self, tmp_path):
        path = write(tmp_path, "spindle.json", SPINDLE_SMALL)
        assert main(["spectral", path, "--threshold", "0"]) == 2
        assert main(["spectral", path, "--grid", "10"]) == 2

    def test_bad_json_reports_its_line(self, tmp_path):
        path = write(tmp_path, "bad.json", "{\n  \"version\": 1,\n  \"space\": ,\n}")
        with pytest.raises(ProblemFileError) as error:
            load_problem_file(path)
        assert error.value.line == 3
        assert "line 3: invalid JSON" in str(error.value)

    def test_payload_errors_point_at_the_line(self, tmp_path):
        payload = (
            "{\n"
            '  "version": 1,\n'
            '  "space": {\n'
            '    "suspension": {\n'
            '      "link": {"torus": 2},\n'
            '      "w": [[1]]\n'
            "    }\n"
            "  }\n"
            "}\n"
        )
        path = write(tmp_path, "bad.json", payload)
        with pytest.raises(ProblemFileError) as error:
            load_problem_file(path)
        assert error.value.line == 6
        assert "space.suspension.w" in str(error.value)

    def test_unknown_field_points_at_the_line(self, tmp_path):
        payload = '{\n  "version": 1,\n  "space": {"torus": 2},\n  "colour": 1\n}\n'
        with pytest.raises(ProblemFileError) as error:
            load_problem_file(write(tmp_path, "bad.json", payload))
        assert error.value.line == 4


class TestSpectralCommand:
    def test_sweep_and_outputs(self, tmp_path, capsys):
        path = write(tmp_path, "spindle.json", SPINDLE_SMALL)
        out_dir = tmp_path / "out"
        code = main(["spectral", path, "--format", "json", "--out", str(out_dir)])
        assert code == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["stable"] is True
        assert summary["counts"] == [1, 0, 1]
        assert summary["agreement"]["agree"] is True
        assert [r["epsilon"] for r in summary["reports"]] == [0.0, 10.0]
        assert json.loads((out_dir / "spindle.json").read_text()) == summary
        rows = list(csv.reader(io.StringIO((out_dir / "spindle.csv").read_text())))
        assert rows[0] == ["epsilon", "degree", "index", "eigenvalue"]
        assert {row[1] for row in rows[1:]} == {"0", "1", "2"}

    def test_epsilon_override(self, tmp_path, capsys):
        path = write(tmp_path, "spindle.json", SPINDLE_SMALL)
        assert main(["spectral", path, "--epsilon", "2, 5", "--format", "json"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["model"]["epsilon_list"] == ["2", "5"]
        assert summary["stable_from"] == 2.0

    def test_single_epsilon_uses_the_gap_ratio(self, tmp_path, capsys):
        path = write(tmp_path, "spindle.json", SPINDLE_SMALL)
        assert main(["spectral", path, "--epsilon", "10"]) == 0
        out = capsys.readouterr().out
        assert "stable: yes from epsilon 10" in out
        assert "agreement: yes" in out


def test_examples_command(tmp_path, capsys):
    assert main(["examples", "--out", str(tmp_path)]) == 0
    written = capsys.readouterr().out.split()
    assert written == [f"{name}.json" for name in example_problem_files()]
    for name in written:
        assert load_problem_file(tmp_path / name).version == 1


class TestExactParameters:
    def test_float_values_survive_loading(self, tmp_path):
        payload = {
            "version": 1,
            "spectral": {
                "kind": "spindle_circle",
                "grid_points": 60,
                "threshold": 1e-8,
                "epsilon_list": [1e-7, 3e-7, 0.1],
            },
        }
        problem = load_problem_file(write(tmp_path, "tiny.json", payload))
        assert problem.spectral.threshold == Fraction(1, 10**8)
        assert problem.spectral.epsilon_list == [
            Fraction(1, 10**7),
            Fraction(3, 10**7),
            Fraction(1, 10),
        ]

    def test_small_threshold_runs(self, tmp_path, capsys):
        payload = {
            "version": 1,
            "spectral": dict(SPINDLE_SMALL["spectral"], threshold=1e-8),
        }
        path = write(tmp_path, "spindle.json", payload)
        assert main(["spectral", path, "--format", "json"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["model"]["threshold"] == "1/100000000"
        assert all(r["threshold"] == pytest.approx(1e-8) for r in summary["reports"])
