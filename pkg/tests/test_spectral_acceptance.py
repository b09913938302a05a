"""Full-size runs of the shipped spectral problems.

Deselected by default; run with `pytest -m slow`.
"""

import json

import pytest

from strata_morse.cli import load_problem_file
from strata_morse.run import main
from strata_morse.spectral import refine


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, counts",
    [
        ("spindle_circle_spectral", [1, 0, 1]),
        ("suspension_torus2_spectral", [1, 1, 1, 1]),
    ],
)
def test_shipped_spectral_problem(name, counts, problems_dir, tmp_path, capsys):
    path = problems_dir / f"{name}.json"
    code = main(["spectral", str(path), "--format", "json", "--out", str(tmp_path)])
    summary = json.loads(capsys.readouterr().out)
    assert code == 0
    assert summary["stable"] is True
    assert summary["counts"] == counts
    assert summary["agreement"]["agree"] is True
    for report in summary["reports"]:
        assert report["asymmetry"] < 1e-10
        assert report["min_eigenvalue"] > -1e-8
        assert report["pairing_defect"] < 1e-6
    assert (tmp_path / f"{name}.csv").exists()


@pytest.mark.slow
def test_refinement_of_the_shipped_spindle(problems_dir):
    problem = load_problem_file(problems_dir / "spindle_circle_spectral.json")
    study = refine(problem.spectral, 10, [100, 200, 400])
    assert [row.grid_points for row in study.rows] == [100, 200, 400]
    assert all(row.counts == [1, 0, 1] for row in study.rows)
    assert all(
        value is None or value < 1e-8 for row in study.rows for value in row.small_max
    )
    assert study.counts_stable
    assert study.small_bounded
    assert study.excluded_converging
    assert study.verdict
