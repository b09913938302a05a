import argparse
import json
from pathlib import Path

from rich.console import Console
from rich.table import Table

from strata_morse.cli import cmd_spectral, load_problem_file
from strata_morse.spectral import heat_supertrace, refine
from strata_morse.utils import setup_logging

SPECTRAL_PROBLEMS = ["spindle_circle_spectral", "suspension_torus2_spectral"]


def main():
    parser = argparse.ArgumentParser(
        description="Run the shipped spectral problems, a grid-refinement study "
        "and the heat supertrace, and save every report"
    )
    parser.add_argument(
        "--problems",
        type=Path,
        default=Path("problems"),
        help="Directory holding the shipped problem files (default: problems)",
    )
    parser.add_argument(
        "--results",
        type=Path,
        default=Path("results"),
        help="Directory for the CSV and JSON reports (default: results)",
    )
    parser.add_argument(
        "--grids",
        type=int,
        nargs="+",
        default=[100, 200, 400],
        help="Radial grids for the refinement study (default: 100 200 400)",
    )
    parser.add_argument(
        "--epsilon",
        type=float,
        default=10.0,
        help="Deformation parameter of the refinement and heat runs (default: 10)",
    )
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    setup_logging("INFO")
    console = Console()
    args.results.mkdir(parents=True, exist_ok=True)

    failures = 0
    for name in SPECTRAL_PROBLEMS:
        problem = load_problem_file(args.problems / f"{name}.json")
        output = cmd_spectral(
            problem,
            "text",
            threads=args.threads,
            verbosity=1,
            out_dir=args.results,
            name=name,
        )
        console.print(output.text, markup=False)
        failures += output.exit_code != 0

        study = refine(problem.spectral, args.epsilon, args.grids, threads=args.threads)
        table = Table(title=f"{name}: refinement at epsilon {args.epsilon:g}")
        table.add_column("N", justify="right")
        table.add_column("counts")
        table.add_column("largest small")
        table.add_column("first excluded")
        for row in study.rows:
            table.add_row(
                str(row.grid_points),
                str(row.counts),
                str([f"{v:.3g}" if v is not None else "-" for v in row.small_max]),
                str([f"{v:.6g}" if v is not None else "-" for v in row.first_excluded]),
            )
        console.print(table)
        console.print(f"refinement verdict: {'yes' if study.verdict else 'no'}")
        failures += not study.verdict

        heat = heat_supertrace(
            problem.spectral, args.epsilon, [0.01, 0.1, 1.0, 10.0], threads=args.threads
        )
        for result in heat:
            console.print(
                f"t={result.t:g}: L(-1,t)={result.supertrace:.9f}, "
                f"P(-1)={result.poincare_at_minus_one}, "
                f"remainder={result.remainder:.2e}"
            )
        (args.results / f"{name}_refinement.json").write_text(
            json.dumps(
                {
                    "refinement": study.model_dump(),
                    "verdict": study.verdict,
                    "heat": [result.model_dump() for result in heat],
                },
                indent=2,
            )
            + "\n",
            encoding="utf-8",
        )

    console.print(
        "[green]all acceptance runs passed[/green]"
        if failures == 0
        else f"[red]{failures} acceptance check(s) failed[/red]"
    )
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
