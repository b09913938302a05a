import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from pydantic import BaseModel, ValidationError
from rich.console import Console

from strata_morse.cli.problem_file import ProblemFile, ProblemKind
from strata_morse.cli.reporting import (
    cohomology_csv,
    cohomology_summary,
    cohomology_text,
    morse_csv,
    morse_summary,
    morse_text,
    render_json,
    spectral_csv,
    spectral_summary,
    spectral_text,
)
from strata_morse.config import GAP_RATIO_TARGET
from strata_morse.exceptions import ProblemFileError
from strata_morse.morse import EXAMPLES, dump_problem, run_checks
from strata_morse.spectral import (
    SpectralModel,
    SweepReport,
    spectrum,
    sweep,
    symbolic_agreement,
)
from strata_morse.topology import dump_space, suspension, torus

logger = logging.getLogger(__name__)

# status lines go to stderr, reports to stdout
status = Console(stderr=True)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

SHIPPED_SPACES = {
    "torus2_cohomology": lambda: torus(2),
    "suspension_torus_dtheta1_cohomology": lambda: suspension(torus(2), [[1, 0]]),
    "suspension_torus_gamma_cohomology": lambda: suspension(torus(2), [[1, 1]]),
}

SHIPPED_SPECTRAL = {
    "spindle_circle_spectral": {
        "kind": "spindle_circle",
        "grid_points": 400,
        "mode_cutoff": 3,
        "epsilon_list": [2, 5, 10, 20],
    },
    "suspension_torus2_spectral": {
        "kind": "suspension_torus2",
        "w": [[1, 0]],
        "grid_points": 200,
        "mode_cutoff": 2,
        "epsilon_list": [0, 5, 10, 20],
    },
}


class CommandOutput(BaseModel):
    """What a subcommand prints and the status it exits with.

    Attributes:
        text (str): The rendered report.
        exit_code (int): `0` when every check passes, `1` when a mathematical
            check fails.
    """

    text: str
    exit_code: int = EXIT_OK


def _expect(problem: ProblemFile, kind: ProblemKind, command: str) -> None:
    if problem.kind != kind:
        raise ProblemFileError(
            f"`{command}` needs a '{kind}' problem file, got a '{problem.kind}' one"
        )


def cmd_cohomology(problem: ProblemFile, fmt: Optional[str] = None) -> CommandOutput:
    """Global cohomology, Poincaré polynomial, Witt and self-duality flags."""
    _expect(problem, "space", "cohomology")
    fmt = fmt or problem.output.format
    summary = cohomology_summary(problem.space_expr())
    if fmt == "json":
        return CommandOutput(text=render_json(summary))
    if fmt == "csv":
        return CommandOutput(text=cohomology_csv(summary))
    return CommandOutput(text=cohomology_text(summary))


def cmd_morse(
    problem: ProblemFile, fmt: Optional[str] = None, threads: int = 1
) -> CommandOutput:
    """Every Morse check; exits with `1` if any of them fails."""
    _expect(problem, "morse", "morse")
    fmt = fmt or problem.output.format
    report = run_checks(problem.morse_problem(), max_workers=threads)
    exit_code = EXIT_OK if report.all_passed else EXIT_CHECK_FAILED
    if fmt == "json":
        text = render_json(morse_summary(report))
    elif fmt == "csv":
        text = morse_csv(report)
    else:
        text = morse_text(report)
    return CommandOutput(text=text, exit_code=exit_code)


def override_model(
    model: SpectralModel,
    threshold: Optional[str] = None,
    epsilons: Optional[Sequence[Union[str, Fraction]]] = None,
    grid: Optional[int] = None,
) -> SpectralModel:
    """Apply command-line overrides, validating the result like a problem file."""
    payload = model.model_dump()
    if threshold is not None:
        payload["threshold"] = threshold
    if epsilons is not None:
        payload["epsilon_list"] = list(epsilons)
    if grid is not None:
        payload["grid_points"] = grid
    try:
        return SpectralModel.model_validate(payload)
    except ValidationError as error:
        first = error.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ProblemFileError(f"override {where}: {first['msg']}") from error


def run_sweep(
    model: SpectralModel, threads: int = 1, verbosity: int = 0
) -> SweepReport:
    """`sweep`, or a one-report verdict from the gap ratio for a single epsilon."""
    if len(set(model.epsilon_list)) >= 2:
        return sweep(model, threads=threads, verbosity=verbosity)
    report = spectrum(
        model, model.epsilon_list[0], threads=threads, verbosity=verbosity
    )
    stable = report.min_gap_ratio >= GAP_RATIO_TARGET
    return SweepReport(
        reports=[report],
        stable=stable,
        stable_from=report.epsilon if stable else None,
        counts=report.counts if stable else None,
    )


def cmd_spectral(
    problem: ProblemFile,
    fmt: Optional[str] = None,
    threads: int = 1,
    threshold: Optional[str] = None,
    epsilons: Optional[Sequence[Union[str, Fraction]]] = None,
    grid: Optional[int] = None,
    verbosity: int = 0,
    out_dir: Optional[Path] = None,
    name: str = "spectral",
) -> CommandOutput:
    """Sweep the model and compare its counts with the symbolic engine.

    With `out_dir`, the eigenvalue table (CSV) and the summary (JSON) are also
    written there as `<name>.csv` and `<name>.json`. Exits with `1` unless the
    counts are stable and agree with the symbolic engine.
    """
    _expect(problem, "spectral", "spectral")
    fmt = fmt or problem.output.format
    model = override_model(problem.spectral, threshold, epsilons, grid)
    verbosity = max(verbosity, problem.output.verbosity)
    if verbosity:
        status.print(
            f"[cyan]Sweeping {model.kind} over epsilon "
            f"{[str(e) for e in model.epsilon_list]} with N={model.grid_points}[/cyan]"
        )
    report = run_sweep(model, threads=threads, verbosity=verbosity)
    agreement = symbolic_agreement(model, report)
    exit_code = EXIT_OK if report.stable and agreement.agree else EXIT_CHECK_FAILED
    summary = spectral_summary(model, report, agreement)
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / f"{name}.csv").write_text(spectral_csv(report), encoding="utf-8")
        (out_dir / f"{name}.json").write_text(render_json(summary), encoding="utf-8")
        logger.info("wrote %s.csv and %s.json to %s", name, name, out_dir)
    if fmt == "json":
        text = render_json(summary)
    elif fmt == "csv":
        text = spectral_csv(report)
    else:
        text = spectral_text(model, report, agreement)
    return CommandOutput(text=text, exit_code=exit_code)


def _problem_file(key: str, payload: Any) -> dict[str, Any]:
    return {
        "version": 1,
        key: payload,
        "output": {"format": "text", "verbosity": 0},
    }


def example_problem_files() -> dict[str, dict[str, Any]]:
    """Every shipped problem file, by file stem."""
    files = {
        name: _problem_file("morse", dump_problem(builder()))
        for name, builder in EXAMPLES.items()
    }
    files.update(
        {
            name: _problem_file("space", dump_space(builder()))
            for name, builder in SHIPPED_SPACES.items()
        }
    )
    files.update(
        {
            name: _problem_file("spectral", config)
            for name, config in SHIPPED_SPECTRAL.items()
        }
    )
    return dict(sorted(files.items()))


def cmd_examples(out_dir: Path) -> CommandOutput:
    """Write every shipped problem file into `out_dir`."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, payload in example_problem_files().items():
        path = out_dir / f"{name}.json"
        path.write_text(
            json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        written.append(path.name)
    logger.info("wrote %d problem files to %s", len(written), out_dir)
    return CommandOutput(text="".join(f"{name}\n" for name in written))
