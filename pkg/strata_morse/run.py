import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import rich
from pydantic import ValidationError
from rich.markup import escape

from strata_morse.cli import (
    cmd_cohomology,
    cmd_examples,
    cmd_morse,
    cmd_spectral,
    load_problem_file,
)
from strata_morse.cli.commands import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    CommandOutput,
)
from strata_morse.config import get_log_level, load_environment
from strata_morse.exceptions import (
    ProblemFileError,
    SpectralAssemblyError,
    StrataMorseError,
)
from strata_morse.utils import setup_logging

logger = logging.getLogger(__name__)


def _epsilon_list(value: str) -> list[str]:
    epsilons = [part.strip() for part in value.split(",") if part.strip()]
    if not epsilons:
        raise argparse.ArgumentTypeError("expected a comma-separated list of values")
    return epsilons


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata-morse",
        description="Morse polynomials, L2 cohomology and Witten-Laplacian spectra "
        "on stratified spaces with mezzo-perversities",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase verbosity (-v: info logs and progress bars, -vv: debug)",
    )
    parser.add_argument(
        "--log-dir",
        type=Path,
        default=None,
        help="Also write a timestamped log file into this directory",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_problem_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("problem", type=Path, help="Path to a JSON problem file")
        sub.add_argument(
            "--format",
            choices=["json", "text", "csv"],
            default=None,
            help="Output format (default: the problem file's, else text)",
        )
        sub.add_argument(
            "--threads",
            type=int,
            default=1,
            help="Worker threads for the engines (default: 1)",
        )
        return sub

    add_problem_command("cohomology", "Global cohomology of a space")
    add_problem_command("morse", "Morse inequalities for a Morse problem")
    spectral = add_problem_command(
        "spectral", "Small eigenvalues of a discretized Witten Laplacian"
    )
    spectral.add_argument(
        "--threshold",
        type=str,
        default=None,
        help="Small-eigenvalue cutoff c, or 'auto'",
    )
    spectral.add_argument(
        "--epsilon",
        type=_epsilon_list,
        default=None,
        help="Comma-separated deformation parameters, e.g. '2,5,10,20'",
    )
    spectral.add_argument(
        "--grid", type=int, default=None, help="Number of radial grid cells N"
    )
    spectral.add_argument(
        "--out",
        type=Path,
        default=None,
        help="Directory for the eigenvalue CSV and the JSON summary",
    )

    examples = subparsers.add_parser(
        "examples", help="Write the shipped example problem files"
    )
    examples.add_argument(
        "--out",
        type=Path,
        default=Path("problems"),
        help="Target directory (default: problems)",
    )
    return parser


def _dispatch(args: argparse.Namespace) -> CommandOutput:
    if args.command == "examples":
        return cmd_examples(args.out)
    problem = load_problem_file(args.problem)
    if args.command == "cohomology":
        return cmd_cohomology(problem, args.format)
    if args.command == "morse":
        return cmd_morse(problem, args.format, threads=args.threads)
    return cmd_spectral(
        problem,
        args.format,
        threads=args.threads,
        threshold=args.threshold,
        epsilons=args.epsilon,
        grid=args.grid,
        verbosity=args.verbose,
        out_dir=args.out,
        name=args.problem.stem,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the `strata-morse` command line and return its exit code.

    Exit codes: `0` when every check passes, `1` when a mathematical check
    fails, `2` on invalid input.
    """
    load_environment()
    args = build_parser().parse_args(argv)
    if args.verbose >= 2:
        level = "DEBUG"
    elif args.verbose == 1:
        level = "INFO"
    else:
        level = get_log_level()
    setup_logging(level, log_dir=args.log_dir)

    try:
        output = _dispatch(args)
    except ProblemFileError as error:
        rich.print(f"[red]error: {escape(str(error))}[/red]", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except SpectralAssemblyError as error:
        rich.print(
            f"[red]spectral engine failed: {escape(str(error))}[/red]", file=sys.stderr
        )
        return EXIT_CHECK_FAILED
    except (StrataMorseError, ValidationError, ValueError) as error:
        rich.print(f"[red]error: {escape(str(error))}[/red]", file=sys.stderr)
        return EXIT_INPUT_ERROR
    sys.stdout.write(output.text)
    logger.debug("%s finished with exit code %d", args.command, output.exit_code)
    return output.exit_code


def run_strata_morse() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_strata_morse()
