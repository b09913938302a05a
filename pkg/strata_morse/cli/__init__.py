from strata_morse.cli.commands import (
    CommandOutput,
    cmd_cohomology,
    cmd_examples,
    cmd_morse,
    cmd_spectral,
    example_problem_files,
)
from strata_morse.cli.problem_file import (
    OutputOptions,
    ProblemFile,
    load_problem_file,
    parse_problem_text,
)

__all__ = [
    "CommandOutput",
    "OutputOptions",
    "ProblemFile",
    "cmd_cohomology",
    "cmd_examples",
    "cmd_morse",
    "cmd_spectral",
    "example_problem_files",
    "load_problem_file",
    "parse_problem_text",
]
