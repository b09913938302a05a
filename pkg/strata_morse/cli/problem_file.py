import json
import logging
import re
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from strata_morse.exceptions import ProblemFileError, StrataMorseError
from strata_morse.morse import MorseProblem, parse_problem
from strata_morse.spectral import SpectralModel
from strata_morse.topology import SpaceExpr, parse_space

logger = logging.getLogger(__name__)

ProblemKind = Literal["space", "morse", "spectral"]

_PATH_PREFIX = re.compile(r"^([A-Za-z_][\w\.\[\]]*): ")


class OutputOptions(BaseModel):
    """How a command renders its report.

    Attributes:
        format (Literal["json", "text", "csv"]): The output format.
        verbosity (int): `0` is quiet; positive values enable progress bars.
    """

    model_config = ConfigDict(extra="forbid")

    format: Literal["json", "text", "csv"] = "text"
    verbosity: int = Field(default=0, ge=0)


class ProblemFile(BaseModel):
    """A versioned JSON problem file holding exactly one query.

    The `space` and `morse` payloads are kept as raw JSON and parsed by the
    grammars of `strata_morse.topology` and `strata_morse.morse`, so that their
    errors carry JSON paths.

    !!! example
        ```json
        {
          "version": 1,
          "space": {"suspension": {"link": {"torus": 2}, "w": {"span": [[1, 0]]}}},
          "output": {"format": "text"}
        }
        ```

    Args:
        version (Literal[1]): File format version.
        space (Optional[Any]): A space expression for `cohomology`.
        morse (Optional[Any]): A Morse problem for `morse`.
        spectral (Optional[SpectralModel]): A model for `spectral`.
        output (OutputOptions): Rendering options.
    """

    model_config = ConfigDict(extra="forbid")

    version: Literal[1]
    space: Optional[Any] = None
    morse: Optional[Any] = None
    spectral: Optional[SpectralModel] = None
    output: OutputOptions = OutputOptions()

    @model_validator(mode="after")
    def _exactly_one_query(self):
        present = [
            key
            for key in ("space", "morse", "spectral")
            if getattr(self, key) is not None
        ]
        if len(present) != 1:
            raise ValueError(
                "expected exactly one of 'space', 'morse' or 'spectral', "
                f"got {present or 'none'}"
            )
        return self

    @property
    def kind(self) -> ProblemKind:
        if self.space is not None:
            return "space"
        return "morse" if self.morse is not None else "spectral"

    def space_expr(self) -> SpaceExpr:
        return parse_space(self.space, "space")

    def morse_problem(self) -> MorseProblem:
        return parse_problem(self.morse, "morse")


def locate(text: str, path: list[Union[str, int]]) -> Optional[int]:
    """Best-effort 1-based line of a JSON path inside `text`.

    Keys are searched for in order, each after the previous match; list indices
    are skipped.
    """
    position, found = 0, False
    for part in path:
        if not isinstance(part, str):
            continue
        index = text.find(f'"{part}"', position)
        if index < 0:
            break
        position, found = index, True
    return text.count("\n", 0, position) + 1 if found else None


def _split_path(path: str) -> list[Union[str, int]]:
    parts: list[Union[str, int]] = []
    for token in re.findall(r"[^\.\[\]]+|\[\d+\]", path):
        parts.append(int(token[1:-1]) if token.startswith("[") else token)
    return parts


def _validation_error(text: str, error: ValidationError) -> ProblemFileError:
    first = error.errors()[0]
    loc = [part for part in first["loc"] if isinstance(part, (str, int))]
    where = ".".join(str(part) for part in loc) or "file"
    return ProblemFileError(f"{where}: {first['msg']}", locate(text, loc))


def _domain_error(text: str, error: StrataMorseError) -> ProblemFileError:
    message = str(error)
    match = _PATH_PREFIX.match(message)
    line = locate(text, _split_path(match.group(1))) if match else None
    return ProblemFileError(message, line)


def parse_problem_text(text: str) -> ProblemFile:
    """Parse and fully validate a problem file.

    The file is schema-validated and its space or Morse payload parsed, so a
    returned `ProblemFile` is ready to dispatch.

    Raises:
        ProblemFileError: On malformed JSON, schema violations, unknown fields or
            an invalid payload; the message is anchored to a line when possible.
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as error:
        raise ProblemFileError(f"invalid JSON: {error.msg}", error.lineno) from error
    if not isinstance(payload, dict):
        raise ProblemFileError("a problem file must hold a JSON object", 1)
    try:
        problem = ProblemFile.model_validate(payload)
    except ValidationError as error:
        raise _validation_error(text, error) from error
    try:
        if problem.kind == "space":
            problem.space_expr()
        elif problem.kind == "morse":
            problem.morse_problem()
    except StrataMorseError as error:
        raise _domain_error(text, error) from error
    logger.debug("parsed a %s problem file", problem.kind)
    return problem


def load_problem_file(path: Union[str, Path]) -> ProblemFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise ProblemFileError(f"cannot read {path}: {error.strerror}") from error
    try:
        return parse_problem_text(text)
    except ProblemFileError as error:
        wrapped = ProblemFileError(f"{path}: {error}")
        wrapped.line = error.line
        raise wrapped from error
