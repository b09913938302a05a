class StrataMorseError(Exception):
    """Base class of every error raised by `strata_morse`."""


class PolyOverflowError(StrataMorseError, OverflowError):
    """A polynomial coefficient left the checked machine-integer range."""


class DegreeOverflowError(StrataMorseError, ValueError):
    """A polynomial has a degree above the dimension it is reflected in."""


class SpaceValidationError(StrataMorseError, ValueError):
    """A space expression violates the constructor grammar or its invariants."""


class PerversityError(StrataMorseError, ValueError):
    """A perversity subspace is inconsistent with its link, or a star is missing."""


class CohomologyError(StrataMorseError, ValueError):
    """The cohomology engine was asked for something outside its domain."""


class MorseDataError(StrataMorseError, ValueError):
    """Critical-component data is inconsistent with the ambient space."""


class SpectralAssemblyError(StrataMorseError, RuntimeError):
    """Assembling or diagonalizing a discretized Witten Laplacian failed."""


class ProblemFileError(StrataMorseError, ValueError):
    """A problem file could not be read or validated.

    Args:
        message (str): The error message.
        line (int | None): The 1-based line of the offending input, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
