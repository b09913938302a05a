from strata_morse.algebra import GradedPoly
from strata_morse.morse import MorseProblem, parse_problem, run_checks
from strata_morse.spectral import SpectralModel, spectrum, sweep
from strata_morse.topology import global_cohomology, parse_space

__all__ = [
    "GradedPoly",
    "MorseProblem",
    "SpectralModel",
    "global_cohomology",
    "parse_problem",
    "parse_space",
    "run_checks",
    "spectrum",
    "sweep",
]
