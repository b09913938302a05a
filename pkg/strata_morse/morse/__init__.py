from strata_morse.morse.examples import EXAMPLES
from strata_morse.morse.inequalities import (
    check_adjoint_duality,
    check_strong,
    lefschetz,
    perfectness,
    refined_morse,
    run_checks,
)
from strata_morse.morse.polynomials import (
    flip_problem,
    local_cohomology,
    local_morse_poly,
    morse_polynomial,
    suspension_height_problem,
    transform_problem,
)
from strata_morse.morse.schemas import (
    AdjointCheck,
    ComponentRow,
    CriticalComponent,
    LefschetzCheck,
    MorseProblem,
    MorseReport,
    RefinedCheck,
    StrongCheck,
    dump_problem,
    parse_problem,
)

__all__ = [
    "AdjointCheck",
    "ComponentRow",
    "CriticalComponent",
    "EXAMPLES",
    "LefschetzCheck",
    "MorseProblem",
    "MorseReport",
    "RefinedCheck",
    "StrongCheck",
    "check_adjoint_duality",
    "check_strong",
    "dump_problem",
    "flip_problem",
    "lefschetz",
    "local_cohomology",
    "local_morse_poly",
    "morse_polynomial",
    "parse_problem",
    "perfectness",
    "refined_morse",
    "run_checks",
    "suspension_height_problem",
    "transform_problem",
]
