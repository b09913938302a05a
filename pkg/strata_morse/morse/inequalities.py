import logging

from strata_morse.algebra import GradedPoly
from strata_morse.exceptions import DegreeOverflowError
from strata_morse.morse.polynomials import (
    flip_problem,
    local_morse_poly,
    morse_polynomial,
    transform_problem,
)
from strata_morse.morse.schemas import (
    AdjointCheck,
    ComponentRow,
    LefschetzCheck,
    MorseProblem,
    MorseReport,
    RefinedCheck,
    StrongCheck,
)
from strata_morse.topology import (
    describe,
    global_cohomology,
    is_self_dual_space,
    witt_check,
)

logger = logging.getLogger(__name__)


def _poincare(p: MorseProblem) -> GradedPoly:
    return global_cohomology(p.space).poly


def check_strong(p: MorseProblem, max_workers: int = 1) -> StrongCheck:
    """Strong polynomial Morse inequality: `M(b) - P(b) = (1+b) Q(b)` with `Q >= 0`."""
    morse = morse_polynomial(p, max_workers)
    poincare = _poincare(p)
    difference = morse.signed_difference(poincare)
    negative = {k: v for k, v in difference.items() if v < 0}
    if negative:
        return StrongCheck(
            morse=morse,
            poincare=poincare,
            difference=difference,
            holds=False,
            message=f"M - P is negative in degrees {sorted(negative)}",
        )
    quotient = morse.subtract(poincare).divide_one_plus_b()
    if quotient is None:
        return StrongCheck(
            morse=morse,
            poincare=poincare,
            difference=difference,
            holds=False,
            message="M - P is not (1+b) times a nonnegative polynomial",
        )
    return StrongCheck(
        morse=morse,
        poincare=poincare,
        difference=difference,
        quotient=quotient,
        holds=True,
        message=f"M - P = (1+b)({quotient})",
    )


def check_adjoint_duality(p: MorseProblem, max_workers: int = 1) -> AdjointCheck:
    """Compare `b^n M(W, h)(1/b)` with `M(W^⊥, -h)(b)`."""
    adjoint = flip_problem(transform_problem(p, "adjoint"))
    adjoint_morse = morse_polynomial(adjoint, max_workers)
    try:
        reversed_morse = morse_polynomial(p, max_workers).reverse(p.dim)
    except DegreeOverflowError as error:
        return AdjointCheck(
            adjoint_flipped_morse=adjoint_morse, holds=False, message=str(error)
        )
    holds = reversed_morse == adjoint_morse
    return AdjointCheck(
        reversed_morse=reversed_morse,
        adjoint_flipped_morse=adjoint_morse,
        holds=holds,
        message="" if holds else f"{reversed_morse} != {adjoint_morse}",
    )


def refined_morse(p: MorseProblem, max_workers: int = 1) -> RefinedCheck:
    """Refined inequality `min(M(h), M(-h)) - P >= 0`, for self-dual perversities."""
    if not is_self_dual_space(p.space):
        logger.info("%s: perversity is not self-dual, refined check skipped", p.label)
        return RefinedCheck(
            applicable=False, message="some stratum carries a non-self-dual perversity"
        )
    morse = morse_polynomial(p, max_workers)
    flipped = morse_polynomial(flip_problem(p), max_workers)
    refined = morse.coeff_min(flipped)
    reflection = morse.degree() <= p.dim and morse.reverse(p.dim) == flipped
    try:
        error = refined.subtract(_poincare(p))
    except ValueError as violation:
        return RefinedCheck(
            applicable=True,
            refined=refined,
            reflection_holds=reflection,
            holds=False,
            message=str(violation),
        )
    return RefinedCheck(
        applicable=True,
        refined=refined,
        error=error,
        reflection_holds=reflection,
        holds=reflection,
        message="" if reflection else "b^n M(h)(1/b) differs from M(-h)",
    )


def perfectness(p: MorseProblem, max_workers: int = 1) -> dict[int, bool]:
    morse = morse_polynomial(p, max_workers)
    poincare = _poincare(p)
    return {
        k: morse.coefficient(k) == poincare.coefficient(k) for k in range(p.dim + 1)
    }


def lefschetz(p: MorseProblem, max_workers: int = 1) -> LefschetzCheck:
    morse_value = morse_polynomial(p, max_workers).eval_minus_one()
    poincare_value = _poincare(p).eval_minus_one()
    return LefschetzCheck(
        morse_at_minus_one=morse_value,
        poincare_at_minus_one=poincare_value,
        equal=morse_value == poincare_value,
    )


def run_checks(p: MorseProblem, max_workers: int = 1) -> MorseReport:
    """Run every polynomial identity and inequality on one problem.

    Args:
        p (MorseProblem): The problem.
        max_workers (int): Threads for per-component polynomial evaluation.

    Returns:
        MorseReport: All outcomes; `all_passed` summarizes them.
    """
    strong = check_strong(p, max_workers)
    report = MorseReport(
        label=p.label,
        dim=p.dim,
        witt=witt_check(p.space),
        self_dual=is_self_dual_space(p.space),
        morse=strong.morse,
        morse_flipped=morse_polynomial(flip_problem(p), max_workers),
        poincare=strong.poincare,
        strong=strong,
        adjoint=check_adjoint_duality(p, max_workers),
        refined=refined_morse(p, max_workers),
        perfect=perfectness(p, max_workers),
        lefschetz=lefschetz(p, max_workers),
        components=[
            ComponentRow(
                name=c.name,
                h_value=str(c.h_value),
                base=describe(c.base),
                stable=[describe(f) for f in c.stable],
                unstable=[describe(f) for f in c.unstable],
                index=c.index,
                local_poly=local_morse_poly(c),
            )
            for c in sorted(p.components, key=lambda c: (c.h_value, c.name))
        ],
    )
    logger.info("%s: all checks passed = %s", p.label, report.all_passed)
    return report
