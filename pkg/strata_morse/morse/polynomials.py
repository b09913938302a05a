import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import reduce

from strata_morse.algebra import GradedPoly
from strata_morse.exceptions import MorseDataError
from strata_morse.morse.schemas import CriticalComponent, MorseProblem
from strata_morse.topology import (
    Cone,
    GradedBasis,
    Point,
    Product,
    SpaceExpr,
    Suspension,
    attracting_cohomology,
    describe,
    expanding_cohomology,
    global_cohomology,
    transform_perversity,
)
from strata_morse.topology.cohomology import kunneth
from strata_morse.topology.perversity import TransformMode
from strata_morse.topology.space import _build

logger = logging.getLogger(__name__)


def local_cohomology(c: CriticalComponent) -> GradedBasis:
    """Labeled local cohomology of the fundamental neighbourhood of `c`.

    Künneth product of the base cohomology, the Neumann cohomology of every stable
    factor and the Dirichlet cohomology of every unstable factor.
    """
    bases = [global_cohomology(c.base)]
    bases += [attracting_cohomology(f) for f in c.stable]
    bases += [expanding_cohomology(f) for f in c.unstable]
    return reduce(kunneth, bases)


def local_morse_poly(c: CriticalComponent) -> GradedPoly:
    polys = [global_cohomology(c.base).poly]
    polys += [attracting_cohomology(f).poly for f in c.stable]
    polys += [expanding_cohomology(f).poly for f in c.unstable]
    return reduce(GradedPoly.mul, polys, GradedPoly.one())


def morse_polynomial(p: MorseProblem, max_workers: int = 1) -> GradedPoly:
    """Sum of the local Morse polynomials over all critical components.

    Args:
        p (MorseProblem): The problem.
        max_workers (int): Threads used for the per-component polynomials.

    Returns:
        GradedPoly: `M(b)`.
    """
    if max_workers > 1 and len(p.components) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            local_polys = list(executor.map(local_morse_poly, p.components))
    else:
        local_polys = [local_morse_poly(c) for c in p.components]
    for component, poly in zip(p.components, local_polys):
        logger.debug("local Morse polynomial of %s: %s", component.name, poly)
    return reduce(GradedPoly.add, local_polys, GradedPoly.zero())


def _factors(s: SpaceExpr) -> list[SpaceExpr]:
    if isinstance(s, Product):
        return _factors(s.left) + _factors(s.right)
    return [s]


def suspension_height_problem(s: SpaceExpr) -> MorseProblem:
    """The height function `h = cos φ` on a suspension, pulled back to products.

    The minimum at `φ = π` has the cone over the link as attracting factor and the
    maximum at `φ = 0` has it as expanding factor. For `Σ(Z) × F` both critical
    sets are copies of `F`.

    Raises:
        MorseDataError: If `s` is not a suspension times closed factors.
    """
    factors = _factors(s)
    suspensions = [f for f in factors if isinstance(f, Suspension)]
    if len(suspensions) != 1:
        raise MorseDataError(
            f"{describe(s)}: expected exactly one suspension factor, "
            f"found {len(suspensions)}"
        )
    sigma = suspensions[0]
    rest = [f for f in factors if f is not sigma]
    if not rest:
        base: SpaceExpr = Point()
    else:
        base = rest[0]
        for factor in rest[1:]:
            base = _build(Product, left=base, right=factor)
    normal_cone = _build(Cone, link=sigma.link, w=sigma.w)
    return MorseProblem(
        label=f"height function on {describe(s)}",
        space=s,
        components=(
            CriticalComponent(
                name="minimum",
                base=base,
                stable=(normal_cone,),
                h_value=Fraction(-1),
            ),
            CriticalComponent(
                name="maximum",
                base=base,
                unstable=(normal_cone,),
                h_value=Fraction(1),
            ),
        ),
    )


def flip_problem(p: MorseProblem) -> MorseProblem:
    """Critical data of `-h`: attracting and expanding factors swap."""
    return MorseProblem(
        label=p.label,
        space=p.space,
        components=tuple(
            c.model_copy(
                update={
                    "stable": c.unstable,
                    "unstable": c.stable,
                    "h_value": -c.h_value,
                }
            )
            for c in p.components
        ),
    )


def transform_problem(p: MorseProblem, mode: TransformMode) -> MorseProblem:
    """Apply a perversity transform to the space, every base and every factor."""
    return MorseProblem(
        label=p.label,
        space=transform_perversity(p.space, mode),
        components=tuple(
            CriticalComponent(
                name=c.name,
                base=transform_perversity(c.base, mode),
                stable=tuple(transform_perversity(f, mode) for f in c.stable),
                unstable=tuple(transform_perversity(f, mode) for f in c.unstable),
                h_value=c.h_value,
            )
            for c in p.components
        ),
    )
