"""Worked problems shipped with the package, used by `strata-morse examples`."""

from typing import Callable

from strata_morse.morse.polynomials import suspension_height_problem
from strata_morse.morse.schemas import CriticalComponent, MorseProblem
from strata_morse.topology import (
    circle,
    disc,
    point,
    product,
    smooth,
    sphere,
    suspension,
    torus,
)


def torus_height_problem() -> MorseProblem:
    """A non-perfect height function on the torus.

    One minimum, three saddles and two maxima (an upright torus whose top has
    been pushed up into two peaks): `M = 1+3b+2b^2`.
    """
    components = [
        CriticalComponent(name="minimum", base=point(), stable=(disc(2),), h_value=0)
    ]
    components += [
        CriticalComponent(
            name=f"saddle_{i}",
            base=point(),
            stable=(disc(1),),
            unstable=(disc(1),),
            h_value=i,
        )
        for i in (1, 2, 3)
    ]
    components += [
        CriticalComponent(
            name=f"maximum_{i}", base=point(), unstable=(disc(2),), h_value=3 + i
        )
        for i in (1, 2)
    ]
    return MorseProblem(
        label="torus height function", space=torus(2), components=tuple(components)
    )


def suspension_torus_problem(span=((1, 0),)) -> MorseProblem:
    """Height function `cos φ` on `Σ(T²)`, by default with `W = span(dθ1)`."""
    return suspension_height_problem(suspension(torus(2), [list(r) for r in span]))


def self_dual_gamma_problem() -> MorseProblem:
    """`Σ(T²)` with the self-dual perversity spanned by `dθ1+dθ2`."""
    return suspension_torus_problem(((1, 1),))


def full_middle_problem() -> MorseProblem:
    """`Σ(T²)` with `V = H¹(T²)` at both poles: `M = 1+2b+b^3`."""
    return suspension_height_problem(suspension(torus(2), "full"))


def double_suspension_problem() -> MorseProblem:
    """`Σ(Σ(T²))` with `W¹ = span(dθ1)` and `W² = 0`: `M = 1+b+b^3+b^4`."""
    return suspension_height_problem(suspension(suspension(torus(2), [[1, 0]])))


def spindle_problem() -> MorseProblem:
    """The spindle `Σ(S¹)`, a Witt space: `M = 1+b^2`."""
    return suspension_height_problem(suspension(circle()))


def suspension_torus_circle_problem() -> MorseProblem:
    """`Σ(T²) × S¹` with the height function pulled back; critical sets are circles."""
    return suspension_height_problem(product(suspension(torus(2), [[1, 0]]), circle()))


def singular_cubic_problem() -> MorseProblem:
    """Circle-action moment map on the cuspidal cubic surface `zy² = x³` in CP³.

    The surface is entered through its cohomology `1+b^2+b^4`. The critical set
    `{x = z = 0}` is a 2-sphere that attracts in its complex normal direction, and
    the isolated critical point is a maximum with a 4-dimensional expanding disc.
    """
    cubic = smooth(
        "cuspidal cubic surface",
        dim=4,
        classes=[(0, "1"), (2, "ω"), (4, "vol")],
    )
    return MorseProblem(
        label="moment map on the cuspidal cubic surface",
        space=cubic,
        components=(
            CriticalComponent(
                name="critical sphere", base=sphere(2), stable=(disc(2),), h_value=0
            ),
            CriticalComponent(
                name="isolated maximum", base=point(), unstable=(disc(4),), h_value=1
            ),
        ),
    )


EXAMPLES: dict[str, Callable[[], MorseProblem]] = {
    "torus_height": torus_height_problem,
    "suspension_torus_dtheta1": suspension_torus_problem,
    "suspension_torus_gamma": self_dual_gamma_problem,
    "suspension_torus_full_h1": full_middle_problem,
    "double_suspension": double_suspension_problem,
    "spindle": spindle_problem,
    "suspension_torus_times_circle": suspension_torus_circle_problem,
    "singular_cubic_surface": singular_cubic_problem,
}
