import logging
from functools import lru_cache
from typing import Union

from strata_morse.exceptions import CohomologyError, PerversityError
from strata_morse.topology.perversity import orthocomplement, subspace_label
from strata_morse.topology.schemas import (
    Cone,
    Disc,
    GradedBasis,
    Product,
    SpaceExpr,
    Subspace,
    Suspension,
)
from strata_morse.topology.space import describe, link_ambient, primitive_cohomology

logger = logging.getLogger(__name__)

CONE_PREFIX = "dx∧"
SUSPENSION_PREFIX = "dφ∧"


def _prefixed(prefix: str, label: str) -> str:
    if label == "1":
        return prefix.rstrip("∧")
    if any(symbol in label for symbol in "+-⊗"):
        label = f"({label})"
    return f"{prefix}{label}"


def _checked_perversity(node: Union[Cone, Suspension]) -> Subspace:
    expected = link_ambient(node.link)
    if node.w.ambient.basis != expected.basis:
        raise PerversityError(
            f"perversity of {describe(node)} is expressed in the basis "
            f"{list(node.w.ambient.basis)}, but the link's middle cohomology has "
            f"basis {list(expected.basis)}"
        )
    return node.w


def _neumann_classes(node: Union[Cone, Suspension]) -> list[tuple[int, str]]:
    l = node.link.dim
    w = _checked_perversity(node)
    link_classes = global_cohomology(node.link).classes
    classes = [(k, label) for k, label in link_classes if 2 * k < l]
    if l % 2 == 0:
        classes += [(l // 2, label) for label in subspace_label(w)]
    return classes


def _dirichlet_classes(
    node: Union[Cone, Suspension], prefix: str
) -> list[tuple[int, str]]:
    l = node.link.dim
    w = _checked_perversity(node)
    classes = []
    if l % 2 == 0:
        classes += [
            (l // 2 + 1, _prefixed(prefix, label))
            for label in subspace_label(orthocomplement(w))
        ]
    link_classes = global_cohomology(node.link).classes
    classes += [
        (k + 1, _prefixed(prefix, label)) for k, label in link_classes if 2 * k > l
    ]
    return classes


def cone_N(c: Cone) -> GradedBasis:
    """Cohomology of a truncated cone with generalized Neumann conditions.

    Degrees below `l/2` carry the link's cohomology; the middle degree carries `W`.

    Args:
        c (Cone): The cone `C(Z)` with its perversity.

    Raises:
        PerversityError: If `W` is not expressed in the link's middle basis.
    """
    return GradedBasis(classes=tuple(_neumann_classes(c)))


def cone_D(c: Cone) -> GradedBasis:
    """Cohomology of a truncated cone with generalized Dirichlet conditions.

    Degree `l/2+1` carries `dx∧W^⊥`; higher degrees carry `dx∧H^{k-1}(Z)`.
    """
    return GradedBasis(classes=tuple(_dirichlet_classes(c, CONE_PREFIX)))


def disc_N(d: Disc) -> GradedBasis:
    return GradedBasis(classes=((0, "1"),))


def disc_D(d: Disc) -> GradedBasis:
    return GradedBasis(classes=((d.m, f"vol(D^{d.m})"),))


def attracting_cohomology(factor: Union[Cone, Disc]) -> GradedBasis:
    """Local cohomology of a stable (attracting) factor, Neumann conditions."""
    if isinstance(factor, Cone):
        return cone_N(factor)
    if isinstance(factor, Disc):
        return disc_N(factor)
    raise CohomologyError(
        f"critical-component factors must be cones or discs, got {factor.kind}"
    )


def expanding_cohomology(factor: Union[Cone, Disc]) -> GradedBasis:
    """Local cohomology of an unstable (expanding) factor, Dirichlet conditions."""
    if isinstance(factor, Cone):
        return cone_D(factor)
    if isinstance(factor, Disc):
        return disc_D(factor)
    raise CohomologyError(
        f"critical-component factors must be cones or discs, got {factor.kind}"
    )


def suspension_cohomology(s: Suspension) -> GradedBasis:
    """Global cohomology of a suspension, glued from its two cone halves.

    The lower pole contributes the Neumann classes and the upper pole the
    `dφ∧`-suspended Dirichlet classes.
    """
    classes = _neumann_classes(s) + _dirichlet_classes(s, SUSPENSION_PREFIX)
    return GradedBasis(classes=tuple(classes))


def kunneth(left: GradedBasis, right: GradedBasis) -> GradedBasis:
    return GradedBasis(
        classes=tuple(
            (k1 + k2, _tensor_label(a, b))
            for k1, a in left.classes
            for k2, b in right.classes
        )
    )


def _tensor_label(a: str, b: str) -> str:
    return f"{a}⊗{b}"


@lru_cache(maxsize=1024)
def global_cohomology(s: SpaceExpr) -> GradedBasis:
    """L² cohomology of a closed space expression with its mezzo-perversities.

    Results are memoized per (immutable) expression node.

    Raises:
        CohomologyError: If a Cone or Disc appears where a closed space is required.
    """
    logger.debug("global cohomology of %s", describe(s))
    if isinstance(s, (Cone, Disc)):
        raise CohomologyError(
            f"{describe(s)} is not closed; cones and discs only appear as "
            "critical-component factors"
        )
    if isinstance(s, Suspension):
        return suspension_cohomology(s)
    if isinstance(s, Product):
        return kunneth(global_cohomology(s.left), global_cohomology(s.right))
    return primitive_cohomology(s)
