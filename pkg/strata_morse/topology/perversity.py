import logging
from typing import Literal

from sympy.matrices import Matrix

from strata_morse.exceptions import PerversityError
from strata_morse.topology.schemas import (
    Cone,
    Product,
    SpaceExpr,
    Subspace,
    Suspension,
)
from strata_morse.topology.space import _build, iter_conical, link_ambient

logger = logging.getLogger(__name__)

TransformMode = Literal["adjoint", "poincare_dual"]


def orthocomplement(w: Subspace) -> Subspace:
    """Orthogonal complement of `w` under the declared orthonormal inner product."""
    if w.dim == 0:
        return Subspace.full(w.ambient)
    if w.dim == w.ambient.dim:
        return Subspace.zero(w.ambient)
    kernel = Matrix(w.span).nullspace()
    return Subspace(ambient=w.ambient, span=[tuple(vector) for vector in kernel])


def star_image(w: Subspace) -> Subspace:
    """Image of `w` under the Hodge star of its ambient.

    Raises:
        PerversityError: If the ambient has no star.
    """
    if w.ambient.dim == 0 or w.dim == 0:
        return w
    if not w.ambient.has_star:
        raise PerversityError(
            f"the middle cohomology spanned by {list(w.ambient.basis)} has no Hodge star"
        )
    star = Matrix(w.ambient.star)
    images = [tuple(star * Matrix(row)) for row in w.span]
    return Subspace(ambient=w.ambient, span=images)


def dual(w: Subspace) -> Subspace:
    """The Poincaré dual perversity, the star of the orthocomplement."""
    return star_image(orthocomplement(w))


def is_self_dual(w: Subspace) -> bool:
    return dual(w) == w


def subspace_label(w: Subspace) -> list[str]:
    """Readable labels of the spanning vectors, e.g. `["dθ1-dθ2"]`."""
    return [vector_label(row, w.ambient.basis) for row in w.span]


def vector_label(row, basis) -> str:
    parts = []
    for coefficient, label in zip(row, basis):
        if coefficient == 0:
            continue
        if any(symbol in label for symbol in "+-⊗"):
            label = f"({label})"
        magnitude = abs(coefficient)
        term = label if magnitude == 1 else f"{magnitude}{label}"
        if coefficient < 0:
            parts.append(f"-{term}")
        else:
            parts.append(f"+{term}" if parts else term)
    return "".join(parts) or "0"


def transform_perversity(s: SpaceExpr, mode: TransformMode) -> SpaceExpr:
    """Replace every node subspace `W` by `W^⊥` (adjoint) or `⋆W^⊥` (poincare_dual).

    Links are transformed first, and each new subspace is re-expressed in the
    middle structure of the transformed link through `Subspace.rebase`. A
    transformed link whose middle classes carry other labels (its own
    perversity changed) is matched by basis position, so dimensions and
    polynomials are exact while class labels name the transformed link's basis.

    Raises:
        PerversityError: In `poincare_dual` mode, if some non-trivial middle
            cohomology carries no star.
    """
    if mode not in ("adjoint", "poincare_dual"):
        raise ValueError(f"unknown perversity transform '{mode}'")
    if isinstance(s, (Cone, Suspension)):
        link = transform_perversity(s.link, mode)
        w = orthocomplement(s.w)
        if mode == "poincare_dual":
            w = star_image(w)
        ambient = link_ambient(link)
        if ambient.dim != w.ambient.dim:
            raise PerversityError(
                f"transformed link has middle dimension {ambient.dim}, "
                f"expected {w.ambient.dim}"
            )
        return _build(type(s), link=link, w=w.rebase(ambient))
    if isinstance(s, Product):
        return _build(
            Product,
            left=transform_perversity(s.left, mode),
            right=transform_perversity(s.right, mode),
        )
    return s


def is_self_dual_space(s: SpaceExpr) -> bool:
    """Every singular stratum carries a self-dual perversity (a Cheeger space).

    Strata whose link middle cohomology has no known star are reported as not
    self-dual.
    """
    for path, _, node in iter_conical(s):
        try:
            if not is_self_dual(node.w):
                return False
        except PerversityError:
            logger.debug("stratum %r has no star; treating it as not self-dual", path)
            return False
    return True
