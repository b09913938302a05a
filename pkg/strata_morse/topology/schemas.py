from math import gcd, lcm
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy.matrices import Matrix

from strata_morse.algebra import GradedPoly


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class GradedBasis(_Frozen):
    """A labeled basis of a graded vector space (harmonic representatives).

    Args:
        classes (tuple[tuple[int, str], ...]): `(degree, label)` pairs, in degree order.
    """

    classes: tuple[tuple[int, str], ...] = ()

    @field_validator("classes")
    @classmethod
    def _unique_labels(cls, value):
        labels = [label for _, label in value]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate class labels in basis: {labels}")
        if any(degree < 0 for degree, _ in value):
            raise ValueError("class degrees must be nonnegative")
        return tuple(sorted(value, key=lambda item: item[0]))

    @property
    def poly(self) -> GradedPoly:
        return GradedPoly.count_degrees(degree for degree, _ in self.classes)

    def in_degree(self, degree: int) -> list[str]:
        return [label for k, label in self.classes if k == degree]

    def degrees(self) -> list[int]:
        return sorted({k for k, _ in self.classes})


class MiddleStructure(_Frozen):
    """Middle-degree cohomology of an `l`-dimensional link.

    The basis is declared orthonormal. `star[i][j]` is the coefficient of basis
    vector `i` in the Hodge star of basis vector `j` (columns are images).

    Args:
        link_dim (int): The dimension `l` of the link.
        basis (tuple[str, ...]): Labels of the middle-degree classes, empty when `l` is odd.
        star (Optional[tuple[tuple[int, ...], ...]]): The Hodge star matrix, if known.
    """

    link_dim: int = Field(ge=1)
    basis: tuple[str, ...] = ()
    star: Optional[tuple[tuple[int, ...], ...]] = None

    @model_validator(mode="after")
    def _check_star(self):
        if self.link_dim % 2 and self.basis:
            raise ValueError("odd-dimensional links have no middle degree")
        if self.star is None:
            return self
        size = len(self.basis)
        if len(self.star) != size or any(len(row) != size for row in self.star):
            raise ValueError(f"star must be a {size}x{size} matrix")
        if size == 0:
            return self
        k = self.link_dim // 2
        sign = (-1) ** (k * (self.link_dim - k))
        star = Matrix(self.star)
        if star * star != sign * Matrix.eye(size):
            raise ValueError(f"star does not square to {sign:+d} times the identity")
        return self

    @property
    def degree(self) -> Optional[int]:
        return self.link_dim // 2 if self.link_dim % 2 == 0 else None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def has_star(self) -> bool:
        return self.star is not None


def canonical_rows(rows, width: int) -> tuple[tuple[int, ...], ...]:
    """Reduced row-echelon form over the rationals with primitive integer rows."""
    rows = [tuple(row) for row in rows]
    for row in rows:
        if len(row) != width:
            raise ValueError(
                f"spanning vector {list(row)} has length {len(row)}, expected {width}"
            )
    if not rows or width == 0:
        return ()
    reduced, _ = Matrix(rows).rref()
    canonical = []
    for i in range(reduced.rows):
        entries = list(reduced.row(i))
        if all(entry == 0 for entry in entries):
            continue
        scale = lcm(*(int(entry.q) for entry in entries))
        integral = [int(entry * scale) for entry in entries]
        divisor = gcd(*integral)
        canonical.append(tuple(value // divisor for value in integral))
    return tuple(canonical)


class Subspace(_Frozen):
    """A subspace of middle-degree link cohomology, kept in canonical form.

    Spanning vectors are integer coordinates in the basis of `ambient`. They are
    reduced on construction, so two `Subspace` values are equal exactly when they
    span the same rational subspace of the same ambient.

    Args:
        ambient (MiddleStructure): The middle cohomology this subspace lives in.
        span (tuple[tuple[int, ...], ...]): Spanning vectors, possibly dependent.
    """

    ambient: MiddleStructure
    span: tuple[tuple[int, ...], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data):
        if isinstance(data, dict) and "ambient" in data:
            ambient = data["ambient"]
            if isinstance(ambient, dict):
                ambient = MiddleStructure(**ambient)
            data = dict(data)
            data["span"] = canonical_rows(data.get("span", ()), ambient.dim)
        return data

    @classmethod
    def zero(cls, ambient: MiddleStructure) -> "Subspace":
        return cls(ambient=ambient, span=())

    @classmethod
    def full(cls, ambient: MiddleStructure) -> "Subspace":
        identity = [
            tuple(int(i == j) for j in range(ambient.dim)) for i in range(ambient.dim)
        ]
        return cls(ambient=ambient, span=identity)

    @property
    def dim(self) -> int:
        return len(self.span)

    def rebase(self, ambient: MiddleStructure) -> "Subspace":
        """The same coordinates over another middle structure of equal dimension.

        When both bases carry the same labels, coordinates follow the labels.
        Otherwise they follow basis position.
        """
        old, new = self.ambient.basis, ambient.basis
        if old != new and sorted(old) == sorted(new):
            order = [old.index(label) for label in new]
            span = [tuple(row[i] for i in order) for row in self.span]
            return Subspace(ambient=ambient, span=span)
        return Subspace(ambient=ambient, span=self.span)


class Point(_Frozen):
    kind: Literal["point"] = "point"

    @property
    def dim(self) -> int:
        return 0


class Circle(_Frozen):
    kind: Literal["circle"] = "circle"

    @property
    def dim(self) -> int:
        return 1


class Torus(_Frozen):
    kind: Literal["torus"] = "torus"
    k: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return self.k


class Sphere(_Frozen):
    kind: Literal["sphere"] = "sphere"
    k: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return self.k


class Smooth(_Frozen):
    """A closed smooth manifold described only by its cohomology.

    Args:
        name (str): A display name.
        dim (int): The manifold dimension.
        basis (GradedBasis): Labeled cohomology classes.
        middle (Optional[MiddleStructure]): Middle-degree structure, needed when the
            manifold is the link of an even-dimensional cone point.
    """

    kind: Literal["smooth"] = "smooth"
    name: str
    dim: int = Field(ge=0)
    basis: GradedBasis
    middle: Optional[MiddleStructure] = None

    @model_validator(mode="after")
    def _check_degrees(self):
        if any(k > self.dim for k in self.basis.degrees()):
            raise ValueError(f"{self.name}: class degree exceeds dimension {self.dim}")
        if self.middle is not None:
            if self.middle.link_dim != self.dim:
                raise ValueError(
                    f"{self.name}: middle structure has the wrong dimension"
                )
            expected = self.basis.in_degree(self.dim // 2) if self.dim % 2 == 0 else []
            if list(self.middle.basis) != expected:
                raise ValueError(
                    f"{self.name}: middle basis {list(self.middle.basis)} does not match "
                    f"the degree {self.dim // 2} classes {expected}"
                )
        return self


class Disc(_Frozen):
    kind: Literal["disc"] = "disc"
    m: int = Field(ge=1)

    @property
    def dim(self) -> int:
        return self.m


def _contains_disc(expr) -> bool:
    if isinstance(expr, Disc):
        return True
    if isinstance(expr, (Cone, Suspension)):
        return _contains_disc(expr.link)
    if isinstance(expr, Product):
        return _contains_disc(expr.left) or _contains_disc(expr.right)
    return False


class _Conical(_Frozen):
    link: "SpaceExpr"
    w: Subspace

    @model_validator(mode="after")
    def _check_link(self):
        if self.link.dim < 1:
            raise ValueError("a cone or suspension needs a link of dimension >= 1")
        if _contains_disc(self.link):
            raise ValueError("Disc may only appear as a critical-component factor")
        if self.w.ambient.link_dim != self.link.dim:
            raise ValueError(
                f"perversity lives over a {self.w.ambient.link_dim}-dimensional link, "
                f"but the link has dimension {self.link.dim}"
            )
        if self.link.dim % 2 and self.w.dim:
            raise ValueError("odd-dimensional links carry the zero perversity")
        return self

    @property
    def dim(self) -> int:
        return self.link.dim + 1


class Cone(_Conical):
    kind: Literal["cone"] = "cone"


class Suspension(_Conical):
    kind: Literal["suspension"] = "suspension"


class Product(_Frozen):
    kind: Literal["product"] = "product"
    left: "SpaceExpr"
    right: "SpaceExpr"

    @model_validator(mode="after")
    def _no_discs(self):
        if _contains_disc(self.left) or _contains_disc(self.right):
            raise ValueError("Disc may only appear as a critical-component factor")
        return self

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim


SpaceExpr = Annotated[
    Union[Point, Circle, Torus, Sphere, Smooth, Disc, Cone, Suspension, Product],
    Field(discriminator="kind"),
]

Cone.model_rebuild()
Suspension.model_rebuild()
Product.model_rebuild()


class StratumInfo(BaseModel):
    """A singular stratum, addressed by its node path in the expression tree.

    Attributes:
        path (str): Dotted path from the root, e.g. `link.left` (`""` for the root).
        kind (str): `cone` or `suspension`.
        depth (int): Number of conical nodes strictly above this one.
        link_dim (int): Dimension of the link.
        codim (int): Codimension of the stratum inside its node, `link_dim + 1`.
        w_dim (int): Dimension of the perversity subspace.
        middle_dim (int): Dimension of the link's middle cohomology.
        singular_points (int): 1 for a cone vertex, 2 for the suspension poles.
    """

    path: str
    kind: str
    depth: int
    link_dim: int
    codim: int
    w_dim: int
    middle_dim: int
    singular_points: int
