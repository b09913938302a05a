import logging
from itertools import combinations
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from strata_morse.exceptions import (
    CohomologyError,
    PerversityError,
    SpaceValidationError,
)
from strata_morse.topology.schemas import (
    Circle,
    Cone,
    Disc,
    GradedBasis,
    MiddleStructure,
    Point,
    Product,
    Smooth,
    SpaceExpr,
    Sphere,
    StratumInfo,
    Subspace,
    Suspension,
    Torus,
)

logger = logging.getLogger(__name__)

TORUS2_STAR = ((0, -1), (1, 0))


def _build(model_cls, path: str = "", **fields):
    try:
        return model_cls(**fields)
    except ValidationError as error:
        details = "; ".join(
            f"{'.'.join(str(part) for part in item['loc']) or model_cls.__name__}: "
            f"{item['msg']}"
            for item in error.errors()
        )
        where = f"{path}: " if path else ""
        raise SpaceValidationError(f"{where}{details}") from error


def torus_label(indices: Sequence[int]) -> str:
    if not indices:
        return "1"
    return "∧".join(f"dθ{i}" for i in indices)


# constructors


def point() -> Point:
    return Point()


def circle() -> Circle:
    return Circle()


def torus(k: int) -> Torus:
    return _build(Torus, k=k)


def sphere(k: int) -> Sphere:
    return _build(Sphere, k=k)


def disc(m: int) -> Disc:
    return _build(Disc, m=m)


def smooth(
    name: str,
    dim: int,
    classes: Sequence[tuple[int, str]],
    middle_basis: Optional[Sequence[str]] = None,
    star: Optional[Sequence[Sequence[int]]] = None,
) -> Smooth:
    """Describe a closed smooth manifold by its labeled cohomology classes.

    Args:
        name (str): A display name.
        dim (int): The manifold dimension.
        classes (Sequence[tuple[int, str]]): `(degree, label)` pairs.
        middle_basis (Optional[Sequence[str]]): Middle-degree labels in star order;
            defaults to the middle-degree classes in the order given.
        star (Optional[Sequence[Sequence[int]]]): Hodge star matrix on the middle
            basis, columns being images of basis vectors.
    """
    basis = _build(
        GradedBasis, classes=tuple((int(k), str(label)) for k, label in classes)
    )
    middle = None
    if star is not None or middle_basis is not None:
        labels = (
            tuple(middle_basis)
            if middle_basis is not None
            else tuple(basis.in_degree(dim // 2))
        )
        middle = _build(
            MiddleStructure,
            link_dim=dim,
            basis=labels,
            star=None if star is None else tuple(tuple(row) for row in star),
        )
    return _build(Smooth, name=name, dim=dim, basis=basis, middle=middle)


def _coerce_subspace(link: SpaceExpr, w: Any, path: str = "") -> Subspace:
    ambient = link_ambient(link)
    if isinstance(w, Subspace):
        if w.ambient.dim != ambient.dim:
            raise PerversityError(
                f"{path or 'w'}: subspace of a {w.ambient.dim}-dimensional middle "
                f"cohomology attached to a link with middle dimension {ambient.dim}"
            )
        return w.rebase(ambient)
    if w is None or w == "zero":
        return Subspace.zero(ambient)
    if w == "full":
        return Subspace.full(ambient)
    rows = w.get("span", []) if isinstance(w, dict) else w
    try:
        span = [tuple(int(x) for x in row) for row in rows]
        return Subspace(ambient=ambient, span=span)
    except (ValidationError, ValueError, TypeError) as error:
        raise SpaceValidationError(f"{path or 'w'}: {error}") from error


def cone(link: SpaceExpr, w: Any = None) -> Cone:
    """The cone over `link` with perversity subspace `w`.

    `w` may be a `Subspace`, a list of coordinate vectors in the link's middle
    basis, `{"span": [...]}`, or one of `"zero"` / `"full"`.
    """
    return _build(Cone, link=link, w=_coerce_subspace(link, w))


def suspension(link: SpaceExpr, w: Any = None) -> Suspension:
    """The suspension of `link`, with the same perversity `w` at both poles."""
    return _build(Suspension, link=link, w=_coerce_subspace(link, w))


def product(*factors: SpaceExpr) -> SpaceExpr:
    if len(factors) < 2:
        raise SpaceValidationError("a product needs at least two factors")
    result = factors[0]
    for factor in factors[1:]:
        result = _build(Product, left=result, right=factor)
    return result


# queries


def dimension(s: SpaceExpr) -> int:
    return s.dim


def primitive_cohomology(s: SpaceExpr) -> GradedBasis:
    """Labeled de Rham cohomology of a primitive (closed, unstratified) space.

    Raises:
        SpaceValidationError: If `s` is not a Point, Circle, Torus, Sphere or Smooth.
    """
    if isinstance(s, Point):
        return GradedBasis(classes=((0, "1"),))
    if isinstance(s, Circle):
        return GradedBasis(classes=((0, "1"), (1, "dθ")))
    if isinstance(s, Torus):
        classes = [
            (j, torus_label(indices))
            for j in range(s.k + 1)
            for indices in combinations(range(1, s.k + 1), j)
        ]
        return GradedBasis(classes=tuple(classes))
    if isinstance(s, Sphere):
        return GradedBasis(classes=((0, "1"), (s.k, "vol")))
    if isinstance(s, Smooth):
        return s.basis
    raise SpaceValidationError(f"{s.kind} is not a primitive space")


def middle_structure(s: SpaceExpr) -> MiddleStructure:
    """Middle-degree cohomology of `s` together with its Hodge star.

    Odd-dimensional spaces, and even-dimensional ones with no middle cohomology,
    get the empty structure.

    Raises:
        PerversityError: If `s` has middle cohomology but no known star.
    """
    if s.dim == 0:
        raise SpaceValidationError("a point has no link structure")
    if s.dim % 2:
        return MiddleStructure(link_dim=s.dim, basis=(), star=())
    if isinstance(s, Torus) and s.k == 2:
        return MiddleStructure(link_dim=2, basis=("dθ1", "dθ2"), star=TORUS2_STAR)
    if isinstance(s, Smooth) and s.middle is not None and s.middle.has_star:
        return s.middle
    star_less = middle_basis(s)
    if star_less.dim == 0:
        return MiddleStructure(link_dim=s.dim, basis=(), star=())
    raise PerversityError(
        f"no Hodge star is known on the middle cohomology of {describe(s)}; "
        "supply a smooth link with an explicit star to use duality features"
    )


def middle_basis(s: SpaceExpr) -> MiddleStructure:
    """Star-less middle structure read off the global cohomology labels of `s`."""
    from strata_morse.topology.cohomology import global_cohomology

    if s.dim % 2:
        return MiddleStructure(link_dim=s.dim, basis=(), star=())
    if isinstance(s, Smooth) and s.middle is not None:
        labels = s.middle.basis
        return MiddleStructure(
            link_dim=s.dim, basis=labels, star=() if not labels else None
        )
    try:
        labels = tuple(global_cohomology(s).in_degree(s.dim // 2))
    except CohomologyError as error:
        raise SpaceValidationError(
            f"{describe(s)} cannot be a link: {error}"
        ) from error
    return MiddleStructure(
        link_dim=s.dim, basis=labels, star=() if not labels else None
    )


def link_ambient(s: SpaceExpr) -> MiddleStructure:
    """The middle structure perversities over the link `s` live in.

    Uses the starred structure when one is known and falls back to `middle_basis`.
    """
    try:
        return middle_structure(s)
    except PerversityError:
        return middle_basis(s)


def iter_conical(s: SpaceExpr, path: str = "", depth: int = 0):
    """Yield `(path, depth, node)` for every Cone/Suspension node, root first."""
    if isinstance(s, (Cone, Suspension)):
        yield path, depth, s
        yield from iter_conical(s.link, _join(path, "link"), depth + 1)
    elif isinstance(s, Product):
        yield from iter_conical(s.left, _join(path, "left"), depth)
        yield from iter_conical(s.right, _join(path, "right"), depth)


def _join(path: str, part: str) -> str:
    return f"{path}.{part}" if path else part


def witt_check(s: SpaceExpr) -> bool:
    """True iff every link is odd-dimensional or has no middle cohomology."""
    return all(node.w.ambient.dim == 0 for _, _, node in iter_conical(s))


def strata(s: SpaceExpr) -> list[StratumInfo]:
    return [
        StratumInfo(
            path=path,
            kind=node.kind,
            depth=depth,
            link_dim=node.link.dim,
            codim=node.link.dim + 1,
            w_dim=node.w.dim,
            middle_dim=node.w.ambient.dim,
            singular_points=1 if isinstance(node, Cone) else 2,
        )
        for path, depth, node in iter_conical(s)
    ]


def describe(s: SpaceExpr) -> str:
    """Compact notation, e.g. `Σ(T^2, dim W=1)`."""
    if isinstance(s, Point):
        return "pt"
    if isinstance(s, Circle):
        return "S¹"
    if isinstance(s, Torus):
        return f"T^{s.k}"
    if isinstance(s, Sphere):
        return f"S^{s.k}"
    if isinstance(s, Smooth):
        return s.name
    if isinstance(s, Disc):
        return f"D^{s.m}"
    if isinstance(s, Product):
        return f"{describe(s.left)} × {describe(s.right)}"
    symbol = "C" if isinstance(s, Cone) else "Σ"
    return f"{symbol}({describe(s.link)}, dim W={s.w.dim})"


# JSON grammar


def parse_space(obj: Any, path: str = "space") -> SpaceExpr:
    """Parse the JSON space grammar.

    !!! example
        ```python
        parse_space({"suspension": {"link": {"torus": 2}, "w": {"span": [[1, 0]]}}})
        ```

    Raises:
        SpaceValidationError: On unknown keys, malformed payloads or invariant
            violations; messages carry the JSON path of the offending node.
    """
    if isinstance(obj, str):
        obj = {obj: {}}
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SpaceValidationError(
            f"{path}: expected an object with exactly one constructor key, got {obj!r}"
        )
    (key, value), = obj.items()
    sub = f"{path}.{key}"
    if key == "point":
        return point()
    if key == "circle":
        return circle()
    if key in ("torus", "sphere", "disc"):
        if isinstance(value, bool) or not isinstance(value, int):
            raise SpaceValidationError(f"{sub}: expected a positive integer")
        model = {"torus": Torus, "sphere": Sphere, "disc": Disc}[key]
        field = "m" if key == "disc" else "k"
        return _build(model, sub, **{field: value})
    if key == "smooth":
        if not isinstance(value, dict):
            raise SpaceValidationError(f"{sub}: expected an object")
        unknown = set(value) - {"name", "dim", "classes", "middle"}
        if unknown:
            raise SpaceValidationError(f"{sub}: unknown fields {sorted(unknown)}")
        middle = value.get("middle") or {}
        try:
            return smooth(
                name=value["name"],
                dim=value["dim"],
                classes=[tuple(item) for item in value.get("classes", [])],
                middle_basis=middle.get("basis"),
                star=middle.get("star"),
            )
        except KeyError as error:
            raise SpaceValidationError(f"{sub}: missing field {error}") from error
        except SpaceValidationError as error:
            raise SpaceValidationError(f"{sub}: {error}") from error
    if key in ("cone", "suspension"):
        if not isinstance(value, dict) or "link" not in value:
            raise SpaceValidationError(f"{sub}: expected an object with a 'link'")
        unknown = set(value) - {"link", "w"}
        if unknown:
            raise SpaceValidationError(f"{sub}: unknown fields {sorted(unknown)}")
        link = parse_space(value["link"], f"{sub}.link")
        if link.dim < 1:
            raise SpaceValidationError(
                f"{sub}.link: a cone or suspension needs a link of dimension >= 1"
            )
        w = _coerce_subspace(link, value.get("w"), f"{sub}.w")
        return _build(Cone if key == "cone" else Suspension, sub, link=link, w=w)
    if key == "product":
        factors = value
        if isinstance(value, dict):
            factors = [value.get("left"), value.get("right")]
        if not isinstance(factors, list) or len(factors) < 2:
            raise SpaceValidationError(f"{sub}: expected at least two factors")
        parsed = [parse_space(f, f"{sub}[{i}]") for i, f in enumerate(factors)]
        result = parsed[0]
        for factor in parsed[1:]:
            result = _build(Product, sub, left=result, right=factor)
        return result
    raise SpaceValidationError(f"{path}: unknown constructor '{key}'")


def dump_space(s: SpaceExpr) -> dict[str, Any]:
    if isinstance(s, Point):
        return {"point": {}}
    if isinstance(s, Circle):
        return {"circle": {}}
    if isinstance(s, Torus):
        return {"torus": s.k}
    if isinstance(s, Sphere):
        return {"sphere": s.k}
    if isinstance(s, Disc):
        return {"disc": s.m}
    if isinstance(s, Smooth):
        payload: dict[str, Any] = {
            "name": s.name,
            "dim": s.dim,
            "classes": [[k, label] for k, label in s.basis.classes],
        }
        if s.middle is not None:
            payload["middle"] = {"basis": list(s.middle.basis)}
            if s.middle.star is not None:
                payload["middle"]["star"] = [list(row) for row in s.middle.star]
        return {"smooth": payload}
    if isinstance(s, Product):
        return {"product": [dump_space(s.left), dump_space(s.right)]}
    return {
        s.kind: {
            "link": dump_space(s.link),
            "w": {"span": [list(row) for row in s.w.span]},
        }
    }
