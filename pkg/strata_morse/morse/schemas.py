from fractions import Fraction
from typing import Any, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    ValidationError,
    field_serializer,
    field_validator,
    model_validator,
)

from strata_morse.algebra import GradedPoly
from strata_morse.exceptions import MorseDataError
from strata_morse.topology import (
    Cone,
    Disc,
    SpaceExpr,
    describe,
    dump_space,
    parse_space,
)


class CriticalComponent(BaseModel):
    """A connected component `F_a` of the critical set, with its normal cone data.

    The local model is `h = f(F_a) + ρ_s² - ρ_u²` on `F_a × C(Z_s) × C(Z_u)`, where
    the stable factors are attracting and the unstable ones expanding. A smooth
    critical point of index `i` in dimension `n` has stable `[Disc(n-i)]` and
    unstable `[Disc(i)]`.

    Args:
        name (str): Unique name within the problem.
        base (SpaceExpr): The critical set itself, with its induced perversity baked in.
        stable (tuple[SpaceExpr, ...]): Attracting Cone/Disc factors.
        unstable (tuple[SpaceExpr, ...]): Expanding Cone/Disc factors.
        h_value (Fraction): The critical value, used only for ordering reports.
    """

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    name: str
    base: SpaceExpr
    stable: tuple[SpaceExpr, ...] = ()
    unstable: tuple[SpaceExpr, ...] = ()
    h_value: Fraction = Fraction(0)

    @field_validator("h_value", mode="before")
    @classmethod
    def _to_fraction(cls, value):
        if isinstance(value, Fraction):
            return value
        return Fraction(str(value))

    @field_validator("stable", "unstable")
    @classmethod
    def _cone_or_disc(cls, value):
        for factor in value:
            if not isinstance(factor, (Cone, Disc)):
                raise ValueError(
                    f"normal factors must be Cone or Disc nodes, got {factor.kind}"
                )
        return value

    @field_validator("base")
    @classmethod
    def _closed_base(cls, value):
        if isinstance(value, (Cone, Disc)):
            raise ValueError("the critical set must be a closed space expression")
        return value

    @field_serializer("h_value")
    def _serialize_h(self, value: Fraction) -> str:
        return str(value)

    @property
    def dim(self) -> int:
        """Ambient dimension of the fundamental neighbourhood."""
        return (
            self.base.dim
            + sum(f.dim for f in self.stable)
            + sum(f.dim for f in self.unstable)
        )

    @property
    def index(self) -> int:
        return sum(f.dim for f in self.unstable)


class MorseProblem(BaseModel):
    """A stratified Morse-Bott function on a closed space, given by its critical data.

    !!! example "The suspension height function"
        ```python
        from strata_morse.morse import morse_polynomial, suspension_height_problem
        from strata_morse.topology import suspension, torus

        problem = suspension_height_problem(suspension(torus(2), [[1, 0]]))
        print(morse_polynomial(problem))  # 1+b+b^2+b^3
        ```

    Args:
        label (str): A display label.
        space (SpaceExpr): The closed global space, perversities included.
        components (tuple[CriticalComponent, ...]): All critical components.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    label: str = "morse problem"
    space: SpaceExpr
    components: tuple[CriticalComponent, ...]

    @model_validator(mode="after")
    def _consistent(self):
        if isinstance(self.space, (Cone, Disc)):
            raise ValueError("the global space must be closed (no top-level Cone/Disc)")
        names = [c.name for c in self.components]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate component names: {duplicates}")
        for component in self.components:
            if component.dim != self.space.dim:
                raise ValueError(
                    f"component '{component.name}' has neighbourhood dimension "
                    f"{component.dim}, but the space has dimension {self.space.dim}"
                )
        return self

    @property
    def dim(self) -> int:
        return self.space.dim


class StrongCheck(BaseModel):
    """Outcome of the strong polynomial Morse inequality `M - P = (1+b) Q`.

    Attributes:
        morse (GradedPoly): `M(b)`.
        poincare (GradedPoly): `P(b)`.
        difference (dict[int, int]): Signed coefficients of `M - P`.
        quotient (Optional[GradedPoly]): `Q(b)` when it exists.
        holds (bool): Whether `M - P` is nonnegative and divisible with `Q >= 0`.
        message (str): A human-readable verdict.
    """

    morse: GradedPoly
    poincare: GradedPoly
    difference: dict[int, int]
    quotient: Optional[GradedPoly] = None
    holds: bool
    message: str = ""


class AdjointCheck(BaseModel):
    """`b^n M(W, h)(1/b)` against `M(W^⊥, -h)(b)`."""

    reversed_morse: Optional[GradedPoly] = None
    adjoint_flipped_morse: GradedPoly
    holds: bool
    message: str = ""


class RefinedCheck(BaseModel):
    """Refined inequality for self-dual perversities.

    Attributes:
        applicable (bool): False when some stratum is not self-dual.
        refined (Optional[GradedPoly]): `M_re = min(M(h), M(-h))` degreewise.
        error (Optional[GradedPoly]): `Qbar = M_re - P` when nonnegative.
        reflection_holds (Optional[bool]): Whether `b^n M(h)(1/b) = M(-h)`.
        holds (bool): Applicable and both the error and the reflection check pass.
    """

    applicable: bool
    refined: Optional[GradedPoly] = None
    error: Optional[GradedPoly] = None
    reflection_holds: Optional[bool] = None
    holds: bool = False
    message: str = ""


class LefschetzCheck(BaseModel):
    morse_at_minus_one: int
    poincare_at_minus_one: int
    equal: bool


class ComponentRow(BaseModel):
    name: str
    h_value: str
    base: str
    stable: list[str]
    unstable: list[str]
    index: int
    local_poly: GradedPoly


class MorseReport(BaseModel):
    """Every check run on one Morse problem.

    Attributes:
        label (str): The problem label.
        dim (int): Ambient dimension.
        witt (bool): Whether the space satisfies the Witt condition.
        self_dual (bool): Whether every stratum is self-dual.
        morse (GradedPoly): `M(h)`.
        morse_flipped (GradedPoly): `M(-h)`.
        poincare (GradedPoly): `P(b)`.
        strong (StrongCheck): Strong inequality outcome.
        adjoint (AdjointCheck): Adjoint duality outcome.
        refined (RefinedCheck): Refined inequality outcome.
        perfect (dict[int, bool]): Perfectness per degree `0..n`.
        lefschetz (LefschetzCheck): Alternating sums.
        components (list[ComponentRow]): Per-component table ordered by `h_value`.
    """

    label: str
    dim: int
    witt: bool
    self_dual: bool
    morse: GradedPoly
    morse_flipped: GradedPoly
    poincare: GradedPoly
    strong: StrongCheck
    adjoint: AdjointCheck
    refined: RefinedCheck
    perfect: dict[int, bool]
    lefschetz: LefschetzCheck
    components: list[ComponentRow]

    @property
    def all_passed(self) -> bool:
        return (
            self.strong.holds
            and self.adjoint.holds
            and self.lefschetz.equal
            and (self.refined.holds or not self.refined.applicable)
        )


def _error_text(error: Exception) -> str:
    if isinstance(error, ValidationError):
        return "; ".join(
            f"{'.'.join(str(part) for part in item['loc']) or 'value'}: {item['msg']}"
            for item in error.errors()
        )
    return str(error)


def parse_component(obj: Any, path: str) -> CriticalComponent:
    if not isinstance(obj, dict):
        raise MorseDataError(f"{path}: expected an object")
    unknown = set(obj) - {"name", "base", "stable", "unstable", "h_value"}
    if unknown:
        raise MorseDataError(f"{path}: unknown fields {sorted(unknown)}")
    if "name" not in obj:
        raise MorseDataError(f"{path}: missing field 'name'")
    base = parse_space(obj.get("base", "point"), f"{path}.base")
    stable = [
        parse_space(f, f"{path}.stable[{i}]")
        for i, f in enumerate(obj.get("stable", []))
    ]
    unstable = [
        parse_space(f, f"{path}.unstable[{i}]")
        for i, f in enumerate(obj.get("unstable", []))
    ]
    try:
        return CriticalComponent(
            name=obj["name"],
            base=base,
            stable=tuple(stable),
            unstable=tuple(unstable),
            h_value=obj.get("h_value", 0),
        )
    except (ValidationError, ValueError, ZeroDivisionError) as error:
        raise MorseDataError(f"{path}: {_error_text(error)}") from error


def parse_problem(obj: Any, path: str = "morse") -> MorseProblem:
    """Parse the Morse problem JSON schema.

    Raises:
        SpaceValidationError: For malformed space expressions.
        MorseDataError: For inconsistent critical data, such as dimension mismatches.
    """
    if not isinstance(obj, dict):
        raise MorseDataError(f"{path}: expected an object")
    unknown = set(obj) - {"label", "space", "components"}
    if unknown:
        raise MorseDataError(f"{path}: unknown fields {sorted(unknown)}")
    if "space" not in obj:
        raise MorseDataError(f"{path}: missing field 'space'")
    space = parse_space(obj["space"], f"{path}.space")
    components = [
        parse_component(c, f"{path}.components[{i}]")
        for i, c in enumerate(obj.get("components", []))
    ]
    try:
        return MorseProblem(
            label=obj.get("label", describe(space)),
            space=space,
            components=tuple(components),
        )
    except ValidationError as error:
        raise MorseDataError(f"{path}: {_error_text(error)}") from error


def dump_problem(problem: MorseProblem) -> dict[str, Any]:
    return {
        "label": problem.label,
        "space": dump_space(problem.space),
        "components": [
            {
                "name": c.name,
                "base": dump_space(c.base),
                "stable": [dump_space(f) for f in c.stable],
                "unstable": [dump_space(f) for f in c.unstable],
                "h_value": str(c.h_value),
            }
            for c in problem.components
        ],
    }

