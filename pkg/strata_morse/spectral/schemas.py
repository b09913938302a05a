from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from strata_morse.config import (
    DEFAULT_KEEP_EIGENVALUES,
    DEFAULT_MODE_CUTOFF,
    MIN_GRID_POINTS,
)


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    # str() keeps the decimal a float was written as, e.g. 1e-08 -> 1/100000000
    return Fraction(str(value))


class SpectralModel(BaseModel):
    """Configuration of a discretized Witten Laplacian on a model suspension.

    The suspension `Σ(Z)` carries the wedge metric `dφ² + sin²φ g_Z` with flat
    `Z = S¹` (`spindle_circle`) or `Z = T²` (`suspension_torus2`) and is deformed
    by `h = cos φ`.

    !!! example "Spindle sweep"
        ```python
        from strata_morse.spectral import SpectralModel, sweep

        model = SpectralModel(kind="spindle_circle", grid_points=200, epsilon_list=[2, 10])
        print(sweep(model).counts)  # [1, 0, 1]
        ```

    Args:
        kind (Literal["spindle_circle", "suspension_torus2"]): The model family.
        w (list[list[int]]): Perversity spanning vectors in the basis `(dθ1, dθ2)`;
            only meaningful for `suspension_torus2`.
        grid_points (int): Number `N` of radial cells on `[0, π]`.
        mode_cutoff (int): Largest `|m|` kept per circle factor.
        epsilon_list (list[Fraction]): Deformation parameters to evaluate.
        threshold (Union[Literal["auto"], Fraction]): Small-eigenvalue cutoff `c`.
        keep (int): Number of lowest eigenvalues reported per degree.
    """

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    kind: Literal["spindle_circle", "suspension_torus2"]
    w: list[list[int]] = []
    grid_points: int = Field(default=200, ge=MIN_GRID_POINTS)
    mode_cutoff: int = Field(default=DEFAULT_MODE_CUTOFF, ge=0)
    epsilon_list: list[Fraction] = Field(
        default=[Fraction(0), Fraction(10)], min_length=1
    )
    threshold: Union[Literal["auto"], Fraction] = "auto"
    keep: int = Field(default=DEFAULT_KEEP_EIGENVALUES, ge=1)

    @field_validator("epsilon_list", mode="before")
    @classmethod
    def _epsilons(cls, value):
        epsilons = [_fraction(v) for v in value]
        if any(e < 0 for e in epsilons):
            raise ValueError("epsilon values must be nonnegative")
        return epsilons

    @field_validator("threshold", mode="before")
    @classmethod
    def _threshold(cls, value):
        if value == "auto":
            return value
        threshold = _fraction(value)
        if threshold <= 0:
            raise ValueError("threshold must be positive")
        return threshold

    @model_validator(mode="after")
    def _check_w(self):
        if self.kind == "spindle_circle" and self.w:
            raise ValueError("the spindle link S¹ is odd-dimensional; w must be empty")
        if any(len(row) != 2 for row in self.w):
            raise ValueError("w vectors must have two coordinates (dθ1, dθ2)")
        return self

    @field_serializer("epsilon_list")
    def _serialize_epsilons(self, value: list[Fraction]) -> list[str]:
        return [str(e) for e in value]

    @field_serializer("threshold")
    def _serialize_threshold(self, value) -> str:
        return str(value)

    @property
    def link_dim(self) -> int:
        return 1 if self.kind == "spindle_circle" else 2


class DegreeSpectrum(BaseModel):
    """Low spectrum of the deformed Laplacian in one form degree.

    Attributes:
        degree (int): Form degree `k`.
        eigenvalues (list[float]): Lowest eigenvalues, ascending, over all modes.
        small_count (int): Number of eigenvalues `<= c`.
        gap_ratio (float): Smallest excluded over largest included eigenvalue,
            infinite when nothing is included.
        first_excluded (Optional[float]): Smallest eigenvalue above `c`.
        small_max (Optional[float]): Largest eigenvalue `<= c`, if any.
    """

    degree: int
    eigenvalues: list[float]
    small_count: int
    gap_ratio: float
    first_excluded: Optional[float] = None
    small_max: Optional[float] = None


class SpectrumReport(BaseModel):
    """Spectrum of one model at one deformation parameter.

    Attributes:
        epsilon (float): The deformation parameter.
        threshold (float): The cutoff `c` used.
        degrees (list[DegreeSpectrum]): Per-degree results, degree ascending.
        modes (int): Number of Fourier modes solved.
        asymmetry (float): Largest relative asymmetry of an assembled Laplacian.
        min_eigenvalue (float): The most negative eigenvalue seen.
        pairing_defect (float): Relative mismatch of nonzero even/odd spectra.
    """

    epsilon: float
    threshold: float
    degrees: list[DegreeSpectrum]
    modes: int
    asymmetry: float
    min_eigenvalue: float
    pairing_defect: float

    @property
    def counts(self) -> list[int]:
        return [d.small_count for d in self.degrees]

    @property
    def min_gap_ratio(self) -> float:
        return min(d.gap_ratio for d in self.degrees)


class SweepReport(BaseModel):
    """Reports over the epsilon list and the stability verdict.

    Attributes:
        reports (list[SpectrumReport]): One report per epsilon, ascending.
        stable (bool): Counts constant from `stable_from` on.
        stable_from (Optional[float]): Smallest epsilon whose gap ratio reaches the
            target in every degree.
        counts (Optional[list[int]]): The stable counts.
    """

    reports: list[SpectrumReport]
    stable: bool
    stable_from: Optional[float] = None
    counts: Optional[list[int]] = None


class RefinementRow(BaseModel):
    grid_points: int
    counts: list[int]
    small_max: list[Optional[float]]
    first_excluded: list[Optional[float]]


class RefinementReport(BaseModel):
    """Grid-refinement study at a fixed epsilon.

    Attributes:
        epsilon (float): The deformation parameter.
        rows (list[RefinementRow]): One row per grid, ascending in `N`.
        counts_stable (bool): Small counts agree on every grid.
        small_bounded (bool): The small cluster never grows under refinement,
            up to round-off.
        excluded_converging (bool): Successive changes of the first excluded
            eigenvalue shrink.
    """

    epsilon: float
    rows: list[RefinementRow]
    counts_stable: bool
    small_bounded: bool
    excluded_converging: bool

    @property
    def verdict(self) -> bool:
        return self.counts_stable and self.small_bounded and self.excluded_converging


class HeatSupertrace(BaseModel):
    """Discrete polynomial heat supertrace `L(b, t) = Σ_k b^k tr e^{-tΔ_k}`.

    Attributes:
        t (float): Heat time.
        traces (list[float]): `tr e^{-tΔ_k}` per degree.
        supertrace (float): `L(-1, t)`.
        poincare_at_minus_one (int): `P(-1)` from the kernel dimensions.
        s_coefficients (list[float]): Coefficients of `(L(b, t) - P(b)) / (1+b)`.
        remainder (float): Remainder of that division, zero up to round-off.
    """

    t: float
    traces: list[float]
    supertrace: float
    poincare_at_minus_one: int
    s_coefficients: list[float]
    remainder: float


class AgreementReport(BaseModel):
    """Small counts compared with the symbolic engine.

    Attributes:
        morse (list[int]): Coefficients of `M(b)` of the suspension height function.
        poincare (list[int]): Coefficients of `P(b)`.
        counts_large_epsilon (list[int]): Small counts at the largest epsilon.
        counts_zero_epsilon (Optional[list[int]]): Small counts at epsilon 0, if run.
        agree (bool): Whether every available comparison matches.
    """

    morse: list[int]
    poincare: list[int]
    counts_large_epsilon: list[int]
    counts_zero_epsilon: Optional[list[int]] = None
    agree: bool
    message: str = ""
