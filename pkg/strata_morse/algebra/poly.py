import json
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from strata_morse.config import MAX_COEFFICIENT
from strata_morse.exceptions import DegreeOverflowError, PolyOverflowError

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _checked(value: int) -> int:
    if value > MAX_COEFFICIENT:
        raise PolyOverflowError(
            f"coefficient {value} exceeds the checked limit {MAX_COEFFICIENT}"
        )
    return value


class GradedPoly(BaseModel):
    """A polynomial in the formal variable `b` with nonnegative integer coefficients.

    Morse, Poincaré and error polynomials are all `GradedPoly` values. The zero
    polynomial is the empty coefficient map; zero coefficients are never stored.

    !!! example "Torus height function"
        ```python
        from strata_morse.algebra import GradedPoly

        morse = GradedPoly.from_coefficients([1, 3, 2])
        print(morse.reverse(2))  # 2+3b+b^2
        print(morse.eval_minus_one())  # 0
        ```

    Attributes:
        coeffs (dict[int, int]): Map from degree to its strictly positive coefficient.
    """

    model_config = ConfigDict(frozen=True)

    coeffs: dict[int, int] = {}

    @field_validator("coeffs", mode="before")
    @classmethod
    def _normalize(cls, value):
        if value is None:
            return {}
        normalized: dict[int, int] = {}
        for degree, coefficient in dict(value).items():
            degree, coefficient = int(degree), int(coefficient)
            if degree < 0:
                raise ValueError(f"negative degree {degree}")
            if coefficient < 0:
                raise ValueError(
                    f"negative coefficient {coefficient} in degree {degree}"
                )
            if coefficient:
                normalized[degree] = _checked(coefficient)
        return dict(sorted(normalized.items()))

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    # construction

    @classmethod
    def zero(cls) -> "GradedPoly":
        return cls()

    @classmethod
    def one(cls) -> "GradedPoly":
        return cls.monomial(0)

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "GradedPoly":
        return cls(coeffs={degree: coefficient})

    @classmethod
    def from_coefficients(cls, coefficients: Iterable[int]) -> "GradedPoly":
        """Build a polynomial from a dense coefficient list, lowest degree first."""
        return cls(coeffs=dict(enumerate(coefficients)))

    @classmethod
    def count_degrees(cls, degrees: Iterable[int]) -> "GradedPoly":
        counts: dict[int, int] = {}
        for degree in degrees:
            counts[degree] = counts.get(degree, 0) + 1
        return cls(coeffs=counts)

    # queries

    def coefficient(self, degree: int) -> int:
        return self.coeffs.get(degree, 0)

    def degree(self) -> int:
        """Highest degree with a nonzero coefficient, or -1 for the zero polynomial."""
        return max(self.coeffs, default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_list(self, length: Optional[int] = None) -> list[int]:
        length = self.degree() + 1 if length is None else length
        return [self.coefficient(k) for k in range(length)]

    # arithmetic

    def add(self, other: "GradedPoly") -> "GradedPoly":
        total = dict(self.coeffs)
        for degree, coefficient in other.coeffs.items():
            total[degree] = _checked(total.get(degree, 0) + coefficient)
        return GradedPoly(coeffs=total)

    def mul(self, other: "GradedPoly") -> "GradedPoly":
        product: dict[int, int] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                term = _checked(c1 * c2)
                product[d1 + d2] = _checked(product.get(d1 + d2, 0) + term)
        return GradedPoly(coeffs=product)

    def subtract(self, other: "GradedPoly") -> "GradedPoly":
        """Coefficientwise difference.

        Raises:
            ValueError: If any coefficient would go negative.
        """
        difference = dict(self.coeffs)
        for degree, coefficient in other.coeffs.items():
            remaining = difference.get(degree, 0) - coefficient
            if remaining < 0:
                raise ValueError(
                    f"difference has negative coefficient {remaining} in degree {degree}"
                )
            difference[degree] = remaining
        return GradedPoly(coeffs=difference)

    def signed_difference(self, other: "GradedPoly") -> dict[int, int]:
        degrees = sorted(set(self.coeffs) | set(other.coeffs))
        return {
            k: self.coefficient(k) - other.coefficient(k)
            for k in degrees
            if self.coefficient(k) != other.coefficient(k)
        }

    def reverse(self, n: int) -> "GradedPoly":
        """Reflect degrees, `b^n p(1/b)`.

        Args:
            n (int): The dimension to reflect in.

        Raises:
            DegreeOverflowError: If the polynomial has degree above `n`.
        """
        if self.degree() > n:
            raise DegreeOverflowError(
                f"cannot reverse a degree {self.degree()} polynomial in dimension {n}"
            )
        return GradedPoly(coeffs={n - k: c for k, c in self.coeffs.items()})

    def divide_one_plus_b(self) -> Optional["GradedPoly"]:
        """Exact division by `1+b` with a nonnegative quotient.

        Returns:
            Optional[GradedPoly]: The quotient `q` with `self = (1+b) q`, or `None` if
                the division leaves a remainder or forces a negative coefficient.
        """
        if self.is_zero():
            return GradedPoly()
        top = self.degree()
        quotient: dict[int, int] = {}
        carry = 0
        # synthetic division from the bottom: q_k = p_k - q_{k-1}
        for k in range(top):
            q_k = self.coefficient(k) - carry
            if q_k < 0:
                return None
            quotient[k] = q_k
            carry = q_k
        if self.coefficient(top) != carry:
            return None
        return GradedPoly(coeffs=quotient)

    def eval_minus_one(self) -> int:
        return sum(c if k % 2 == 0 else -c for k, c in self.coeffs.items())

    def coeff_min(self, other: "GradedPoly") -> "GradedPoly":
        return GradedPoly(
            coeffs={
                k: min(c, other.coefficient(k))
                for k, c in self.coeffs.items()
                if k in other.coeffs
            }
        )

    def is_palindromic(self, n: int) -> bool:
        return self.degree() <= n and self.reverse(n) == self

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        return self.add(other)

    def __mul__(self, other: "GradedPoly") -> "GradedPoly":
        return self.mul(other)

    # serialization

    def to_json(self) -> dict[str, int]:
        return {str(k): c for k, c in self.coeffs.items()}

    @classmethod
    def from_json(cls, payload: dict[str, int] | str) -> "GradedPoly":
        if isinstance(payload, str):
            payload = json.loads(payload)
        return cls(coeffs={int(k): v for k, v in payload.items()})

    def render(self, unicode: bool = False) -> str:
        """Render as `1+3b+2b^2` (or with superscripts when `unicode` is set)."""
        if self.is_zero():
            return "0"
        terms = []
        for k, c in self.coeffs.items():
            if k == 0:
                terms.append(str(c))
                continue
            power = "b" if k == 1 else (
                f"b{str(k).translate(_SUPERSCRIPTS)}" if unicode else f"b^{k}"
            )
            terms.append(power if c == 1 else f"{c}{power}")
        return "+".join(terms)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"GradedPoly({self.render()})"


# functional spellings of the poly operations


def add(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p.add(q)


def mul(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p.mul(q)


def subtract(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p.subtract(q)


def reverse(p: GradedPoly, n: int) -> GradedPoly:
    return p.reverse(n)


def divide_one_plus_b(p: GradedPoly) -> Optional[GradedPoly]:
    return p.divide_one_plus_b()


def eval_minus_one(p: GradedPoly) -> int:
    return p.eval_minus_one()


def coeff_min(p: GradedPoly, q: GradedPoly) -> GradedPoly:
    return p.coeff_min(q)


ONE_PLUS_B = GradedPoly.from_coefficients([1, 1])
