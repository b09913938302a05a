from strata_morse.algebra.poly import (
    ONE_PLUS_B,
    GradedPoly,
    add,
    coeff_min,
    divide_one_plus_b,
    eval_minus_one,
    mul,
    reverse,
    subtract,
)

__all__ = [
    "GradedPoly",
    "ONE_PLUS_B",
    "add",
    "coeff_min",
    "divide_one_plus_b",
    "eval_minus_one",
    "mul",
    "reverse",
    "subtract",
]
