"""Greedy augmentation that turns an almost-cover into a total cover.

Each step adds the shift x minimizing |A & (A + x)| where A is the current
uncovered set; the minimum never exceeds |A|^2 / 2^n, so the uncovered
measure at least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bits import check_cube_n, xor_convolve
from .codes import LinearCode, sum_code
from .covering import uncovered_fraction, uncovered_indicator

MAX_N = 22


class AugmentError(RuntimeError):
    pass


def autocorrelation(a: np.ndarray) -> np.ndarray:
    """|A & (A + x)| for every x, as the XOR self-convolution of the indicator."""
    f = np.asarray(a, dtype=np.float64)
    return np.rint(xor_convolve(f, f)).astype(np.int64)


def best_shift(a: np.ndarray) -> tuple[int, Fraction]:
    """The shift x minimizing |A & (A + x)| (smallest x on ties) and U_n(A & (A + x))."""
    a = np.asarray(a, dtype=bool)
    n = a.size.bit_length() - 1
    if a.size != 1 << n:
        raise ValueError("indicator length is not a power of two")
    if n > MAX_N:
        raise ValueError(f"n={n} exceeds {MAX_N}")
    check_cube_n(n)
    corr = autocorrelation(a)
    x = int(np.argmin(corr))
    measure = Fraction(int(corr[x]), 1 << n)
    size = Fraction(int(a.sum()), 1 << n)
    if measure > size * size:
        raise AssertionError("shift bound violated: autocorrelation minimum above U(A)^2")
    return x, measure


def shift_set(a: np.ndarray, x: int) -> np.ndarray:
    """Indicator of A + x."""
    return a[np.arange(a.size) ^ x]


@dataclass
class AugmentResult:
    shifts: list[int]
    trace: list[Fraction]
    n: int

    @property
    def dim(self) -> int:
        return len(self.shifts)

    def code(self) -> LinearCode:
        return LinearCode.span(self.n, self.shifts)

    def to_dict(self) -> dict:
        from .bits import format_bits

        return {
            "schema": 1,
            "n": self.n,
            "D_rows": [format_bits(x, self.n) for x in self.shifts],
            "trace": [str(t) for t in self.trace],
            "trace_float": [float(t) for t in self.trace],
            "final_dim": self.dim,
        }


def augment_uncovered(a: np.ndarray, max_steps: int | None = None) -> AugmentResult:
    """Run the squaring cascade on an uncovered-set indicator until it is empty.

    ``trace`` lists the uncovered measure before the first step and after each
    step; it is empty when A starts empty.
    """
    a = np.asarray(a, dtype=bool).copy()
    n = a.size.bit_length() - 1
    if max_steps is None:
        max_steps = math.ceil(math.log2(n)) if n > 1 else 1
    shifts: list[int] = []
    trace: list[Fraction] = []
    if not a.any():
        return AugmentResult(shifts, trace, n)
    trace.append(Fraction(int(a.sum()), 1 << n))
    while a.any():
        if len(shifts) >= max_steps:
            raise AugmentError(
                f"uncovered set still nonempty after {max_steps} steps "
                f"(measure {trace[-1]})"
            )
        x, measure = best_shift(a)
        a &= shift_set(a, x)
        if Fraction(int(a.sum()), 1 << n) != measure:
            raise AssertionError("shift measure disagrees with the updated set")
        if measure > trace[-1] ** 2:
            raise AssertionError("uncovered measure failed to square")
        shifts.append(x)
        trace.append(measure)
    return AugmentResult(shifts, trace, n)


def cohen_augment(code: LinearCode, radius) -> tuple[LinearCode, AugmentResult]:
    """Find D of dimension <= ceil(log2 n) with B_n(C + D; R) the whole cube.

    Needs the initial uncovered fraction below 1/2.
    """
    if code.n > MAX_N:
        raise ValueError(f"n={code.n} exceeds {MAX_N}")
    a = uncovered_indicator(code, radius)
    start = Fraction(int(a.sum()), 1 << code.n)
    if start >= Fraction(1, 2):
        raise AugmentError(f"initial uncovered fraction {start} is not below 1/2")
    result = augment_uncovered(a)
    d = result.code()
    if uncovered_fraction(sum_code(code, d), radius) != 0:
        raise AssertionError("augmented code does not cover the cube")
    return d, result


def cohen_augment_distribution(mu, radius):
    """Distribution version: returns (D, mu * mu_D, result) covering at radius R."""
    from .kwise import convolve_with_code

    if mu.n > MAX_N:
        raise ValueError(f"n={mu.n} exceeds {MAX_N}")
    a = uncovered_indicator(mu, radius)
    start = Fraction(int(a.sum()), 1 << mu.n)
    if start >= Fraction(1, 2):
        raise AugmentError(f"initial uncovered fraction {start} is not below 1/2")
    result = augment_uncovered(a)
    d = result.code()
    return d, convolve_with_code(mu, d), result
