"""GF(2^m) arithmetic with log/antilog tables."""

from __future__ import annotations

from math import gcd

import numpy as np

# Primitive polynomial per degree, bit i = coefficient of x^i.  Fixed so that
# BCH parity rows are reproducible.
PRIMITIVE_POLYS = {
    2: 0x7,        # x^2 + x + 1
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x89,       # x^7 + x^3 + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
    17: 0x20009,   # x^17 + x^3 + 1
    18: 0x40081,   # x^18 + x^7 + 1
    19: 0x80027,   # x^19 + x^5 + x^2 + x + 1
    20: 0x100009,  # x^20 + x^3 + 1
}


def clmul_mod(a: int, b: int, poly: int, m: int) -> int:
    """Shift-and-add polynomial product reduced modulo ``poly``."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if (a >> m) & 1:
            a ^= poly
    return out


class FieldGF2m:
    """The field GF(2^m) generated by a root alpha of a fixed primitive polynomial."""

    def __init__(self, m: int, poly: int | None = None):
        if not 2 <= m <= 20:
            raise ValueError(f"field degree m={m} outside [2, 20]")
        if poly is None:
            poly = PRIMITIVE_POLYS[m]
        if poly.bit_length() != m + 1:
            raise ValueError(f"polynomial {poly:#x} does not have degree {m}")
        self.m = m
        self.poly = poly
        self.size = 1 << m
        self.order = self.size - 1

        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        x = 1
        for j in range(self.order):
            if log[x] != -1:
                raise ValueError(f"{poly:#x} is not primitive: alpha has order {j}")
            exp[j] = x
            log[x] = j
            x <<= 1
            if x >> m:
                x ^= poly
        if x != 1:
            raise ValueError(f"{poly:#x} is not primitive")
        exp[self.order:] = exp[:self.order]
        self.exp = exp
        self.log = log

    def __repr__(self) -> str:
        return f"FieldGF2m(m={self.m}, poly={self.poly:#x})"

    def describe(self) -> str:
        return f"GF(2^{self.m}) / {self.poly:#x}"

    alpha = 2  # the class of x

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[self.log[a] + self.log[b]])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(self.order - self.log[a]) % self.order])

    def alpha_pow(self, e) -> np.ndarray:
        """alpha^e elementwise for an integer array of exponents."""
        return self.exp[np.asarray(e) % self.order]

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        return self.order // gcd(self.order, int(self.log[a]))


def field_new(m: int) -> FieldGF2m:
    return FieldGF2m(m)


def cyclotomic_coset(i: int, order: int) -> list[int]:
    """The 2-cyclotomic coset of ``i`` modulo ``order``."""
    coset = []
    j = i % order
    while j not in coset:
        coset.append(j)
        j = (2 * j) % order
    return coset
