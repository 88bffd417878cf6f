"""Binary linear codes and the constructions built on them."""

from __future__ import annotations

from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .bits import (
    BitMatrix,
    echelon,
    format_bits,
    null_space_basis,
    parse_bits,
    popcount_words,
    span_words,
)
from .gf import FieldGF2m, cyclotomic_coset

# Largest code dimension enumerated codeword by codeword.
MAX_ENUM_DIM = 28
# Largest number of column subsets materialized by the dependency search.
MAX_SUBSETS = 1 << 26


class CodeTooLarge(ValueError):
    pass


class LinearCode:
    """A binary linear code given by independent generator rows.

    Rows are ints (bit i = coordinate i + 1).  The dual code and the distance
    parameters are computed on first use and cached.
    """

    def __init__(self, n: int, rows: Sequence[int] = ()):
        rows = tuple(int(r) for r in rows)
        if n < 1:
            raise ValueError("block length must be positive")
        if any(r < 0 or r >> n for r in rows):
            raise ValueError("generator row longer than the block length")
        if len(echelon(rows)[0]) != len(rows):
            raise ValueError("generator rows are linearly dependent")
        self.n = n
        self.rows = rows

    @classmethod
    def span(cls, n: int, rows: Sequence[int]) -> "LinearCode":
        """Code spanned by arbitrary rows (reduced to an echelon basis)."""
        return cls(n, echelon(rows)[0])

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> "LinearCode":
        return cls.span(m.n, m.rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def generator(self) -> BitMatrix:
        return BitMatrix(self.n, self.rows)

    def __repr__(self) -> str:
        return f"LinearCode(n={self.n}, k={self.k})"

    def __len__(self) -> int:
        return 1 << self.k

    def codewords(self) -> np.ndarray:
        """All codewords as a (2^k, W) uint64 array of packed words."""
        if self.k > MAX_ENUM_DIM:
            raise CodeTooLarge(f"2^{self.k} codewords is too many to enumerate")
        return span_words(self.rows, self.n)

    def codeword_ints(self) -> np.ndarray:
        """Codewords as a flat uint64 array; needs n <= 64."""
        if self.n > 64:
            raise ValueError("codewords do not fit one machine word")
        return self.codewords()[:, 0]

    def weights(self) -> np.ndarray:
        return popcount_words(self.codewords())

    def weight_spectrum(self) -> np.ndarray:
        return np.bincount(self.weights(), minlength=self.n + 1)

    def contains(self, x: int) -> bool:
        reduced, pivots = echelon(self.rows)
        for r, p in zip(reduced, pivots):
            if (x >> p) & 1:
                x ^= r
        return x == 0

    def columns(self) -> np.ndarray:
        """Column j of the generator matrix packed as a k-bit integer."""
        if self.k > 63:
            raise CodeTooLarge("column syndromes need k <= 63")
        cols = np.zeros(self.n, dtype=np.uint64)
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                if (r >> j) & 1:
                    cols[j] |= np.uint64(1 << i)
        return cols

    @cached_property
    def dual(self) -> "LinearCode":
        return LinearCode(self.n, null_space_basis(self.generator).rows)

    @cached_property
    def min_distance(self) -> int:
        if self.k == 0:
            raise ValueError("minimum distance of the zero code is undefined")
        if self.k <= 20 or self.k <= self.n - self.k:
            return int(self.weights()[1:].min())
        # Large code with a small dual: smallest set of dependent parity columns.
        return min_dependency_size(self.dual.columns(), self.n)

    @cached_property
    def bilateral_min_distance(self) -> int:
        if self.k == 0:
            raise ValueError("bilateral distance of the zero code is undefined")
        if self.k <= 20 or self.k <= self.n - self.k:
            w = self.weights()[1:]
            return int(np.minimum(w, self.n - w).min())
        ones = (1 << self.n) - 1
        if self.contains(ones):
            return 0
        cols = self.dual.columns()
        target = np.bitwise_xor.reduce(cols)
        return min_dependency_size(cols, self.n, target=int(target), both=True)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += [format_bits(r, self.n) for r in self.rows]
        return "\n".join(lines) + "\n"


def min_distance(c: LinearCode) -> int:
    return c.min_distance


def bilateral_min_distance(c: LinearCode) -> int:
    return c.bilateral_min_distance


def dual(c: LinearCode) -> LinearCode:
    return c.dual


def read_code(path) -> LinearCode:
    """Header ``n k`` then k generator rows as 0/1 strings; ``#`` comments allowed."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError(f"{path}: empty code file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"{path}: header must be 'n k'")
    n, k = int(head[0]), int(head[1])
    body = lines[1:]
    if len(body) != k:
        raise ValueError(f"{path}: header says {k} rows, found {len(body)}")
    rows = []
    for line in body:
        if len(line) != n or set(line) - {"0", "1"}:
            raise ValueError(f"{path}: bad row {line!r}")
        rows.append(parse_bits(line))
    return LinearCode(n, rows)


def write_code(c: LinearCode, path) -> None:
    Path(path).write_text(c.to_text())


# -- column dependency search -------------------------------------------------

def _subset_levels(cols: np.ndarray, size: int):
    """XORs of all column subsets of each size 0..size, level by level."""
    n = len(cols)
    syn = [np.zeros(1, dtype=np.uint64)]
    last = [np.full(1, -1, dtype=np.int64)]
    total = 1
    for _ in range(size):
        prev_syn, prev_last = syn[-1], last[-1]
        new_syn, new_last = [], []
        for j in range(n):
            sel = prev_last < j
            if sel.any():
                new_syn.append(prev_syn[sel] ^ cols[j])
                new_last.append(np.full(int(sel.sum()), j, dtype=np.int64))
        if not new_syn:
            break
        syn.append(np.concatenate(new_syn))
        last.append(np.concatenate(new_last))
        total += len(syn[-1])
        if total > MAX_SUBSETS:
            raise CodeTooLarge("column-subset search exceeds its memory budget")
    return syn


def has_small_dependency(cols: np.ndarray, k: int, target: int = 0) -> bool:
    """Is there a nonempty set of at most k columns whose XOR equals ``target``?

    Meet in the middle: such a set splits into halves X and Y of sizes at most
    ceil(k/2) and floor(k/2) with XOR(X) ^ XOR(Y) = target, and conversely any
    such pair with X != Y yields one (their symmetric difference).
    """
    cols = np.asarray(cols, dtype=np.uint64)
    if k <= 0:
        return False
    a, b = (k + 1) // 2, k // 2
    levels = _subset_levels(cols, a)
    big = np.concatenate(levels)
    small = np.concatenate(levels[:b + 1])
    if target:
        return bool(np.isin(small ^ np.uint64(target), big).any())
    sizes = np.concatenate([np.full(len(l), i) for i, l in enumerate(levels)])
    order = np.argsort(big, kind="stable")
    sb, ss = big[order], sizes[order]
    dup = np.flatnonzero(sb[1:] == sb[:-1])
    if dup.size == 0:
        return False
    if a == b:
        return True
    # A duplicated syndrome needs one member of size <= b.
    starts = np.flatnonzero(np.r_[True, sb[1:] != sb[:-1]])
    counts = np.diff(np.r_[starts, len(sb)])
    mins = np.minimum.reduceat(ss, starts)
    return bool(((counts > 1) & (mins <= b)).any())


def min_dependency_size(cols: np.ndarray, n: int, target: int = 0, both: bool = False) -> int:
    """Smallest w such that some nonempty set of w columns XORs to zero.

    With ``both``, also stop at the first w reaching ``target``; this gives the
    bilateral distance when ``target`` is the XOR of all columns.
    """
    for w in range(1, n + 1):
        if has_small_dependency(cols, w):
            return w
        if both and has_small_dependency(cols, w, target):
            return w
    raise ValueError("no dependency found; the code is trivial")


# -- constructions -------------------------------------------------------------

def dual_bch(s: int, m: int) -> LinearCode:
    """The dual of the binary narrow-sense BCH code of designed distance 2s+1.

    Generated by the bit expansions of the parity rows (alpha^(i*j))_j for
    i = 1, 3, ..., 2s-1, in the field of ``gf.PRIMITIVE_POLYS[m]``.
    """
    if m < 2 or s < 1:
        raise ValueError("need m >= 2 and s >= 1")
    if not 2 * s - 2 < 2 ** (m / 2):
        raise ValueError(f"s={s}, m={m} violates 2s-2 < 2^(m/2)")
    field = FieldGF2m(m)
    n = field.order
    cosets = [frozenset(cyclotomic_coset(i, n)) for i in range(1, 2 * s, 2)]
    if any(len(c) != m for c in cosets) or len(frozenset().union(*cosets)) != s * m:
        raise ValueError(f"cyclotomic cosets for s={s}, m={m} are not distinct of size m")
    j = np.arange(n)
    rows = []
    for i in range(1, 2 * s, 2):
        vals = field.alpha_pow(i * j)
        for bit in range(m):
            row = 0
            for pos in np.flatnonzero((vals >> bit) & 1):
                row |= 1 << int(pos)
            rows.append(row)
    code = LinearCode.span(n, rows)
    if code.k != s * m:
        raise ValueError(f"dual BCH({s},{m}) has dimension {code.k}, expected {s * m}")
    return code


def extend_code(c: LinearCode, d: int) -> LinearCode:
    """C x {0,1}^d: append d free coordinates."""
    if d < 1:
        raise ValueError("d must be positive")
    rows = list(c.rows) + [1 << (c.n + i) for i in range(d)]
    return LinearCode(c.n + d, rows)


def sum_code(c: LinearCode, d: LinearCode) -> LinearCode:
    if c.n != d.n:
        raise ValueError("block lengths differ")
    return LinearCode.span(c.n, list(c.rows) + list(d.rows))


def zero_code(n: int) -> LinearCode:
    return LinearCode(n, ())


def full_code(n: int) -> LinearCode:
    return LinearCode(n, [1 << i for i in range(n)])


def repetition_code(n: int) -> LinearCode:
    return LinearCode(n, [(1 << n) - 1])


def hamming_code(r: int) -> LinearCode:
    """The [2^r - 1, 2^r - 1 - r] Hamming code (null space of all nonzero r-bit columns)."""
    n = (1 << r) - 1
    parity = [sum(1 << (j - 1) for j in range(1, n + 1) if (j >> i) & 1) for i in range(r)]
    return LinearCode(n, null_space_basis(BitMatrix(n, parity)).rows)


def random_bits(rng: np.random.Generator, n: int) -> int:
    bits = rng.integers(0, 2, size=n, dtype=np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def random_linear_code(n: int, k: int, seed) -> LinearCode:
    """Uniform random k-dimensional code: rows drawn uniformly, dependent draws resampled."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    rng = np.random.default_rng(seed)
    rows: list[int] = []
    while len(rows) < k:
        r = random_bits(rng, n)
        if len(echelon(rows + [r])[0]) == len(rows) + 1:
            rows.append(r)
    return LinearCode(n, rows)

