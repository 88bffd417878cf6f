"""Packed binary vectors and matrices over GF(2), plus cube-function transforms.

Vectors are Python ints with bit ``i`` holding coordinate ``i + 1``; the text
form writes coordinate 1 leftmost.  Functions on the cube {0,1}^n are flat
numpy arrays of length 2^n indexed by that integer encoding.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_N = 26


def max_cube_n() -> int:
    """Largest n for which whole-cube arrays are allowed (env ``COVERLAB_MAX_N``)."""
    return int(os.environ.get("COVERLAB_MAX_N", DEFAULT_MAX_N))


class CubeTooLarge(ValueError):
    pass


def check_cube_n(n: int) -> None:
    limit = max_cube_n()
    if n > limit:
        raise CubeTooLarge(
            f"n={n} exceeds the exact-cube limit {limit}; use a sampling path "
            "or raise COVERLAB_MAX_N"
        )


@dataclass(frozen=True)
class BitVector:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("length must be positive")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits beyond the vector length must be zero")

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls(len(text), parse_bits(text))

    @classmethod
    def ones(cls, n: int) -> "BitVector":
        return cls(n, (1 << n) - 1)

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if other.n != self.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def words(self) -> np.ndarray:
        return int_to_words(self.bits, words_for(self.n))

    def __str__(self) -> str:
        return format_bits(self.bits, self.n)


def weight(v) -> int:
    """Hamming weight of a BitVector or a nonnegative int."""
    if isinstance(v, BitVector):
        return v.weight()
    return int(v).bit_count()


def parse_bits(text: str) -> int:
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def format_bits(x: int, n: int) -> str:
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def words_for(n: int) -> int:
    return (n + 63) // 64


def int_to_words(x: int, nwords: int) -> np.ndarray:
    out = np.empty(nwords, dtype=np.uint64)
    mask = (1 << 64) - 1
    for w in range(nwords):
        out[w] = (x >> (64 * w)) & mask
    return out


def words_to_int(words) -> int:
    return sum(int(w) << (64 * i) for i, w in enumerate(words))


@dataclass(frozen=True)
class BitMatrix:
    n: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.n:
                raise ValueError("row longer than the matrix width")

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "BitMatrix":
        vecs = [BitVector.from_str(s) for s in lines]
        if not vecs:
            raise ValueError("empty matrix needs an explicit width")
        n = vecs[0].n
        if any(v.n != n for v in vecs):
            raise ValueError("rows have different lengths")
        return cls(n, tuple(v.bits for v in vecs))

    @property
    def k(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def to_array(self) -> np.ndarray:
        """Dense 0/1 array of shape (k, n)."""
        out = np.zeros((self.k, self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                out[i, j] = (r >> j) & 1
        return out

    def to_text(self) -> str:
        return "\n".join(format_bits(r, self.n) for r in self.rows)


def read_bitmatrix(path, n: int | None = None) -> BitMatrix:
    """One row per line; ``#`` starts a comment, blank lines are skipped."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        if n is None:
            raise ValueError(f"{path}: no rows and no width given")
        return BitMatrix(n, ())
    m = BitMatrix.from_strings(lines)
    if n is not None and m.n != n:
        raise ValueError(f"{path}: rows have length {m.n}, expected {n}")
    return m


def echelon(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form over GF(2).

    Pivots are taken on the lowest set bit of each basis row.  Returns the
    nonzero reduced rows and their pivot bit positions, sorted by pivot.
    """
    basis: dict[int, int] = {}
    for r in rows:
        r = int(r)
        for p, b in basis.items():
            if (r >> p) & 1:
                r ^= b
        if not r:
            continue
        p = (r & -r).bit_length() - 1
        for q in list(basis):
            if (basis[q] >> p) & 1:
                basis[q] ^= r
        basis[p] = r
    pivots = sorted(basis)
    return [basis[p] for p in pivots], pivots


def rank(m: BitMatrix | Sequence[int]) -> int:
    rows = m.rows if isinstance(m, BitMatrix) else m
    return len(echelon(rows)[0])


def null_space_basis(m: BitMatrix) -> BitMatrix:
    """Basis of {x : <row, x> = 0 for every row}."""
    reduced, pivots = echelon(m.rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.n):
        if f in pivot_set:
            continue
        x = 1 << f
        for r, p in zip(reduced, pivots):
            if (r >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return BitMatrix(m.n, tuple(basis))


def span_words(rows: Sequence[int], n: int) -> np.ndarray:
    """All 2^k elements of the span of ``rows`` as a (2^k, W) uint64 array.

    Element ``j`` is the XOR of the rows selected by the bits of ``j``.
    """
    nw = words_for(n)
    out = np.zeros((1 << len(rows), nw), dtype=np.uint64)
    size = 1
    for r in rows:
        out[size:2 * size] = out[:size] ^ int_to_words(r, nw)
        size *= 2
    return out


def popcount_words(words: np.ndarray) -> np.ndarray:
    """Row-wise Hamming weight of a (N, W) uint64 array (or of a flat uint64 array)."""
    counts = np.bitwise_count(words)
    if words.ndim == 1:
        return counts.astype(np.int64)
    return counts.sum(axis=1, dtype=np.int64)


def cube_popcount(n: int) -> np.ndarray:
    """Weight of every index 0..2^n-1."""
    check_cube_n(n)
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)


def _cube_n(f: np.ndarray) -> int:
    size = f.shape[0]
    if f.ndim != 1 or size < 1 or size & (size - 1):
        raise ValueError(f"cube function length {size} is not a power of two")
    n = size.bit_length() - 1
    check_cube_n(n)
    return n


def fwht(f: np.ndarray) -> np.ndarray:
    """Unnormalized transform: out[z] = sum_x f(x) (-1)^<x,z>.  Self-inverse up to 2^n."""
    n = _cube_n(f)
    dtype = np.complex128 if np.iscomplexobj(f) else np.float64
    a = np.array(f, dtype=dtype)
    for i in range(n):
        v = a.reshape(-1, 2, 1 << i)
        lo = v[:, 0, :].copy()
        hi = v[:, 1, :]
        v[:, 0, :] += hi
        lo -= hi
        v[:, 1, :] = lo
    return a


def walsh_hadamard(f: np.ndarray) -> np.ndarray:
    """Fourier coefficients with expectation normalization: 2^-n sum_x f(x) chi_z(x)."""
    n = _cube_n(np.asarray(f))
    return fwht(np.asarray(f)) / float(1 << n)


def inverse_walsh_hadamard(fhat: np.ndarray) -> np.ndarray:
    """f(x) = sum_z fhat(z) chi_z(x)."""
    return fwht(np.asarray(fhat))


def xor_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(x) = sum_y f(y) g(x + y), computed through the transform."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape:
        raise ValueError(f"length mismatch: {f.shape} vs {g.shape}")
    n = _cube_n(f)
    return inverse_walsh_hadamard(walsh_hadamard(f) * walsh_hadamard(g)) * float(1 << n)


def weighted_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """2^-n (f * g); its transform is the pointwise product of the transforms."""
    f = np.asarray(f)
    return inverse_walsh_hadamard(walsh_hadamard(f) * walsh_hadamard(np.asarray(g)))


def flip_coordinate(a: np.ndarray, i: int) -> np.ndarray:
    """View of the cube array with coordinate ``i`` toggled: out[x] = a[x ^ (1 << i)]."""
    return a.reshape(-1, 2, 1 << i)[:, ::-1, :].reshape(a.shape)


def indicator(points, n: int) -> np.ndarray:
    check_cube_n(n)
    a = np.zeros(1 << n, dtype=bool)
    pts = np.asarray(points, dtype=np.uint64).reshape(-1)
    a[pts.astype(np.int64)] = True
    return a
