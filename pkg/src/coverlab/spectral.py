"""Weight distributions of translates, the binomial reference, and the e_theta identities."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bits import (
    check_cube_n,
    cube_popcount,
    echelon,
    format_bits,
    parse_bits,
    walsh_hadamard,
)
from .covering import sample_points

_CHUNK = 1 << 22
MAX_SUPPORT = 1 << 24


@dataclass(frozen=True, eq=False)
class WeightDistribution:
    """A probability vector on [0:n]."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.ndim != 1 or len(p) < 1:
            raise ValueError("weight distribution must be a nonempty vector")
        if (p < 0).any() or abs(p.sum() - 1) > 1e-12:
            raise ValueError("weight distribution must be nonnegative and sum to 1")
        object.__setattr__(self, "probs", p)

    @property
    def n(self) -> int:
        return len(self.probs) - 1

    def __getitem__(self, w):
        return self.probs[w]

    def __array__(self, dtype=None, copy=None):
        return self.probs if dtype is None else self.probs.astype(dtype)


class SupportDistribution:
    """Explicit distribution on {0,1}^n (n <= 64) with distinct support points."""

    def __init__(self, n: int, support, probs=None, *, check: bool = True):
        if not 1 <= n <= 64:
            raise ValueError("support distributions need 1 <= n <= 64")
        support = np.asarray(support, dtype=np.uint64).reshape(-1)
        if probs is None:
            probs = np.full(len(support), 1.0 / len(support))
        probs = np.asarray(probs, dtype=np.float64).reshape(-1)
        if len(support) != len(probs) or len(support) == 0:
            raise ValueError("support and probabilities must be nonempty and match")
        if check:
            if n < 64 and (support >> np.uint64(n)).any():
                raise ValueError("support point longer than n bits")
            if len(np.unique(support)) != len(support):
                raise ValueError("support points must be distinct")
            if (probs <= 0).any() or abs(probs.sum() - 1) > 1e-12:
                raise ValueError("probabilities must be positive and sum to 1")
        self.n = n
        self.support = support
        self.probs = probs

    def __repr__(self) -> str:
        return f"SupportDistribution(n={self.n}, size={len(self.support)})"

    def __len__(self) -> int:
        return len(self.support)

    @classmethod
    def from_masses(cls, n: int, points: np.ndarray, masses: np.ndarray) -> "SupportDistribution":
        """Merge repeated points and drop zero mass."""
        uniq, inv = np.unique(np.asarray(points, dtype=np.uint64), return_inverse=True)
        tot = np.bincount(inv.reshape(-1), weights=masses)
        keep = tot > 0
        probs = tot[keep] / tot[keep].sum()
        return cls(n, uniq[keep], probs, check=False)

    @classmethod
    def point(cls, n: int, u: int = 0) -> "SupportDistribution":
        return cls(n, [u], [1.0])

    @classmethod
    def uniform(cls, n: int) -> "SupportDistribution":
        check_cube_n(n)
        return cls(n, np.arange(1 << n, dtype=np.uint64), check=False)

    @classmethod
    def uniform_on(cls, n: int, points) -> "SupportDistribution":
        return cls(n, np.unique(np.asarray(points, dtype=np.uint64)))

    @classmethod
    def from_code(cls, code) -> "SupportDistribution":
        return cls(code.n, code.codeword_ints(), check=False)

    def character(self, z: int) -> float:
        """E_mu chi_z."""
        signs = 1 - 2 * (np.bitwise_count(self.support & np.uint64(z)) & 1).astype(np.float64)
        return float(signs @ self.probs)

    def to_cube(self) -> np.ndarray:
        check_cube_n(self.n)
        f = np.zeros(1 << self.n)
        f[self.support.astype(np.int64)] = self.probs
        return f

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.support)}"]
        lines += [f"{format_bits(int(x), self.n)} {p!r}" for x, p in zip(self.support, self.probs)]
        return "\n".join(lines) + "\n"


def read_distribution(path) -> SupportDistribution:
    """Header ``n s`` then s lines ``bitstring probability`` (decimal or p/q)."""
    lines = [l.split("#", 1)[0].strip() for l in Path(path).read_text().splitlines()]
    lines = [l for l in lines if l]
    if not lines:
        raise ValueError(f"{path}: empty distribution file")
    n, s = (int(t) for t in lines[0].split())
    if len(lines) - 1 != s:
        raise ValueError(f"{path}: header says {s} points, found {len(lines) - 1}")
    pts, probs = [], []
    for line in lines[1:]:
        bits, prob = line.split()
        if len(bits) != n or set(bits) - {"0", "1"}:
            raise ValueError(f"{path}: bad point {bits!r}")
        pts.append(parse_bits(bits))
        probs.append(float(Fraction(prob)))
    return SupportDistribution(n, pts, probs)


def binomial_dist(n: int) -> WeightDistribution:
    if n < 1:
        raise ValueError("n must be positive")
    return WeightDistribution(np.array([float(p) for p in binomial_exact(n)]))


def binomial_exact(n: int) -> list[Fraction]:
    return [Fraction(math.comb(n, w), 1 << n) for w in range(n + 1)]


def weight_dist(mu: SupportDistribution) -> WeightDistribution:
    w = np.bitwise_count(mu.support).astype(np.int64)
    return WeightDistribution(np.bincount(w, weights=mu.probs, minlength=mu.n + 1))


def translate(mu: SupportDistribution, u: int) -> SupportDistribution:
    """(sigma_u mu)(x) = mu(x + u)."""
    u = int(u)
    if u < 0 or (mu.n < 64 and u >> mu.n):
        raise ValueError("translation vector longer than n")
    return SupportDistribution(mu.n, mu.support ^ np.uint64(u), mu.probs, check=False)


def convolve(mu1: SupportDistribution, mu2: SupportDistribution) -> SupportDistribution:
    """Law of a + b with a ~ mu1, b ~ mu2 independent."""
    if mu1.n != mu2.n:
        raise ValueError("length mismatch")
    if len(mu1) * len(mu2) > MAX_SUPPORT:
        raise ValueError("convolution support product too large")
    pts = (mu1.support[:, None] ^ mu2.support[None, :]).reshape(-1)
    masses = (mu1.probs[:, None] * mu2.probs[None, :]).reshape(-1)
    return SupportDistribution.from_masses(mu1.n, pts, masses)


def e_theta(mu, theta: float) -> complex:
    """E e^{i theta |x|} under a support or weight distribution."""
    wd = weight_dist(mu) if isinstance(mu, SupportDistribution) else mu
    w = np.arange(wd.n + 1)
    return complex(np.exp(1j * theta * w) @ wd.probs)


def uniform_e_theta(n: int, theta: float) -> complex:
    return ((1 + cmath.exp(1j * theta)) / 2) ** n


def uniform_cos_moment(n: int, theta: float) -> float:
    """E_{y ~ U_n} (cos theta)^|y| = ((cos theta + 1) / 2)^n."""
    return ((math.cos(theta) + 1) / 2) ** n


def _translate_weight_iter(mu: SupportDistribution, us: np.ndarray):
    """Yield (block of u, weights |x ^ u| of shape (len(block), |supp|))."""
    chunk = max(1, _CHUNK // len(mu.support))
    for start in range(0, len(us), chunk):
        block = us[start:start + chunk]
        yield block, np.bitwise_count(block[:, None] ^ mu.support[None, :])


def _translates(mu: SupportDistribution, mode: str, samples: int, seed: int,
                max_exact_n: int) -> np.ndarray:
    if mode == "exact":
        if mu.n > max_exact_n:
            raise ValueError(f"exact mode needs n <= {max_exact_n}")
        return np.arange(1 << mu.n, dtype=np.uint64)
    if mode == "sampled":
        return sample_points(mu.n, samples, seed)[:, 0]
    raise ValueError(f"unknown mode {mode!r}")


def mse_translate_lhs(mu: SupportDistribution, theta: float, mode: str = "exact",
                      samples: int = 4096, seed: int = 0) -> float:
    """E_u |E_{sigma_u mu} e_theta - E_{U_n} e_theta|^2 by direct summation over u."""
    us = _translates(mu, mode, samples, seed, max_exact_n=22)
    ref = uniform_e_theta(mu.n, theta)
    phase = np.exp(1j * theta * np.arange(mu.n + 1))
    total = 0.0
    for _, w in _translate_weight_iter(mu, us):
        vals = phase[w] @ mu.probs
        total += float(np.sum(np.abs(vals - ref) ** 2))
    return total / len(us)


def mse_translate_rhs(mu: SupportDistribution, theta: float) -> float:
    """E_{y ~ mu*mu} (cos theta)^|y| - ((cos theta + 1)/2)^n."""
    mm = weight_dist(convolve(mu, mu))
    c = math.cos(theta)
    return float(np.power(c, np.arange(mu.n + 1)) @ mm.probs) - uniform_cos_moment(mu.n, theta)


def l1_to_binomial(wd) -> float:
    p = np.asarray(wd, dtype=np.float64)
    return float(np.abs(p - binomial_dist(len(p) - 1).probs).sum())


def linf_to_binomial(wd) -> float:
    p = np.asarray(wd, dtype=np.float64)
    return float(np.abs(p - binomial_dist(len(p) - 1).probs).max())


def coset_representatives(code) -> np.ndarray:
    """One vector per coset: all vectors supported on the non-pivot coordinates."""
    _, pivots = echelon(code.rows)
    free = [j for j in range(code.n) if j not in set(pivots)]
    if len(free) > 22:
        raise ValueError(f"{len(free)} free coordinates: too many cosets for exact mode")
    reps = np.zeros(1 << len(free), dtype=np.uint64)
    size = 1
    for j in free:
        reps[size:2 * size] = reps[:size] | np.uint64(1 << j)
        size *= 2
    return reps


def coset_l1_values(code, us: np.ndarray) -> np.ndarray:
    """||weight distribution of Q + u  -  B_n||_1 for each u."""
    words = code.codeword_ints()
    mu = SupportDistribution(code.n, words, check=False)
    binom = binomial_dist(code.n).probs
    out = np.empty(len(us))
    pos = 0
    for block, w in _translate_weight_iter(mu, us):
        idx = w.astype(np.int64) + (code.n + 1) * np.arange(len(block))[:, None]
        hist = np.bincount(idx.reshape(-1), minlength=len(block) * (code.n + 1))
        hist = hist.reshape(len(block), code.n + 1) / len(words)
        out[pos:pos + len(block)] = np.abs(hist - binom).sum(axis=1)
        pos += len(block)
    return out


def avg_coset_l1(code, mode: str = "exact", samples: int = 4096, seed: int = 0) -> float:
    """E_{u ~ U_n} ||weight distribution of Q + u - B_n||_1.

    Exact mode averages over coset representatives, which is the same average
    since the weight distribution of Q + u depends only on the coset.
    """
    if mode == "exact":
        return float(np.mean(coset_l1_values(code, coset_representatives(code))))
    if mode == "sampled":
        return float(np.mean(coset_l1_samples(code, samples, seed)))
    raise ValueError(f"unknown mode {mode!r}")


def avg_coset_l1_fraction(code) -> Fraction:
    """The exact-mode average as a rational: every term is a dyadic fraction."""
    n = code.n
    if n > 60:
        raise ValueError("exact rational average needs n <= 60")
    words = code.codeword_ints()
    mu = SupportDistribution(n, words, check=False)
    scale = 1 << (n - code.k)
    binom = np.array([math.comb(n, w) for w in range(n + 1)], dtype=np.int64)
    total = 0
    for block, w in _translate_weight_iter(mu, coset_representatives(code)):
        idx = w.astype(np.int64) + (n + 1) * np.arange(len(block))[:, None]
        hist = np.bincount(idx.reshape(-1), minlength=len(block) * (n + 1))
        hist = hist.reshape(len(block), n + 1).astype(np.int64) * scale
        total += int(np.abs(hist - binom).sum())
    return Fraction(total, (1 << n) * scale)


def coset_l1_samples(code, samples: int, seed: int) -> np.ndarray:
    return coset_l1_values(code, sample_points(code.n, samples, seed)[:, 0])


def exp_cube(n: int, r: complex) -> np.ndarray:
    """g_r(x) = r^|x| on the cube."""
    w = cube_popcount(n)
    return np.power(np.asarray(r, dtype=complex if isinstance(r, complex) else float), w)


def exp_fourier_closed_form(n: int, r: complex) -> np.ndarray:
    """((1 + r)/2)^n ((1 - r)/(1 + r))^|z| for every z (r != -1)."""
    if r == -1:
        raise ValueError("closed form needs r != -1")
    w = cube_popcount(n)
    ratio = (1 - r) / (1 + r)
    return ((1 + r) / 2) ** n * np.power(np.asarray(ratio), w)


def exp_fourier_unimodular(n: int, theta: float) -> np.ndarray:
    """e^{i n theta/2} cos(theta/2)^n (-i tan(theta/2))^|z|, the r = e^{i theta} case."""
    w = cube_popcount(n)
    t = -1j * math.tan(theta / 2)
    return cmath.exp(1j * n * theta / 2) * math.cos(theta / 2) ** n * np.power(t, w)


def exp_fourier_transform(n: int, r: complex) -> np.ndarray:
    return walsh_hadamard(exp_cube(n, r))
