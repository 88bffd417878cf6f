"""Limited-independence tests and the distribution-level constructions built on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import covering
from .codes import LinearCode, _subset_levels, has_small_dependency
from .covering import ball_volume, sample_points
from .spectral import (
    SupportDistribution,
    binomial_dist,
    convolve,
    uniform_e_theta,
)

TOL = 1e-12
_CHUNK = 1 << 22
MAX_PRODUCT_SUPPORT = 1 << 24


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    max_violation: float
    witness: int | None = None

    def __bool__(self) -> bool:
        return self.independent


def low_weight_masks(n: int, k: int) -> np.ndarray:
    """All nonzero z in {0,1}^n with |z| <= k, ordered by weight."""
    if n > 64:
        raise ValueError("masks need n <= 64")
    units = np.array([1 << i for i in range(n)], dtype=np.uint64)
    return np.concatenate(_subset_levels(units, min(k, n))[1:] or [np.zeros(0, np.uint64)])


def high_weight_masks(n: int, k: int) -> np.ndarray:
    """All z with |z| >= n - k, as complements of the low shell (plus the all-ones vector)."""
    full = np.uint64((1 << n) - 1) if n < 64 else np.uint64(0xFFFFFFFFFFFFFFFF)
    low = np.concatenate([np.zeros(1, np.uint64), low_weight_masks(n, k)])
    high = low ^ full
    return high[high != 0]


def character_sums(mu: SupportDistribution, zs: np.ndarray) -> np.ndarray:
    """E_mu chi_z for each z, by direct summation over the support."""
    out = np.empty(len(zs))
    chunk = max(1, _CHUNK // len(mu.support))
    for start in range(0, len(zs), chunk):
        block = zs[start:start + chunk]
        parity = np.bitwise_count(block[:, None] & mu.support[None, :]) & 1
        out[start:start + chunk] = (1.0 - 2.0 * parity) @ mu.probs
    return out


def _result_from_sums(zs: np.ndarray, sums: np.ndarray, tol: float) -> IndependenceResult:
    if len(zs) == 0:
        return IndependenceResult(True, 0.0)
    mags = np.abs(sums)
    i = int(np.argmax(mags))
    worst = float(mags[i])
    return IndependenceResult(worst <= tol, worst, int(zs[i]) if worst > tol else None)


def is_kwise_independent(mu, k: int, tol: float = TOL) -> IndependenceResult:
    """Do all E_mu chi_z vanish for 0 < |z| <= k?

    A LinearCode stands for the uniform distribution on it; then E chi_z is 1
    on the dual and 0 elsewhere, and the test becomes a column-dependency search.
    """
    if not 1 <= k <= mu.n:
        raise ValueError("need 1 <= k <= n")
    if isinstance(mu, LinearCode):
        if mu.k == 0:
            return IndependenceResult(False, 1.0)
        dep = has_small_dependency(mu.columns(), k)
        return IndependenceResult(not dep, 1.0 if dep else 0.0)
    zs = low_weight_masks(mu.n, k)
    return _result_from_sums(zs, character_sums(mu, zs), tol)


def is_bilateral_kwise_independent(mu, k: int, tol: float = TOL) -> IndependenceResult:
    """As ``is_kwise_independent`` but also over the shell |z| >= n - k."""
    if not 1 <= k <= mu.n:
        raise ValueError("need 1 <= k <= n")
    if isinstance(mu, LinearCode):
        if mu.k == 0:
            return IndependenceResult(False, 1.0)
        cols = mu.columns()
        target = int(np.bitwise_xor.reduce(cols))
        dep = (target == 0 or has_small_dependency(cols, k)
               or has_small_dependency(cols, k, target))
        return IndependenceResult(not dep, 1.0 if dep else 0.0)
    zs = np.unique(np.concatenate([low_weight_masks(mu.n, k), high_weight_masks(mu.n, k)]))
    return _result_from_sums(zs, character_sums(mu, zs), tol)


def product_with_uniform(mu: SupportDistribution, d: int) -> SupportDistribution:
    """mu x U_d on n + d coordinates (the new coordinates come last)."""
    if d < 1:
        raise ValueError("d must be positive")
    if mu.n + d > 64:
        raise ValueError("product exceeds 64 coordinates")
    if len(mu) << d > MAX_PRODUCT_SUPPORT:
        raise ValueError("product support too large")
    tail = np.arange(1 << d, dtype=np.uint64) << np.uint64(mu.n)
    pts = (mu.support[:, None] | tail[None, :]).reshape(-1)
    probs = np.repeat(mu.probs / (1 << d), 1 << d)
    return SupportDistribution(mu.n + d, pts, probs, check=False)


def convolve_with_code(mu: SupportDistribution, code: LinearCode) -> SupportDistribution:
    """mu * mu_D."""
    if code.n != mu.n:
        raise ValueError("length mismatch")
    return convolve(mu, SupportDistribution.from_code(code))


def support_cover_report(mu: SupportDistribution, eps: float = 0.0, mode: str = "exact",
                         samples: int = 10_000, seed: int = 0) -> covering.CoverReport:
    """eps-covering radius of the support of mu."""
    if mode == "exact":
        return covering.eps_covering_radius_exact(mu, eps)
    if mode in ("mc", "monte-carlo"):
        return covering.eps_covering_radius_mc(mu, eps, samples, seed)
    raise ValueError(f"unknown mode {mode!r}")


# -- averages over translates ---------------------------------------------------

MAX_EXACT_N = 14


def _translation_points(mu: SupportDistribution, mode: str, samples: int, seed: int):
    if mode == "exact":
        if mu.n > MAX_EXACT_N:
            raise ValueError(f"exact mode needs n <= {MAX_EXACT_N}; use mode='sampled'")
        return np.arange(1 << mu.n, dtype=np.uint64)
    if mode == "sampled":
        return sample_points(mu.n, samples, seed)[:, 0]
    raise ValueError(f"unknown mode {mode!r}")


def translate_weight_dists(mu: SupportDistribution, us: np.ndarray) -> np.ndarray:
    """Row i is the weight distribution of sigma_{u_i} mu."""
    n1 = mu.n + 1
    out = np.empty((len(us), n1))
    chunk = max(1, _CHUNK // len(mu.support))
    for start in range(0, len(us), chunk):
        block = us[start:start + chunk]
        w = np.bitwise_count(block[:, None] ^ mu.support[None, :]).astype(np.int64)
        idx = w + n1 * np.arange(len(block))[:, None]
        weights = np.broadcast_to(mu.probs, w.shape)
        hist = np.bincount(idx.reshape(-1), weights=weights.reshape(-1),
                           minlength=len(block) * n1)
        out[start:start + chunk] = hist.reshape(len(block), n1)
    return out


def avg_translate_l1(mu, mode="exact", samples=4096, seed=0) -> float:
    """E_u ||weight distribution of sigma_u mu - B_n||_1."""
    wds = translate_weight_dists(mu, _translation_points(mu, mode, samples, seed))
    return float(np.abs(wds - binomial_dist(mu.n).probs).sum(axis=1).mean())


def avg_translate_linf(mu, mode="exact", samples=4096, seed=0) -> float:
    wds = translate_weight_dists(mu, _translation_points(mu, mode, samples, seed))
    return float(np.abs(wds - binomial_dist(mu.n).probs).max(axis=1).mean())


def avg_translate_mse(mu, theta: float, mode="exact", samples=4096, seed=0) -> float:
    """E_u |E_{sigma_u mu} e_theta - E_{U_n} e_theta|^2."""
    wds = translate_weight_dists(mu, _translation_points(mu, mode, samples, seed))
    vals = wds @ np.exp(1j * theta * np.arange(mu.n + 1))
    return float(np.mean(np.abs(vals - uniform_e_theta(mu.n, theta)) ** 2))


def avg_extended_l1(mu: SupportDistribution, d: int, mode="exact", samples=4096,
                    seed=0) -> float:
    """avg_translate_l1(mu x U_d) without materializing the product.

    Translating mu x U_d by (u, u') gives sigma_u mu x U_d, whose weight
    distribution is that of sigma_u mu convolved with B_d.
    """
    wds = translate_weight_dists(mu, _translation_points(mu, mode, samples, seed))
    bd = binomial_dist(d).probs
    ext = np.stack([np.convolve(row, bd) for row in wds])
    return float(np.abs(ext - binomial_dist(mu.n + d).probs).sum(axis=1).mean())


def brutee_chain(mu: SupportDistribution, k: int, radius) -> dict:
    """Each step of the covering chain for a k-wise independent mu.

    With d = k + 1, m = n + d and gamma = mu x U_d:
        uncovered(mu, R) <= uncovered(gamma, R) <= avg_l1(gamma) / v_m(R) <= eps.
    """
    from .bounds import HypothesisError, brutee_eps

    d = k + 1
    m = mu.n + d
    uncov_mu = covering.uncovered_fraction(mu, radius)
    gamma = product_with_uniform(mu, d)
    uncov_gamma = covering.uncovered_fraction(gamma, radius) if m <= 22 else None
    l1 = avg_extended_l1(mu, d)
    markov = l1 / float(ball_volume(m, radius))
    try:
        printed = brutee_eps(mu.n, k, radius)
        printed_eps, printed_vacuous, note = printed.value, printed.vacuous, None
    except HypothesisError as exc:
        printed_eps, printed_vacuous, note = None, None, str(exc)
    return {
        "n": mu.n,
        "k": k,
        "radius": radius,
        "uncovered": uncov_mu,
        "uncovered_extended": uncov_gamma,
        "avg_l1_extended": l1,
        "markov_bound": markov,
        "printed_eps": printed_eps,
        "printed_vacuous": printed_vacuous,
        "printed_note": note,
    }
