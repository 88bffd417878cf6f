"""Exact and sampled covering radii, uncovered fractions and Hamming-ball volumes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .bits import check_cube_n, flip_coordinate, max_cube_n, indicator, int_to_words, words_for

CONFIDENCE = 0.99
# Upper limit on (samples x codewords) pairs held in memory at once.
_CHUNK_PAIRS = 1 << 23


def point_set(obj) -> tuple[int, np.ndarray]:
    """(n, packed (N, W) points) for a LinearCode, a SupportDistribution or an (n, ints) pair."""
    if isinstance(obj, tuple):
        n, pts = obj
        nw = words_for(n)
        return n, np.array([int_to_words(int(p), nw) for p in pts], dtype=np.uint64).reshape(-1, nw)
    if hasattr(obj, "support"):
        return obj.n, np.asarray(obj.support, dtype=np.uint64).reshape(-1, 1)
    return obj.n, obj.codewords()


def distance_transform(obj) -> np.ndarray:
    """dist(u, C) for every cube point u, by multi-source breadth-first search."""
    n, pts = point_set(obj)
    check_cube_n(n)
    if len(pts) == 0:
        raise ValueError("empty point set")
    dist = np.full(1 << n, -1, dtype=np.int8)
    frontier = indicator(pts[:, 0], n)
    covered = frontier.copy()
    dist[frontier] = 0
    r = 0
    while frontier.any():
        r += 1
        nxt = np.zeros_like(frontier)
        for i in range(n):
            nxt |= flip_coordinate(frontier, i)
        nxt &= ~covered
        covered |= nxt
        dist[nxt] = r
        frontier = nxt
    return dist


def coset_leader_profile(code) -> np.ndarray:
    """profile[w] = number of cosets of a linear code whose lightest vector has weight w.

    Breadth-first search over the 2^(n-k) syndromes, stepping by the columns of
    a parity-check matrix.  Sums to 2^(n-k); every coset holds 2^k points.
    """
    cached = getattr(code, "__dict__", {}).get("_coset_profile")
    if cached is not None:
        return cached.copy()
    r = code.n - code.k
    profile = np.zeros(code.n + 1, dtype=np.int64)
    if r == 0:
        profile[0] = 1
        return profile
    check_cube_n(r)
    cols = sorted({int(c) for c in code.dual.columns()} - {0})
    idx = np.arange(1 << r, dtype=np.uint32)
    frontier = np.zeros(1 << r, dtype=bool)
    frontier[0] = True
    covered = frontier.copy()
    profile[0] = 1
    w = 0
    while frontier.any():
        w += 1
        nxt = np.zeros_like(frontier)
        for c in cols:
            nxt |= frontier[idx ^ np.uint32(c)]
        nxt &= ~covered
        if not nxt.any():
            break
        covered |= nxt
        profile[w] = int(nxt.sum())
        frontier = nxt
    if hasattr(code, "__dict__"):
        code.__dict__["_coset_profile"] = profile.copy()
    return profile


def _fractional_profile(obj) -> tuple[np.ndarray, int]:
    """(counts, total): counts[w] / total is the fraction of the cube at distance w."""
    if hasattr(obj, "dual") and hasattr(obj, "rows"):
        prof = coset_leader_profile(obj)
        return prof, 1 << (obj.n - obj.k)
    n, _ = point_set(obj)
    return distance_profile(obj), 1 << n


def distance_profile(obj) -> np.ndarray:
    """profile[w] = number of cube points at distance exactly w from the set."""
    if hasattr(obj, "dual") and hasattr(obj, "rows") and obj.n - obj.k <= max_cube_n():
        prof = coset_leader_profile(obj)
        if obj.n < 63:
            return prof << obj.k
        return np.array([int(c) << obj.k for c in prof], dtype=object)
    n, _ = point_set(obj)
    return np.bincount(distance_transform(obj), minlength=n + 1).astype(np.int64)


@dataclass
class CoverReport:
    n: int
    radius: int
    epsilon_target: float | None
    method: str
    uncovered_fraction: Fraction | float
    half_width: float = 0.0
    ci_low: float | None = None
    ci_high: float | None = None
    seed: int | None = None
    samples: int | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "radius": self.radius,
            "epsilon_target": self.epsilon_target,
            "method": self.method,
            "uncovered_fraction": float(self.uncovered_fraction),
            "half_width": self.half_width,
            "seed": self.seed,
            "samples": self.samples,
        }
        if isinstance(self.uncovered_fraction, Fraction):
            out["uncovered_exact"] = str(self.uncovered_fraction)
        if self.ci_low is not None:
            out["ci_low"], out["ci_high"] = self.ci_low, self.ci_high
            out["confidence"] = CONFIDENCE
        out.update(self.extra)
        return out


def _radius_from_tail(tail_counts: np.ndarray, allowed) -> int:
    """Smallest r with tail_counts[r] <= allowed; tail_counts[r] = #points beyond r."""
    return int(np.flatnonzero(tail_counts <= allowed)[0])


def _tail(profile: np.ndarray) -> np.ndarray:
    # tail[r] = sum_{w > r} profile[w]
    return np.concatenate([np.cumsum(profile[::-1])[::-1][1:], [0]])


def eps_covering_radius_exact(obj, eps: float = 0.0) -> CoverReport:
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    n = obj.n if not isinstance(obj, tuple) else obj[0]
    profile, total = _fractional_profile(obj)
    tail = _tail(profile)
    allowed = Fraction(eps) * total
    r = next(r for r in range(n + 1) if tail[r] <= allowed)
    return CoverReport(
        n=n,
        radius=r,
        epsilon_target=eps,
        method="exact",
        uncovered_fraction=Fraction(int(tail[r]), total),
    )


def covering_radius(obj) -> int:
    return eps_covering_radius_exact(obj, 0.0).radius


def uncovered_fraction(obj, radius) -> Fraction:
    """U_n of the complement of the radius-R neighborhood, exactly."""
    r = math.floor(radius)
    if r < 0:
        return Fraction(1)
    profile, total = _fractional_profile(obj)
    return Fraction(int(profile[r + 1:].sum()), total)


def uncovered_indicator(obj, radius) -> np.ndarray:
    return distance_transform(obj) > math.floor(radius)


def wilson_interval(successes: int, trials: int, confidence: float = CONFIDENCE):
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("need at least one trial")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def sample_points(n: int, samples: int, seed: int) -> np.ndarray:
    """Uniform points of {0,1}^n as a (samples, W) uint64 array.

    Sample i is made of raw words i*W .. i*W + W - 1 of the Philox stream keyed
    by ``seed``, so any sample can be regenerated from (seed, i) alone.
    """
    nw = words_for(n)
    raw = np.random.Philox(key=seed).random_raw(samples * nw)
    raw = np.asarray(raw, dtype=np.uint64).reshape(samples, nw)
    spare = 64 * nw - n
    if spare:
        raw[:, -1] &= np.uint64((1 << (64 - spare)) - 1)
    return raw


def distances_to_points(us: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """min over p in pts of |u ^ p| for each row u of ``us``."""
    cols = [np.ascontiguousarray(pts[:, w]) for w in range(pts.shape[1])]
    acc_type = np.uint8 if 64 * len(cols) < 256 else np.uint16
    out = np.empty(len(us), dtype=np.int64)
    chunk = max(1, _CHUNK_PAIRS // max(1, len(pts)))
    for start in range(0, len(us), chunk):
        block = us[start:start + chunk]
        acc = np.zeros((len(block), len(pts)), dtype=acc_type)
        for w, col in enumerate(cols):
            acc += np.bitwise_count(block[:, w, None] ^ col[None, :])
        out[start:start + chunk] = acc.min(axis=1)
    return out


def eps_covering_radius_mc(obj, eps: float = 0.0, samples: int = 10_000, seed: int = 0,
                           max_dim: int = 24) -> CoverReport:
    """Sampled eps-covering radius: the empirical (1 - eps) quantile of dist(u, C)."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    if hasattr(obj, "k") and obj.k > max_dim:
        raise ValueError(f"code dimension {obj.k} > {max_dim}: too many codewords to scan")
    n, pts = point_set(obj)
    d = distances_to_points(sample_points(n, samples, seed), pts)
    counts = np.bincount(d, minlength=n + 1)
    tail = _tail(counts)
    r = _radius_from_tail(tail, eps * samples)
    beyond = int(tail[r])
    lo, hi = wilson_interval(beyond, samples)
    return CoverReport(
        n=n,
        radius=r,
        epsilon_target=eps,
        method="monte-carlo",
        uncovered_fraction=beyond / samples,
        half_width=(hi - lo) / 2,
        ci_low=lo,
        ci_high=hi,
        seed=seed,
        samples=samples,
    )


def uncovered_fraction_mc(obj, radius, samples: int = 10_000, seed: int = 0,
                          max_dim: int = 24) -> CoverReport:
    """Sampled uncovered fraction at a fixed radius, with its Wilson interval."""
    if hasattr(obj, "k") and obj.k > max_dim:
        raise ValueError(f"code dimension {obj.k} > {max_dim}: too many codewords to scan")
    n, pts = point_set(obj)
    d = distances_to_points(sample_points(n, samples, seed), pts)
    beyond = int(np.count_nonzero(d > math.floor(radius)))
    lo, hi = wilson_interval(beyond, samples)
    return CoverReport(
        n=n,
        radius=math.floor(radius),
        epsilon_target=None,
        method="monte-carlo",
        uncovered_fraction=beyond / samples,
        half_width=(hi - lo) / 2,
        ci_low=lo,
        ci_high=hi,
        seed=seed,
        samples=samples,
    )


def ball_volume(n: int, radius) -> Fraction:
    """v_n(R) = 2^-n sum_{w <= R} C(n, w), exactly; ``float()`` gives the real value."""
    r = math.floor(radius)
    if r < 0:
        return Fraction(0)
    r = min(r, n)
    total, term = 0, 1
    for w in range(r + 1):
        total += term
        term = term * (n - w) // (w + 1)
    return Fraction(total, 1 << n)


def log_ball_volume(n: int, radius) -> float:
    v = ball_volume(n, radius)
    if v == 0:
        return -math.inf
    return math.log(v.numerator) - math.log(v.denominator)


def ball_volume_lower_bound(n: int, delta: float, eps_prime: float) -> float:
    """exp(-(2 + eps') (delta + sqrt(2n) + 2)^2 / n)."""
    if delta <= 0 or eps_prime <= 0:
        raise ValueError("need delta > 0 and eps' > 0")
    return math.exp(-(2 + eps_prime) * (delta + math.sqrt(2 * n) + 2) ** 2 / n)


def ball_volume_grid_check(ns, delta_fractions, eps_prime: float) -> list[dict]:
    """Compare the lower bound with exact v_n(n/2 - delta); rows flag violations."""
    rows = []
    for n in ns:
        for frac in delta_fractions:
            delta = frac * n
            exact = ball_volume(n, n / 2 - delta)
            bound = ball_volume_lower_bound(n, delta, eps_prime)
            rows.append({
                "n": n,
                "delta": delta,
                "bound": bound,
                "exact": float(exact),
                "holds": bound <= exact,
            })
    return rows

