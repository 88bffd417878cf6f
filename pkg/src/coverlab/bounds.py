"""Closed-form bounds on covering radii and on weight distributions of translates.

Every evaluator is a pure function.  Logs are natural except in ``entropy``,
which is base 2.  Results that say nothing (an uncovered-fraction bound above 1,
an L1 bound above 2, a negative radius) are returned with ``vacuous=True``
instead of being clamped.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .covering import ball_volume, log_ball_volume

E = math.e


class HypothesisError(ValueError):
    """The inputs fall outside the range where the formula is stated."""


@dataclass(frozen=True)
class Bound:
    value: float
    vacuous: bool = False
    hypothesis: str = ""
    log_value: float | None = None

    def __float__(self) -> float:
        return self.value


def _from_log(log_value: float, cap: float, hypothesis: str) -> Bound:
    value = math.exp(log_value) if log_value < 700 else math.inf
    return Bound(value, value > cap, hypothesis, log_value)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _odd_at_least_7(d: int, name: str = "d") -> str:
    _require(d >= 7 and d % 2 == 1, f"{name}={d} must be odd and >= 7")
    return f"{name} odd >= 7"


# -- covering radius of codes --------------------------------------------------

def tietavainen_upper(n: int, d: int) -> Bound:
    """Upper bound on the covering radius given dual distance d (t read as s)."""
    _require(d >= 2, "d must be >= 2")
    if d % 2 == 0:
        s = d // 2
        _require(s <= n, "need s <= n")
        v = n / 2 - math.sqrt(s * (n - s)) + s ** (1 / 6) * math.sqrt(n - s)
        hyp = "d=2s even; t=s"
    else:
        s = (d - 1) // 2
        _require(s <= n - 1, "need s <= n - 1")
        v = n / 2 - math.sqrt(s * (n - 1 - s)) + s ** (1 / 6) * math.sqrt(n - 1 - s) - 0.5
        hyp = "d=2s+1 odd; t=s"
    return Bound(v, v < 0 or v >= n, hyp)


def tietavainen_lower_smallcodes(n: int, K: int, d: int, eps: float = 0.0) -> Bound:
    """Lower bound on the eps-covering radius for all but a 1/n fraction of codes of size K."""
    _require(0 <= eps < 1, "eps must lie in [0, 1)")
    _require(1 <= d <= n, "need 1 <= d <= n")
    v = n / 2 - math.sqrt(d * n / 2 * math.log(E * n / d) + n * math.log((n + 1) / (1 - eps)))
    size_ok = n <= K <= 2 ** (n - 1) and K & (K - 1) == 0
    hyp = "n <= K <= 2^(n-1), K a power of 2" + ("" if size_ok else " (violated)")
    return Bound(v, v < 0, hyp)


def cohen_dimension(n: int, radius) -> int:
    """ceil(log2(n log 2 / v_n(R))): a code of this dimension reaches covering radius R."""
    _require(0 < radius <= n, "need 0 < R <= n")
    log_v = log_ball_volume(n, radius)
    return math.ceil((math.log(n * math.log(2)) - log_v) / math.log(2))


def cohen_explicit(n: int, s: float, eps_prime: float) -> Bound:
    """n/2 - sqrt((s-1) n log n / (2 + eps')) + sqrt(2n) + 2."""
    _require(s > 1, "need s > 1")
    _require(eps_prime > 0, "need eps' > 0")
    v = n / 2 - math.sqrt((s - 1) * n * math.log(n) / (2 + eps_prime)) + math.sqrt(2 * n) + 2
    return Bound(v, v < 0 or v >= n, "s > 1; asymptotic in n")


def log_brute_eps(n: int, d: int, radius) -> float:
    m = n + d
    log_v = log_ball_volume(m, radius)
    return (math.log(d) - log_v
            + (d - 1) / 2 * math.log(E * math.log(m / (d - 1)))
            + (d - 5) / 4 * math.log((d - 1) / m))


def brute_eps(n: int, d: int, radius) -> Bound:
    """Uncovered-fraction bound at radius R for codes with dual distance >= d."""
    hyp = _odd_at_least_7(d)
    _require(radius > 0, "need R > 0")
    if ball_volume(n + d, radius) == 0:
        return Bound(math.inf, True, hyp, math.inf)
    return _from_log(log_brute_eps(n, d, radius), 1.0, hyp)


def maincor1_radius(n: int, d: int) -> tuple[Bound, Bound]:
    """(R, eps) with R = n/2 - sqrt((d-5) n log(n/(d-1)) / 13), eps = ((d-1)/n)^((d-5)/13)."""
    hyp = _odd_at_least_7(d)
    _require(n > d - 1, "need n > d - 1 for a real radius")
    delta = math.sqrt((d - 5) * n * math.log(n / (d - 1)) / 13)
    r = n / 2 - delta
    eps = ((d - 1) / n) ** ((d - 5) / 13)
    return Bound(r, r <= 0, hyp + "; asymptotic in n"), Bound(eps, eps > 1, hyp)


def dbchapp_radius(n: int, s: int) -> tuple[Bound, Bound]:
    """The dual BCH specialization d = 2s + 1.

    The radius is the general one at d = 2s + 1; eps uses the exponent
    (2s - 5)/13, slightly larger than the (2s - 4)/13 the general form gives.
    """
    _require(s >= 3, "need s >= 3")
    r, _ = maincor1_radius(n, 2 * s + 1)
    eps = (2 * s / n) ** ((2 * s - 5) / 13)
    return r, Bound(eps, eps > 1, "dual BCH, s >= 3")


def wcu_lower(n: int, s: int) -> Bound:
    """n/2 - (s-1) sqrt(n+1) - 1/2: covering radius lower bound for dual BCH codes."""
    v = n / 2 - (s - 1) * math.sqrt(n + 1) - 0.5
    return Bound(v, v < 0, "dual BCH(s, m), n = 2^m - 1")


def sphere_cover_eps(n: int, K: int, eps: float = 0.0) -> Bound:
    """n/2 - sqrt(n log(K/(1-eps)) / 2): lower bound on the eps-covering radius of K points."""
    _require(K >= 1, "need K >= 1")
    _require(0 <= eps < 1, "eps must lie in [0, 1)")
    v = n / 2 - math.sqrt(0.5 * n * math.log(K / (1 - eps)))
    return Bound(v, v < 0, "any code of size K")


def gv_f(n: int, x: float) -> float:
    """n x (e n / (x - 1))^(x - 1), with the x = 1 value n."""
    if x == 1:
        return float(n)
    return n * x * (E * n / (x - 1)) ** (x - 1)


def gv_tail(n: int, K: int, dbar: int) -> Bound:
    """(dbar/K) C(n, dbar-1): bound on P[dual distance < dbar] for a random code of size K."""
    _require(1 <= dbar <= n / 2 + 1, "need 1 <= dbar <= n/2 + 1")
    v = dbar / K * math.comb(n, dbar - 1)
    return Bound(v, v >= 1, "random dual generator matrix")


def gv_union(n: int, K: int, dbar: int) -> float:
    """(|C^perp| - 1) 2^-n |B_n(0; dbar-1)|, the union bound gv_tail relaxes."""
    dual_size = 2 ** n // K
    return (dual_size - 1) * float(ball_volume(n, dbar - 1))


def entropy(x: float) -> float:
    """Binary entropy in bits."""
    _require(0 <= x <= 1, "x must lie in [0, 1]")
    if x in (0, 1):
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def binom_lower(n: int, lam: float) -> float:
    """2^(n H(lam)) / sqrt(8 n lam (1 - lam)) <= C(n, lam n)."""
    _require(0 < lam < 1, "need 0 < lambda < 1")
    _require(abs(lam * n - round(lam * n)) < 1e-9, "lambda n must be an integer")
    return 2 ** (n * entropy(lam)) / math.sqrt(8 * n * lam * (1 - lam))


# -- weight distributions of translates ------------------------------------------

L1_CAP = 2.0
LINF_CAP = 1.0
MSE_CAP = 1.0


def bilateral_l1_bound(n: int, b: int) -> Bound:
    """b (e ln(n/(b-1)))^((b-1)/2) ((b-1)/n)^((b-5)/4)."""
    hyp = _odd_at_least_7(b, "b")
    _require(n > b - 1, "need n > b - 1")
    log_v = (math.log(b) + (b - 1) / 2 * math.log(E * math.log(n / (b - 1)))
             + (b - 5) / 4 * math.log((b - 1) / n))
    return _from_log(log_v, L1_CAP, hyp)


def _even_k(k: int, least: int) -> str:
    _require(k >= least and k % 2 == 0, f"k={k} must be even and >= {least}")
    return f"k even >= {least}"


def maino_a(n: int, k: int) -> Bound:
    hyp = _even_k(k, 2)
    _require(n > k, "need n > k")
    log_v = k * math.log(E * math.log(n / k)) + k / 2 * math.log(k / n)
    return _from_log(log_v, MSE_CAP, hyp)


def maino_b(n: int, k: int) -> Bound:
    hyp = _even_k(k, 2)
    v = 2 * math.exp(-k / 10)
    return Bound(v, v > MSE_CAP, hyp)


def sumth_a(n: int, k: int) -> Bound:
    hyp = _even_k(k, 2)
    _require(n > k, "need n > k")
    log_v = k / 2 * math.log(E * math.log(n / k)) + k / 4 * math.log(k / n)
    return _from_log(log_v, LINF_CAP, hyp)


def sumth_b(n: int, k: int) -> Bound:
    hyp = _even_k(k, 2)
    v = math.sqrt(2) * math.exp(-k / 20)
    return Bound(v, v > LINF_CAP, hyp)


def wdle1_a(n: int, k: int) -> Bound:
    hyp = _even_k(k, 6)
    _require(n > k, "need n > k")
    log_v = (math.log(k + 1) + k / 2 * math.log(E * math.log(n / k))
             + (k / 4 - 1) * math.log(k / n))
    return _from_log(log_v, L1_CAP, hyp)


def wdle1_b(n: int, k: int) -> Bound:
    hyp = _even_k(k, 6)
    v = math.sqrt(2) * (n + 1) * math.exp(-k / 20)
    return Bound(v, v > L1_CAP, hyp)


def kwise_bounds(n: int, k: int) -> dict[str, Bound | str]:
    """The six translate bounds for bilaterally k-wise independent distributions."""
    out: dict[str, Bound | str] = {}
    for name, fn in [("maino_a", maino_a), ("maino_b", maino_b), ("sumth_a", sumth_a),
                     ("sumth_b", sumth_b), ("wdle1_a", wdle1_a), ("wdle1_b", wdle1_b)]:
        try:
            out[name] = fn(n, k)
        except HypothesisError as exc:
            out[name] = f"not-applicable({exc})"
    return out


def brutee_eps(n: int, k: int, radius) -> Bound:
    """Uncovered-fraction bound for k-wise independent distributions (d = k + 1)."""
    hyp = _even_k(k, 6) + "; d = k + 1"
    _require(radius > 0, "need R > 0")
    d = k + 1
    m = n + k + 1
    if ball_volume(m, radius) == 0:
        return Bound(math.inf, True, hyp, math.inf)
    log_eps = (math.log(d) - log_ball_volume(m, radius)
               + k / 2 * math.log(E * math.log(m / k)) + (k / 4 - 1) * math.log(k / m))
    return _from_log(log_eps, 1.0, hyp)


def maincor1e_radius(n: int, k: int) -> tuple[Bound, Bound]:
    """Distribution version: R = n/2 - sqrt((k-4) n log(n/k) / 13), eps = (k/n)^((k-4)/13)."""
    hyp = _even_k(k, 6)
    _require(n > k, "need n > k")
    r = n / 2 - math.sqrt((k - 4) * n * math.log(n / k) / 13)
    eps = (k / n) ** ((k - 4) / 13)
    return Bound(r, r <= 0, hyp + "; asymptotic in n"), Bound(eps, eps > 1, hyp)


# -- assembly --------------------------------------------------------------------

BOUND_NAMES = (
    "tietavainen_upper", "tietavainen_lower", "cohen_dim", "cohen_explicit_R", "brute_eps",
    "maincor1_R", "maincor1_eps", "wcu_lower_R", "sphere_cover_R", "l1_bilateral_bound",
    "maino_a", "maino_b", "sumth_a", "sumth_b", "wdle1_a", "wdle1_b",
)


@dataclass
class BoundSet:
    inputs: dict
    outputs: dict = field(default_factory=dict)

    def record(self, name: str, fn, *args) -> None:
        try:
            res = fn(*args)
        except HypothesisError as exc:
            self.outputs[name] = {"applicable": False, "reason": str(exc)}
            return
        if isinstance(res, Bound):
            entry = {"applicable": True, **asdict(res)}
            if not math.isfinite(entry["value"]):
                entry["value"] = None
        else:
            entry = {"applicable": True, "value": res, "vacuous": False, "hypothesis": ""}
        self.outputs[name] = entry

    def all_vacuous(self) -> bool:
        return not any(o["applicable"] and not o["vacuous"] for o in self.outputs.values())

    def to_dict(self) -> dict:
        return {"schema": 1, "inputs": self.inputs, "bounds": self.outputs}

    def csv_row(self) -> dict:
        row = dict(self.inputs)
        for name in BOUND_NAMES:
            o = self.outputs.get(name)
            if o is None or not o["applicable"]:
                row[name] = "n/a"
            elif o["vacuous"] or o["value"] is None:
                row[name] = "vacuous"
            elif isinstance(o["value"], int):
                row[name] = str(o["value"])
            else:
                row[name] = repr(float(o["value"]))
        return row


def bound_set(n: int, d: int, K: int | None = None, eps: float = 0.0,
              eps_prime: float = 0.1, radius: float | None = None) -> BoundSet:
    """Evaluate every bound at one parameter point.

    s = floor((d-1)/2) plays the dual-BCH role.  K defaults to 2^(s m) with
    m = ceil(log2(n+1)), the size of a dual BCH code with the same s.  The
    radius for ``cohen_dim`` and ``brute_eps`` defaults to floor(maincor1_R).
    """
    s = (d - 1) // 2
    m = math.ceil(math.log2(n + 1))
    if K is None:
        K = 2 ** (s * m)
    if radius is None:
        try:
            radius = math.floor(maincor1_radius(n, d)[0].value)
        except HypothesisError:
            radius = math.floor(n / 2)
    bs = BoundSet({"n": n, "d": d, "K": K, "eps": eps, "eps_prime": eps_prime,
                   "radius": radius, "s": s})
    bs.record("tietavainen_upper", tietavainen_upper, n, d)
    bs.record("tietavainen_lower", tietavainen_lower_smallcodes, n, K, d, eps)
    bs.record("cohen_dim", cohen_dimension, n, radius)
    bs.record("cohen_explicit_R", cohen_explicit, n, s, eps_prime)
    bs.record("brute_eps", brute_eps, n, d, radius)
    try:
        r, e = maincor1_radius(n, d)
        bs.record("maincor1_R", lambda: r)
        bs.record("maincor1_eps", lambda: e)
        if r.value > 0:
            cert = brute_eps(n, d, r.value)
            bs.outputs["maincor1_R"]["certified_by_brute"] = (
                not cert.vacuous and cert.value <= e.value)
    except HypothesisError as exc:
        for name in ("maincor1_R", "maincor1_eps"):
            bs.outputs[name] = {"applicable": False, "reason": str(exc)}
    bs.record("wcu_lower_R", wcu_lower, n, s)
    bs.record("sphere_cover_R", sphere_cover_eps, n, K, eps)
    bs.record("l1_bilateral_bound", bilateral_l1_bound, n, d)
    k = d - 1 if (d - 1) % 2 == 0 else d - 2
    for name, val in kwise_bounds(n, k).items():
        if isinstance(val, Bound):
            bs.record(name, lambda v=val: v)
        else:
            bs.outputs[name] = {"applicable": False, "reason": val}
    bs.inputs["k"] = k
    return bs
