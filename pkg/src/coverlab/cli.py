"""Command-line front end and experiment harness.

Randomness: every random choice derives from one 64-bit ``--seed``.  Monte
Carlo samples use the Philox stream keyed by the seed (see
``covering.sample_points``); per-task seeds inside an experiment come from
``derive_seed(seed, i)``, word i of a second Philox stream with the same key.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import subprocess
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bounds, covering, kwise, spectral
from .augment import AugmentError, cohen_augment
from .bits import CubeTooLarge
from .codes import CodeTooLarge, dual_bch, random_linear_code, read_code

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_VACUOUS = 0, 1, 2


class UsageError(ValueError):
    pass


def derive_seed(seed: int, i: int) -> int:
    """Word i of the Philox stream keyed by ``seed`` with counter offset 2^192."""
    gen = np.random.Philox(key=seed, counter=[0, 0, 0, 1])
    return int(gen.random_raw(i + 1)[i])


def parse_range(text: str) -> list[int]:
    """'5..7' -> [5, 6, 7]; '5,7' -> [5, 7]; '5' -> [5]."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _clean(obj):
    """Replace non-finite floats by None so JSON stays standard."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dumps(payload: dict) -> str:
    payload = {"schema": SCHEMA, **payload}
    return json.dumps(_clean(payload), default=_json_default, indent=2, allow_nan=False)


def cell(value) -> str:
    """A CSV cell: finite numbers as text, everything else as 'n/a' or 'vacuous'."""
    if value is None:
        return "n/a"
    if isinstance(value, bounds.Bound):
        return "vacuous" if value.vacuous or not math.isfinite(value.value) else repr(value.value)
    if isinstance(value, Fraction):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return repr(float(value)) if math.isfinite(value) else "vacuous"
    return str(value)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0])
    for row in rows[1:]:
        fields += [k for k in row if k not in fields]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", restval="n/a")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: cell(v) for k, v in row.items()})
    return buf.getvalue()


def _load_points(args):
    if getattr(args, "code", None):
        return read_code(args.code)
    if getattr(args, "dist", None):
        return spectral.read_distribution(args.dist)
    raise UsageError("need --code FILE or --dist FILE")


# -- subcommands -------------------------------------------------------------------

def cmd_bch(args) -> int:
    code = dual_bch(args.s, args.m)
    if not args.dual:
        code = code.dual
    sys.stdout.write(code.to_text())
    return EXIT_OK


def cmd_radius(args) -> int:
    obj = _load_points(args)
    if args.mc:
        rep = covering.eps_covering_radius_mc(obj, args.eps, args.samples, args.seed)
    else:
        rep = covering.eps_covering_radius_exact(obj, args.eps)
    print(dumps(rep.to_dict()))
    return EXIT_OK


def _flat(groups) -> list[int]:
    return [v for g in groups for v in g]


def cmd_bounds(args) -> int:
    sets = [bounds.bound_set(n, d, args.K, args.eps, args.eps_prime, args.radius)
            for n in _flat(args.n) for d in _flat(args.d)]
    if args.csv:
        sys.stdout.write(to_csv([bs.csv_row() for bs in sets]))
    elif len(sets) == 1:
        print(dumps(sets[0].to_dict()))
    else:
        print(dumps({"grid": [bs.to_dict() for bs in sets]}))
    return EXIT_VACUOUS if all(bs.all_vacuous() for bs in sets) else EXIT_OK


def cmd_coset_l1(args) -> int:
    code = read_code(args.code)
    if args.samples:
        mode = "sampled"
        value = spectral.avg_coset_l1(code, "sampled", args.samples, args.seed)
    else:
        mode = "exact"
        value = spectral.avg_coset_l1(code, "exact")
    out = {"n": code.n, "k": code.k, "mode": mode, "avg_coset_l1": value,
           "samples": args.samples or None, "seed": args.seed if args.samples else None}
    if args.radius is not None:
        vol = covering.ball_volume(code.n, args.radius)
        markov = value / float(vol) if vol else math.inf
        out["radius"] = args.radius
        out["markov_bound"] = markov
        out["markov_vacuous"] = markov > 1
    print(dumps(out))
    return EXIT_OK


def random_distribution(n: int, rng: np.random.Generator) -> spectral.SupportDistribution:
    size = int(rng.integers(1, min(1 << n, 64) + 1))
    pts = rng.choice(1 << n, size=size, replace=False)
    return spectral.SupportDistribution(n, pts, rng.dirichlet(np.ones(size)))


def identity_deviation(n: int, trials: int, seed: int) -> float:
    """max |lhs - rhs| of the translate MSE identity over random (mu, theta)."""
    rng = np.random.default_rng(derive_seed(seed, n))
    worst = 0.0
    for _ in range(trials):
        mu = random_distribution(n, rng)
        theta = float(rng.uniform(0, 2 * math.pi))
        lhs = spectral.mse_translate_lhs(mu, theta)
        rhs = spectral.mse_translate_rhs(mu, theta)
        worst = max(worst, abs(lhs - rhs))
    return worst


def cmd_identity(args) -> int:
    worst = identity_deviation(args.n, args.trials, args.seed)
    print(dumps({"n": args.n, "trials": args.trials, "seed": args.seed,
                 "max_abs_deviation": worst}))
    return EXIT_OK


def cmd_kwise(args) -> int:
    obj = _load_points(args)
    test = kwise.is_bilateral_kwise_independent if args.bilateral else kwise.is_kwise_independent
    res = test(obj, args.k)
    print(dumps({"n": obj.n, "k": args.k, "bilateral": args.bilateral,
                 "independent": res.independent, "max_violation": res.max_violation,
                 "witness": res.witness}))
    return EXIT_OK


def cmd_augment(args) -> int:
    code = read_code(args.code)
    _, result = cohen_augment(code, args.radius)
    print(dumps({**result.to_dict(), "radius": args.radius}))
    return EXIT_OK


# -- experiments -------------------------------------------------------------------

MC_MAX_DIM = 24


def gap_row(s: int, m: int, eps: float | None, samples: int, seed: int, method: str = "auto") -> dict:
    code = dual_bch(s, m)
    n = code.n
    if eps is None:
        eps = (2 * s / n) ** ((2 * s - 5) / 13)
    if method == "auto":
        method = "exact" if n - code.k <= covering.max_cube_n() else "mc"
    if method == "exact":
        rep = covering.eps_covering_radius_exact(code, eps)
    else:
        rep = covering.eps_covering_radius_mc(code, eps, samples, seed, max_dim=MC_MAX_DIM)

    def safe(fn, *a):
        try:
            return fn(*a)
        except bounds.HypothesisError:
            return None

    r1 = safe(bounds.maincor1_radius, n, 2 * s + 1)
    rb = safe(bounds.dbchapp_radius, n, s)
    wcu = bounds.wcu_lower(n, s)
    tiet = bounds.tietavainen_upper(n, 2 * s + 1)
    return {
        "n": n,
        "m": m,
        "s": s,
        "k": code.k,
        "eps": eps,
        "wcu_lower": wcu,
        "tiet_upper": tiet,
        "maincor1_R": r1[0] if r1 else None,
        "maincor1_eps": r1[1] if r1 else None,
        "dbchapp_eps": rb[1] if rb else None,
        "radius": rep.radius,
        "method": rep.method,
        "uncovered": rep.uncovered_fraction,
        "half_width": rep.half_width,
        "samples": rep.samples,
        "seed": rep.seed,
        "between": wcu.value <= rep.radius <= tiet.value,
        "gap_to_maincor1": (r1[0].value - rep.radius) if r1 else None,
    }


def run_gap(params: dict, seed: int) -> list[dict]:
    family = params.get("family", "dual-bch")
    if family != "dual-bch":
        raise UsageError(f"unknown family {family!r}")
    ms = parse_range(params.get("m", "5..6"))
    s = int(params.get("s", 3))
    samples = int(params.get("samples", 400))
    eps = params.get("eps")
    method = params.get("method", "auto")
    return [gap_row(s, m, None if eps is None else float(eps), samples, seed, method) for m in ms]


def run_bounds_grid(params: dict, seed: int) -> list[dict]:
    ns = params.get("n", [63])
    ds = params.get("d", [7])
    return [bounds.bound_set(int(n), int(d)).csv_row() for n in ns for d in ds]


def run_identity(params: dict, seed: int) -> list[dict]:
    ns = parse_range(params.get("n", "4..8"))
    trials = int(params.get("trials", 20))
    return [{"n": n, "trials": trials, "max_abs_deviation": identity_deviation(n, trials, seed)}
            for n in ns]


def run_augment(params: dict, seed: int) -> list[dict]:
    n = int(params.get("n", 14))
    k = int(params.get("k", 5))
    count = int(params.get("instances", 5))
    eps = float(params.get("eps", 0.45))
    rows = []
    for i in range(count):
        code = random_linear_code(n, k, derive_seed(seed, i))
        rep = covering.eps_covering_radius_exact(code, eps)
        try:
            d, res = cohen_augment(code, rep.radius)
            rows.append({"instance": i, "n": n, "k": k, "radius": rep.radius,
                         "initial": res.trace[0] if res.trace else Fraction(0),
                         "steps": res.dim, "dim_limit": math.ceil(math.log2(n))})
        except AugmentError:
            rows.append({"instance": i, "n": n, "k": k, "radius": rep.radius,
                         "initial": rep.uncovered_fraction, "steps": None,
                         "dim_limit": math.ceil(math.log2(n))})
    return rows


EXPERIMENTS = {
    "gap": run_gap,
    "bounds": run_bounds_grid,
    "identity": run_identity,
    "augment": run_augment,
}


def _run_one(spec: dict, seed: int) -> tuple[str, str, float]:
    start = time.perf_counter()
    rows = EXPERIMENTS[spec["kind"]](spec, seed)
    return spec["name"], to_csv(rows), time.perf_counter() - start


def git_describe() -> str:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"], capture_output=True,
                             text=True, cwd=Path(__file__).parent, timeout=10)
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return out.stdout.strip() or "unknown"


def load_config(path) -> dict:
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def experiment_suite(config: dict, out_dir, jobs: int = 1) -> dict:
    """Run every experiment in ``config`` and write one CSV each plus manifest.json."""
    seed = int(config.get("seed", 0))
    specs = []
    for i, spec in enumerate(config.get("experiment", [])):
        spec = dict(spec)
        if spec.get("kind") not in EXPERIMENTS:
            raise UsageError(f"experiment {i}: unknown kind {spec.get('kind')!r}")
        spec.setdefault("name", f"{spec['kind']}_{i}")
        spec.setdefault("seed", derive_seed(seed, i))
        specs.append(spec)
    names = [s["name"] for s in specs]
    if len(set(names)) != len(names):
        raise UsageError("experiment names must be unique")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    start = time.perf_counter()
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, specs, [int(s["seed"]) for s in specs]))
    else:
        results = [_run_one(s, int(s["seed"])) for s in specs]
    entries = []
    for (name, text, wall), spec in sorted(zip(results, specs), key=lambda t: t[0][0]):
        path = out / f"{name}.csv"
        path.write_text(text)
        entries.append({"name": name, "kind": spec["kind"], "seed": int(spec["seed"]),
                        "file": path.name, "wall_seconds": round(wall, 3)})
    manifest = {
        "schema": SCHEMA,
        "git_describe": git_describe(),
        "seed": seed,
        "experiments": entries,
        "wall_seconds": round(time.perf_counter() - start, 3),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def cmd_experiment(args) -> int:
    if args.which == "gap":
        rows = run_gap({"family": args.family, "s": args.s, "m": args.m, "samples": args.samples,
                        "eps": args.eps, "method": args.method}, args.seed)
        text = to_csv(rows)
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / "gap.csv").write_text(text)
        sys.stdout.write(text)
        return EXIT_OK
    if not args.config:
        raise UsageError("experiment suite needs --config FILE")
    manifest = experiment_suite(load_config(args.config), args.out or "results", args.jobs)
    print(json.dumps(manifest, indent=2))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coverlab", description="Covering radius laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("bch", help="print a BCH or dual BCH code")
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--dual", action="store_true", help="print the dual BCH code")
    q.set_defaults(func=cmd_bch)

    q = sub.add_parser("radius", help="eps-covering radius of a code or distribution support")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--code")
    src.add_argument("--dist")
    q.add_argument("--eps", type=float, default=0.0)
    how = q.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true")
    how.add_argument("--mc", action="store_true")
    q.add_argument("--samples", type=int, default=10_000)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_radius)

    q = sub.add_parser("bounds", help="evaluate every bound at (n, d)")
    q.add_argument("--n", type=parse_range, nargs="+", required=True,
                   help="values or ranges, e.g. 63 255 or 63,255 or 7..9")
    q.add_argument("--d", type=parse_range, nargs="+", required=True)
    q.add_argument("--K", type=int)
    q.add_argument("--eps", type=float, default=0.0)
    q.add_argument("--eps-prime", type=float, default=0.1)
    q.add_argument("--radius", type=float)
    q.add_argument("--csv", action="store_true")
    q.set_defaults(func=cmd_bounds)

    q = sub.add_parser("coset-l1", help="average L1 distance of coset weight distributions")
    q.add_argument("--code", required=True)
    how = q.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true")
    how.add_argument("--samples", type=int)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--radius", type=float)
    q.set_defaults(func=cmd_coset_l1)

    q = sub.add_parser("identity", help="check the translate MSE identity on random inputs")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--trials", type=int, default=20)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_identity)

    q = sub.add_parser("kwise", help="k-wise independence test")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("--code")
    src.add_argument("--dist")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--bilateral", action="store_true")
    q.set_defaults(func=cmd_kwise)

    q = sub.add_parser("augment", help="extend a code until it covers at radius R")
    q.add_argument("--code", required=True)
    q.add_argument("--radius", type=float, required=True)
    q.set_defaults(func=cmd_augment)

    q = sub.add_parser("experiment", help="run the gap experiment or a configured suite")
    q.add_argument("which", choices=["gap", "suite"])
    q.add_argument("--family", default="dual-bch")
    q.add_argument("--s", type=int, default=3)
    q.add_argument("--m", default="5..6")
    q.add_argument("--eps", type=float)
    q.add_argument("--method", choices=["auto", "exact", "mc"], default="auto")
    q.add_argument("--samples", type=int, default=400)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--config")
    q.add_argument("--out")
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=cmd_experiment)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except bounds.HypothesisError as exc:
        print(dumps({"error": str(exc), "kind": "hypothesis"}))
        return EXIT_VACUOUS
    except (UsageError, ValueError, OSError, CubeTooLarge, CodeTooLarge, AugmentError) as exc:
        print(f"coverlab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
