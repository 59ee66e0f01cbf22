"""Seeded Monte Carlo studies: risk curves, rate fits, tail empirics, reports.

Every study is a pure function of its config; replicate seeds are derived
from the master seed by (n-index, replicate, role), so results are
bit-identical across runs and insensitive to how replicates would be
partitioned across workers. Output is CSV (UTF-8, LF, '.' decimal) plus an
optional deterministic SVG per curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .adaptive import AdaptConfig, select_r_hat
from .bounds import deviation_rate, log_deviation_prefactor
from .estimator import (
    SearchConfig,
    convex_rate_r,
    default_resolution,
    estimate_polytope,
)
from .geometry import Ball, ConvexBody, Polytope, body_from_json, nikodym_distance
from .model import NOISE_KINDS, ModelConfig, generate_sample
from .rng import derive_seed

TRANSFORMS = ("log_n", "log_n_over_ln_n")

__all__ = [
    "TRANSFORMS",
    "RPolicy",
    "StudyConfig",
    "RiskRow",
    "RateFit",
    "RiskCurve",
    "TailRow",
    "TailTable",
    "run_risk_study",
    "fit_rate",
    "tail_study",
    "emit_csv",
    "emit_svg_plot",
    "parse_truth",
    "study_config_from_json",
    "cli_dispatch",
    "main",
]


# ---------------------------------------------------------------------------
# configs and result types


@dataclass(frozen=True)
class RPolicy:
    """Vertex-budget policy: a fixed r, the rate-optimal schedule, or adaptive."""

    kind: str
    r: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("fixed", "convex_rate", "adaptive"):
            raise ValueError("policy kind must be fixed, convex_rate, or adaptive")
        if self.kind == "fixed":
            if self.r is None or int(self.r) < 3:
                raise ValueError("fixed policy needs r >= d+1")
            object.__setattr__(self, "r", int(self.r))
        elif self.r is not None:
            raise ValueError(f"policy {self.kind!r} takes no r")


@dataclass(frozen=True)
class StudyConfig:
    d: int
    sigma: float
    truth: ConvexBody
    n_grid: tuple[int, ...]
    replicates: int
    r_policy: RPolicy
    search: SearchConfig = field(default_factory=SearchConfig)
    seed: int = 0
    m: Optional[int] = None  # None: min(n, 64) per grid point
    noise_kind: str = "gaussian"
    distance_budget: int = 200_000

    def __post_init__(self):
        grid = tuple(int(n) for n in self.n_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("n_grid must be non-empty and strictly increasing")
        if any(n < 2 for n in grid):
            raise ValueError("every n must be >= 2")
        if int(self.replicates) < 1:
            raise ValueError("replicates must be >= 1")
        if self.truth.dim != int(self.d):
            raise ValueError("truth dimension must match d")
        if not (float(self.sigma) > 0.0):
            raise ValueError("sigma must be positive")
        if self.noise_kind not in NOISE_KINDS:
            raise ValueError(f"noise_kind must be one of {NOISE_KINDS}")
        if self.m is not None and int(self.m) < 1:
            raise ValueError("m must be >= 1")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "n_grid", grid)
        object.__setattr__(self, "replicates", int(self.replicates))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "m", None if self.m is None else int(self.m))
        object.__setattr__(self, "distance_budget", int(self.distance_budget))


@dataclass(frozen=True)
class RiskRow:
    n: int
    mean: float
    ci: float
    replicates: int


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    r2: float
    transform: str


@dataclass(frozen=True)
class RiskCurve:
    rows: tuple[RiskRow, ...]
    fit: Optional[RateFit] = None


@dataclass(frozen=True)
class TailRow:
    x: float
    survival: float
    se: float
    bound: float


@dataclass(frozen=True)
class TailTable:
    rows: tuple[TailRow, ...]
    n: int
    r: int
    d: int
    sigma: float
    replicates: int
    recenter: float  # subtracted from the loss before scaling by n


# ---------------------------------------------------------------------------
# studies


def _resolution_for(cfg: StudyConfig, n: int) -> int:
    return cfg.m if cfg.m is not None else default_resolution(n)


def _one_replicate(cfg: StudyConfig, i: int, n: int, j: int) -> float:
    """Distance to truth for replicate j at grid point i (sample size n)."""
    m = _resolution_for(cfg, n)
    model_seed = derive_seed(cfg.seed, i, j, 0)
    search_seed = derive_seed(cfg.seed, i, j, 1)
    dist_seed = derive_seed(cfg.seed, i, j, 2)
    sample = generate_sample(
        ModelConfig(cfg.d, n, cfg.truth, cfg.sigma, cfg.noise_kind, model_seed)
    )
    if cfg.r_policy.kind == "adaptive":
        acfg = AdaptConfig(
            n=n,
            d=cfg.d,
            sigma=cfg.sigma,
            m=m,
            search=cfg.search,
            seed=search_seed,
            distance_budget=cfg.distance_budget,
        )
        fit = select_r_hat(sample, acfg).chosen
    else:
        r = cfg.r_policy.r if cfg.r_policy.kind == "fixed" else convex_rate_r(n, cfg.d)
        fit = estimate_polytope(sample, r, m, replace(cfg.search, seed=search_seed))
    return nikodym_distance(
        fit.estimate, cfg.truth, budget=cfg.distance_budget, seed=dist_seed
    ).value


def run_risk_study(cfg: StudyConfig) -> RiskCurve:
    """Mean distance to truth per sample size, with normal 95% half-widths."""
    rows = []
    for i, n in enumerate(cfg.n_grid):
        dists = np.empty(cfg.replicates)
        for j in range(cfg.replicates):
            try:
                dists[j] = _one_replicate(cfg, i, n, j)
            except Exception as exc:
                raise RuntimeError(f"replicate failed at n={n}, replicate={j}: {exc}") from exc
        mean = float(dists.mean())
        ci = 0.0
        if cfg.replicates > 1:
            ci = 1.959964 * float(dists.std(ddof=1)) / math.sqrt(cfg.replicates)
        rows.append(RiskRow(n, mean, ci, cfg.replicates))
    return RiskCurve(tuple(rows))


def fit_rate(curve: RiskCurve, transform: str = "log_n_over_ln_n") -> RateFit:
    """OLS of log(mean) on the chosen log-size transform over positive rows."""
    if transform not in TRANSFORMS:
        raise ValueError(f"transform must be one of {TRANSFORMS}")
    usable = [row for row in curve.rows if row.mean > 0.0]
    if len(usable) < 3:
        raise ValueError(f"need >= 3 rows with positive mean, have {len(usable)}")
    ns = np.array([row.n for row in usable], dtype=np.float64)
    t = np.log(ns) if transform == "log_n" else np.log(ns / np.log(ns))
    ly = np.log(np.array([row.mean for row in usable]))
    slope, intercept = np.polyfit(t, ly, 1)
    resid = ly - (slope * t + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(np.sum(resid**2)) / ss_tot
    return RateFit(float(slope), float(intercept), r2, transform)


def tail_study(cfg: StudyConfig, r: int, x_grid: Sequence[float]) -> TailTable:
    """Empirical survival of the recentered, n-scaled loss at the largest n.

    Per replicate the loss is |estimate xor truth|; the recentering constant
    is 2 d r ln(n) / (rate * n) and survival is compared against the
    closed-form exponential bound at each x.
    """
    if cfg.replicates < 200:
        raise ValueError("tail studies need replicates >= 200")
    r = int(r)
    if r < cfg.d + 1:
        raise ValueError("r must be >= d+1")
    xs = [float(x) for x in x_grid]
    if not xs:
        raise ValueError("x_grid must be non-empty")
    i = len(cfg.n_grid) - 1
    n = cfg.n_grid[i]
    fixed = StudyConfig(
        d=cfg.d,
        sigma=cfg.sigma,
        truth=cfg.truth,
        n_grid=cfg.n_grid,
        replicates=cfg.replicates,
        r_policy=RPolicy("fixed", r),
        search=cfg.search,
        seed=cfg.seed,
        m=cfg.m,
        noise_kind=cfg.noise_kind,
        distance_budget=cfg.distance_budget,
    )
    losses = np.empty(cfg.replicates)
    for j in range(cfg.replicates):
        try:
            losses[j] = _one_replicate(fixed, i, n, j)
        except Exception as exc:
            raise RuntimeError(f"replicate failed at n={n}, replicate={j}: {exc}") from exc
    rate = deviation_rate(cfg.sigma)
    recenter = 2.0 * cfg.d * r * math.log(n) / (rate * n)
    scaled = n * (losses - recenter)
    log_pref = log_deviation_prefactor(cfg.sigma, cfg.d)
    rows = []
    for x in xs:
        surv = float(np.mean(scaled >= x))
        se = math.sqrt(surv * (1.0 - surv) / cfg.replicates)
        ex = log_pref - rate * x
        bound = math.inf if ex > 709.0 else math.exp(ex)
        rows.append(TailRow(x, surv, se, bound))
    return TailTable(tuple(rows), n, r, cfg.d, cfg.sigma, cfg.replicates, recenter)


# ---------------------------------------------------------------------------
# emission


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_payload(obj) -> tuple[list[str], list[list]]:
    if isinstance(obj, RiskCurve):
        return ["n", "mean", "ci", "replicates"], [
            [row.n, row.mean, row.ci, row.replicates] for row in obj.rows
        ]
    if isinstance(obj, TailTable):
        return ["x", "survival", "se", "bound"], [
            [row.x, row.survival, row.se, row.bound] for row in obj.rows
        ]
    if isinstance(obj, Sequence) and obj and isinstance(obj[0], dict):
        cols = list(obj[0].keys())
        return cols, [[row[c] for c in cols] for row in obj]
    raise ValueError(f"no CSV layout for {type(obj).__name__} (or empty input)")


def emit_csv(obj, path) -> None:
    """Write a table as CSV; refuses empty input before creating the file."""
    cols, data = _csv_payload(obj)
    if not data:
        raise ValueError("refusing to write an empty table")
    lines = [",".join(cols)]
    lines.extend(",".join(_fmt(v) for v in row) for row in data)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _svg_num(v: float) -> str:
    return format(v, ".2f")


def emit_svg_plot(curve: RiskCurve, path) -> None:
    """Log-log scatter of the risk curve with the fitted line, byte-stable."""
    pts = [(row.n, row.mean) for row in curve.rows if row.mean > 0.0]
    if not pts:
        raise ValueError("nothing to plot: no rows with positive mean")
    w, h = 640.0, 480.0
    ml, mr, mt, mb = 70.0, 20.0, 20.0, 50.0
    lx = [math.log10(p[0]) for p in pts]
    ly = [math.log10(p[1]) for p in pts]
    xlo, xhi = min(lx), max(lx)
    ylo, yhi = min(ly), max(ly)
    xpad = 0.05 * (xhi - xlo or 1.0)
    ypad = 0.05 * (yhi - ylo or 1.0)
    xlo, xhi = xlo - xpad, xhi + xpad
    ylo, yhi = ylo - ypad, yhi + ypad

    def sx(v: float) -> float:
        return ml + (v - xlo) / (xhi - xlo) * (w - ml - mr)

    def sy(v: float) -> float:
        return h - mb - (v - ylo) / (yhi - ylo) * (h - mt - mb)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {int(w)} {int(h)}">',
        f'<rect width="{int(w)}" height="{int(h)}" fill="white"/>',
        f'<line x1="{_svg_num(ml)}" y1="{_svg_num(h - mb)}" x2="{_svg_num(w - mr)}" '
        f'y2="{_svg_num(h - mb)}" stroke="black"/>',
        f'<line x1="{_svg_num(ml)}" y1="{_svg_num(mt)}" x2="{_svg_num(ml)}" '
        f'y2="{_svg_num(h - mb)}" stroke="black"/>',
    ]
    for n, mean in pts:
        gx = sx(math.log10(n))
        parts.append(
            f'<text x="{_svg_num(gx)}" y="{_svg_num(h - mb + 18.0)}" font-size="11" '
            f'text-anchor="middle">{n}</text>'
        )
        parts.append(
            f'<circle cx="{_svg_num(gx)}" cy="{_svg_num(sy(math.log10(mean)))}" '
            f'r="4" fill="steelblue"/>'
        )
    for v in (ylo + ypad, (ylo + yhi) / 2.0, yhi - ypad):
        parts.append(
            f'<text x="{_svg_num(ml - 8.0)}" y="{_svg_num(sy(v) + 4.0)}" font-size="11" '
            f'text-anchor="end">{format(10.0 ** v, ".3g")}</text>'
        )
    parts.append(
        f'<text x="{_svg_num((ml + w - mr) / 2.0)}" y="{_svg_num(h - 12.0)}" font-size="12" '
        f'text-anchor="middle">n (log scale)</text>'
    )
    if curve.fit is not None:
        f = curve.fit
        ns = [pts[0][0], pts[-1][0]]
        line = []
        for n in ns:
            t = math.log(n) if f.transform == "log_n" else math.log(n / math.log(n))
            pred = (f.slope * t + f.intercept) / math.log(10.0)
            line.append((sx(math.log10(n)), sy(pred)))
        parts.append(
            f'<line x1="{_svg_num(line[0][0])}" y1="{_svg_num(line[0][1])}" '
            f'x2="{_svg_num(line[1][0])}" y2="{_svg_num(line[1][1])}" '
            f'stroke="firebrick" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{_svg_num(w - mr - 6.0)}" y="{_svg_num(mt + 16.0)}" font-size="12" '
            f'text-anchor="end">slope {format(f.slope, ".4g")}, '
            f'R&#178; {format(f.r2, ".4g")}</text>'
        )
    parts.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# config parsing shared by the CLI


def parse_truth(spec, d: int) -> ConvexBody:
    """Truth from shorthand: 'ball', 'triangle' (d=2), or a body JSON object."""
    if isinstance(spec, str):
        if spec == "ball":
            return Ball(np.full(d, 0.5), 0.25)
        if spec == "triangle":
            if d != 2:
                raise ValueError("the triangle shorthand needs d=2")
            return Polytope(np.array([[0.2, 0.2], [0.8, 0.2], [0.5, 0.7]]))
        import json

        try:
            obj = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ValueError(f"truth must be 'ball', 'triangle', or body JSON: {exc}") from exc
        return body_from_json(obj)
    return body_from_json(spec)


def _search_from_json(obj: Optional[dict]) -> SearchConfig:
    if obj is None:
        return SearchConfig()
    return SearchConfig(
        strategy=obj.get("strategy", "anneal"),
        steps=obj.get("steps"),
        t0=obj.get("t0", 1.0),
        gamma=obj.get("gamma"),
        restarts=obj.get("restarts", 8),
        seed=obj.get("seed", 0),
    )


def _policy_from_json(obj) -> RPolicy:
    if isinstance(obj, str):
        return RPolicy(obj)
    return RPolicy(obj["kind"], obj.get("r"))


def study_config_from_json(obj: dict) -> StudyConfig:
    d = int(obj["d"])
    return StudyConfig(
        d=d,
        sigma=float(obj["sigma"]),
        truth=parse_truth(obj["truth"], d),
        n_grid=tuple(int(n) for n in obj["n_grid"]),
        replicates=int(obj["replicates"]),
        r_policy=_policy_from_json(obj["r_policy"]),
        search=_search_from_json(obj.get("search")),
        seed=int(obj.get("seed", 0)),
        m=obj.get("m"),
        noise_kind=obj.get("noise_kind", "gaussian"),
        distance_budget=int(obj.get("distance_budget", 200_000)),
    )


# ---------------------------------------------------------------------------
# CLI


def _build_parser():
    import argparse

    p = argparse.ArgumentParser(
        prog="convexfit",
        description="Fit and study grid-polytope set estimators on indicator-regression data.",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a dataset CSV from the sampling model")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--sigma", type=float, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--noise", choices=NOISE_KINDS, default="gaussian")
    g.add_argument("--truth", default="ball", help="'ball', 'triangle', or body JSON")
    g.add_argument("--out", default="dataset.csv")

    e = sub.add_parser("estimate", help="fit one polytope to a dataset CSV")
    e.add_argument("--data", required=True)
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--m", type=int, default=None, help="grid resolution (default min(n, 64))")
    e.add_argument("--strategy", choices=("anneal", "exact"), default="anneal")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--steps", type=int, default=None)
    e.add_argument("--restarts", type=int, default=8)
    e.add_argument("--out", default="fit.json")

    a = sub.add_parser("adapt", help="data-driven vertex-budget selection on a dataset CSV")
    a.add_argument("--data", required=True)
    a.add_argument("--r-max", type=int, default=None)
    a.add_argument("--m", type=int, default=None)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--restarts", type=int, default=8)
    a.add_argument("--steps", type=int, default=None)
    a.add_argument("--out", default="adapt.json")

    rs = sub.add_parser("risk-study", help="risk curve over an n grid from a JSON config")
    rs.add_argument("--config", required=True)
    rs.add_argument("--out", required=True, help="CSV output path")
    rs.add_argument("--svg", default=None, help="optional SVG plot path")
    rs.add_argument(
        "--transform", choices=TRANSFORMS, default="log_n_over_ln_n",
        help="rate-fit abscissa",
    )

    ts = sub.add_parser("tail-study", help="tail survival table from a JSON config")
    ts.add_argument("--config", required=True, help="study JSON plus keys r and x_grid")
    ts.add_argument("--out", required=True, help="CSV output path")

    vb = sub.add_parser("verify-bounds", help="re-derive every closed-form claim")
    vb.add_argument("--out", default=None, help="JSON report path (default stdout)")
    vb.add_argument("--seed", type=int, default=0)
    vb.add_argument("--budget", type=int, default=200_000)

    ap = sub.add_parser("approx-study", help="disk-approximation error sweep")
    ap.add_argument("--rs", default="8,16,32,64,128", help="comma-separated vertex counts")
    ap.add_argument("--out", default=None, help="optional CSV output path")
    return p


def _cmd_gen(args) -> int:
    from .model import write_sample

    truth = parse_truth(args.truth, args.d)
    cfg = ModelConfig(args.d, args.n, truth, args.sigma, args.noise, args.seed)
    write_sample(generate_sample(cfg), args.out)
    print(f"wrote {args.out} ({args.n} rows, d={args.d})")
    return 0


def _cmd_estimate(args) -> int:
    import json

    from .estimator import fit_to_json
    from .model import read_sample

    sample = read_sample(args.data)
    m = args.m if args.m is not None else default_resolution(sample.n)
    cfg = SearchConfig(
        strategy=args.strategy, steps=args.steps, restarts=args.restarts, seed=args.seed
    )
    fit = estimate_polytope(sample, args.r, m, cfg)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(fit_to_json(fit), fh, indent=2)
        fh.write("\n")
    print(
        f"wrote {args.out} (criterion {fit.criterion_value:g}, "
        f"{fit.evaluations} evaluations, {fit.strategy})"
    )
    return 0


def _cmd_adapt(args) -> int:
    import json

    from .adaptive import adapt_to_json
    from .model import read_sample

    sample = read_sample(args.data)
    cfg = AdaptConfig(
        n=sample.n,
        d=sample.config.d,
        sigma=sample.config.sigma,
        r_max=args.r_max,
        m=args.m,
        search=SearchConfig(steps=args.steps, restarts=args.restarts),
        seed=args.seed,
    )
    res = select_r_hat(sample, cfg)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(adapt_to_json(res), fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out} (r_hat {res.r_hat} of budgets {res.r_grid})")
    return 0


def _cmd_risk_study(args) -> int:
    import json

    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = study_config_from_json(json.load(fh))
    curve = run_risk_study(cfg)
    fit = fit_rate(curve, args.transform)
    curve = RiskCurve(curve.rows, fit)
    emit_csv(curve, args.out)
    if args.svg:
        emit_svg_plot(curve, args.svg)
    print(
        json.dumps(
            {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r2": fit.r2,
                "transform": fit.transform,
                "out": str(args.out),
            }
        )
    )
    return 0


def _cmd_tail_study(args) -> int:
    import json

    with open(args.config, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    r = int(obj.pop("r"))
    x_grid = obj.pop("x_grid")
    cfg = study_config_from_json(obj)
    table = tail_study(cfg, r, x_grid)
    emit_csv(table, args.out)
    worst = max((row.survival - row.bound for row in table.rows), default=-math.inf)
    print(
        json.dumps(
            {
                "n": table.n,
                "r": table.r,
                "recenter": table.recenter,
                "max_survival_minus_bound": worst,
                "out": str(args.out),
            }
        )
    )
    return 0


def _cmd_verify_bounds(args) -> int:
    import json

    from .bounds import verify_all

    rows = verify_all(seed=args.seed, mc_budget=args.budget)
    report = json.dumps(rows, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report + "\n")
    else:
        print(report)
    failures = [row for row in rows if not row["pass"]]
    print(f"{len(rows) - len(failures)}/{len(rows)} checks passed")
    if failures:
        for row in failures:
            print(f"FAIL {row['check']} inputs={row['inputs']}")
        return 1
    return 0


def _cmd_approx_study(args) -> int:
    import json

    from .bounds import polytopal_approx_disk

    rs = [int(tok) for tok in args.rs.split(",") if tok.strip()]
    if len(rs) < 2:
        raise ValueError("need at least two vertex counts")
    rows = [{"r": r, "error": polytopal_approx_disk(r)[1]} for r in rs]
    if args.out:
        emit_csv(rows, args.out)
    slope = float(
        np.polyfit(np.log([row["r"] for row in rows]), np.log([row["error"] for row in rows]), 1)[0]
    )
    print(json.dumps({"slope": slope, "rows": rows}))
    return 0


_HANDLERS = {
    "gen": _cmd_gen,
    "estimate": _cmd_estimate,
    "adapt": _cmd_adapt,
    "risk-study": _cmd_risk_study,
    "tail-study": _cmd_tail_study,
    "verify-bounds": _cmd_verify_bounds,
    "approx-study": _cmd_approx_study,
}


def cli_dispatch(argv: Sequence[str]) -> int:
    """Run one CLI invocation: 0 success, 1 check/runtime failure, 2 usage."""
    import sys

    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return 0 if code is None else int(code)
    try:
        return _HANDLERS[args.cmd](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - boundary: report and set the exit code
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    import sys

    sys.exit(cli_dispatch(sys.argv[1:]))
