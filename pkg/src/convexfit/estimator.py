"""Least-squares fitting of grid polytopes to indicator-regression samples.

The criterion is sum over covered design points of (1 - 2*Y_i); minimizing
it over polytopes with at most r vertices on the 1/m grid is the estimator.
Two search tiers: exhaustive enumeration on instances small enough to audit,
and seeded simulated annealing over vertex multisets at scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .geometry import TOL, GridPolytope, Polytope, contains_many
from .model import Sample
from .rng import substream

EXACT_CANDIDATE_CAP = 10_000_000

__all__ = [
    "ClassSpec",
    "SearchConfig",
    "FitResult",
    "criterion",
    "exact_minimize",
    "anneal_minimize",
    "estimate_polytope",
    "convex_rate_r",
    "default_resolution",
    "fit_to_json",
    "fit_from_json",
]


@dataclass(frozen=True)
class ClassSpec:
    """Polytopes with at most r vertices on the grid of spacing 1/m in [0,1]^d."""

    d: int
    r: int
    m: int

    def __post_init__(self):
        if int(self.d) < 2:
            raise ValueError("dimension must be >= 2")
        if int(self.r) < int(self.d) + 1:
            raise ValueError("vertex budget r must be >= d+1")
        if int(self.m) < 1:
            raise ValueError("grid resolution m must be >= 1")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "r", int(self.r))
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class SearchConfig:
    """Search strategy and annealing schedule; None fields use scaled defaults.

    Defaults resolve to steps = 200*r*m, t0 = 1.0, gamma such that the
    temperature ends at 1e-3, restarts = 8.
    """

    strategy: str = "anneal"
    steps: Optional[int] = None
    t0: float = 1.0
    gamma: Optional[float] = None
    restarts: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("exact", "anneal"):
            raise ValueError("strategy must be 'exact' or 'anneal'")
        if self.steps is not None and int(self.steps) < 1:
            raise ValueError("steps must be >= 1")
        if not (float(self.t0) > 0.0):
            raise ValueError("initial temperature must be positive")
        if self.gamma is not None and not (0.0 < float(self.gamma) < 1.0):
            raise ValueError("cooling factor must lie in (0, 1)")
        if int(self.restarts) < 1:
            raise ValueError("restarts must be >= 1")
        object.__setattr__(self, "restarts", int(self.restarts))
        object.__setattr__(self, "seed", int(self.seed))

    def resolved_steps(self, spec: ClassSpec) -> int:
        return int(self.steps) if self.steps is not None else 200 * spec.r * spec.m

    def resolved_gamma(self, steps: int) -> float:
        return float(self.gamma) if self.gamma is not None else 1e-3 ** (1.0 / steps)


@dataclass(frozen=True)
class FitResult:
    estimate: GridPolytope
    criterion_value: float
    evaluations: int
    strategy: str
    seed: Optional[int] = None


def criterion(p: Polytope, s: Sample) -> float:
    """Exact sum of (1 - 2*Y_i) over design points covered by p."""
    if p.dim != s.x.shape[1]:
        raise ValueError("polytope dimension must match the sample")
    if s.n == 0:
        return 0.0
    w = 1.0 - 2.0 * s.y
    if p.dim == 2:
        return float(
            _kernels.eval_polygon(
                p.vertices[:, 0].copy(),
                p.vertices[:, 1].copy(),
                np.ascontiguousarray(s.x[:, 0]),
                np.ascontiguousarray(s.x[:, 1]),
                w,
                TOL,
            )
        )
    total = 0.0
    for wi in w[contains_many(p, s.x)]:
        total += float(wi)
    return total


def _grid_coords(d: int, m: int) -> np.ndarray:
    """All (m+1)^d grid points, rows in lexicographic order."""
    ticks = np.arange(m + 1, dtype=np.float64) / m
    idx = np.stack(
        np.meshgrid(*([np.arange(m + 1)] * d), indexing="ij"), axis=-1
    ).reshape(-1, d)
    return ticks[idx]


def exact_minimize(s: Sample, spec: ClassSpec, cap: int = EXACT_CANDIDATE_CAP) -> FitResult:
    """Global minimum over all grid vertex subsets of size 1..r.

    Ties go to the lexicographically smallest sorted vertex list. Refuses
    instances whose candidate count exceeds the cap.
    """
    if spec.d != s.x.shape[1]:
        raise ValueError("class dimension must match the sample")
    npts = (spec.m + 1) ** spec.d
    total = sum(math.comb(npts, k) for k in range(1, spec.r + 1))
    if total > cap:
        raise ValueError(
            f"exact enumeration needs {total} candidates (cap {cap}); "
            "use the anneal strategy"
        )
    pts = _grid_coords(spec.d, spec.m)
    w = 1.0 - 2.0 * s.y
    use_kernel = spec.d == 2 and s.n > 0
    if use_kernel:
        px = np.ascontiguousarray(s.x[:, 0])
        py = np.ascontiguousarray(s.x[:, 1])
    best_val = math.inf
    best_key: Optional[tuple] = None
    best_coords: Optional[np.ndarray] = None
    evals = 0
    for k in range(1, spec.r + 1):
        for combo in itertools.combinations(range(npts), k):
            coords = pts[list(combo)]
            if s.n == 0:
                val = 0.0
            elif use_kernel:
                val = float(
                    _kernels.eval_polygon(
                        coords[:, 0].copy(), coords[:, 1].copy(), px, py, w, TOL
                    )
                )
            else:
                total_w = 0.0
                for wi in w[contains_many(Polytope(coords), s.x)]:
                    total_w += float(wi)
                val = total_w
            evals += 1
            if val < best_val:
                best_val = val
                best_key = tuple(map(tuple, coords))
                best_coords = coords
            elif val == best_val:
                key = tuple(map(tuple, coords))
                if key < best_key:
                    best_key = key
                    best_coords = coords
    estimate = GridPolytope(best_coords, resolution=spec.m)
    return FitResult(estimate, best_val, evals, "exact", None)


def _anneal_2d(s: Sample, spec: ClassSpec, cfg: SearchConfig) -> FitResult:
    steps = cfg.resolved_steps(spec)
    gamma = cfg.resolved_gamma(steps)
    m, r = spec.m, spec.r
    px = np.ascontiguousarray(s.x[:, 0])
    py = np.ascontiguousarray(s.x[:, 1])
    w = 1.0 - 2.0 * s.y
    radius = max(1, m // 8)
    best_val = math.inf
    best_ix = best_iy = None
    for rep in range(cfg.restarts):
        rng = substream(cfg.seed, rep)
        ix0 = rng.integers(0, m + 1, r)
        iy0 = rng.integers(0, m + 1, r)
        vsel = rng.integers(0, r, steps)
        jump = rng.random(steps) < 0.1
        gxs = rng.integers(0, m + 1, steps)
        gys = rng.integers(0, m + 1, steps)
        dxs = rng.integers(-radius, radius + 1, steps)
        dys = rng.integers(-radius, radius + 1, steps)
        acc = rng.random(steps)
        val, bix, biy, _ = _kernels.anneal_run(
            px, py, w, m, cfg.t0, gamma, TOL,
            ix0, iy0, vsel, jump, gxs, gys, dxs, dys, acc,
        )
        if val < best_val:
            best_val = val
            best_ix, best_iy = bix, biy
    coords = np.column_stack([best_ix, best_iy]).astype(np.float64) / m
    estimate = GridPolytope(coords, resolution=m)
    value = criterion(estimate, s)
    return FitResult(estimate, value, cfg.restarts * (steps + 1), "anneal", cfg.seed)


def _anneal_nd(s: Sample, spec: ClassSpec, cfg: SearchConfig) -> FitResult:
    steps = cfg.resolved_steps(spec)
    gamma = cfg.resolved_gamma(steps)
    m, r, d = spec.m, spec.r, spec.d
    w = 1.0 - 2.0 * s.y
    radius = max(1, m // 8)

    def value_of(state: np.ndarray) -> float:
        total = 0.0
        p = Polytope(state.astype(np.float64) / m)
        for wi in w[contains_many(p, s.x)]:
            total += float(wi)
        return total

    best_val = math.inf
    best_state = None
    for rep in range(cfg.restarts):
        rng = substream(cfg.seed, rep)
        state = rng.integers(0, m + 1, (r, d))
        vsel = rng.integers(0, r, steps)
        jump = rng.random(steps) < 0.1
        gl = rng.integers(0, m + 1, (steps, d))
        dl = rng.integers(-radius, radius + 1, (steps, d))
        acc = rng.random(steps)
        cur = value_of(state)
        rep_best = cur
        rep_state = state.copy()
        temp = cfg.t0
        for t in range(steps):
            v = int(vsel[t])
            old = state[v].copy()
            if jump[t]:
                state[v] = gl[t]
            else:
                state[v] = np.clip(old + dl[t], 0, m)
            val = value_of(state)
            delta = val - cur
            if delta <= 0.0 or acc[t] < math.exp(-delta / temp):
                cur = val
                if val < rep_best:
                    rep_best = val
                    rep_state = state.copy()
            else:
                state[v] = old
            temp *= gamma
        if rep_best < best_val:
            best_val = rep_best
            best_state = rep_state
    estimate = GridPolytope(best_state.astype(np.float64) / m, resolution=m)
    value = criterion(estimate, s)
    return FitResult(estimate, value, cfg.restarts * (steps + 1), "anneal", cfg.seed)


def anneal_minimize(s: Sample, spec: ClassSpec, cfg: SearchConfig) -> FitResult:
    """Seeded Metropolis annealing over multisets of r grid vertices.

    Proposals move one vertex within sup-norm radius max(1, m//8) grid cells
    (clamped), or to a uniform grid point with probability 0.1; cooling is
    geometric. The best state ever visited across restarts is returned.
    """
    if spec.d != s.x.shape[1]:
        raise ValueError("class dimension must match the sample")
    if spec.d == 2:
        return _anneal_2d(s, spec, cfg)
    return _anneal_nd(s, spec, cfg)


def estimate_polytope(s: Sample, r: int, m: int, cfg: SearchConfig) -> FitResult:
    """Fit with vertex budget r on the 1/m grid using the configured search."""
    d = s.x.shape[1]
    spec = ClassSpec(d, r, m)
    if cfg.strategy == "exact":
        return exact_minimize(s, spec)
    return anneal_minimize(s, spec, cfg)


def convex_rate_r(n: int, d: int) -> int:
    """Rate-optimal vertex budget floor((n/ln n)^((d-1)/(d+1))), at least d+1."""
    n = int(n)
    d = int(d)
    if n < 2:
        raise ValueError("n must be >= 2")
    if d < 2:
        raise ValueError("dimension must be >= 2")
    raw = math.floor((n / math.log(n)) ** ((d - 1) / (d + 1)))
    return max(d + 1, raw)


def default_resolution(n: int) -> int:
    """Default grid resolution min(n, 64): fine enough, still enumerable."""
    return min(int(n), 64)


def fit_to_json(fr: FitResult) -> dict:
    return {
        "vertices": fr.estimate.vertices.tolist(),
        "resolution": fr.estimate.resolution,
        "criterion": fr.criterion_value,
        "evaluations": fr.evaluations,
        "strategy": fr.strategy,
        "seed": fr.seed,
    }


def fit_from_json(obj: dict) -> FitResult:
    estimate = GridPolytope(
        np.asarray(obj["vertices"], dtype=np.float64),
        resolution=int(obj["resolution"]),
    )
    seed = obj.get("seed")
    return FitResult(
        estimate,
        float(obj["criterion"]),
        int(obj["evaluations"]),
        str(obj["strategy"]),
        None if seed is None else int(seed),
    )
