"""Data-driven vertex-budget selection by pairwise estimate comparison.

Fits one polytope per budget r in d+1..r_max on a shared sample, then picks
the smallest r whose estimate stays within a deviation-scaled threshold of
every higher-budget estimate. The largest budget passes vacuously, so the
selection always exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .bounds import deviation_rate
from .estimator import (
    FitResult,
    SearchConfig,
    convex_rate_r,
    default_resolution,
    estimate_polytope,
    fit_from_json,
    fit_to_json,
)
from .geometry import nikodym_distance
from .model import Sample
from .rng import derive_seed

__all__ = [
    "AdaptConfig",
    "AdaptResult",
    "adapt_threshold",
    "select_r_hat",
    "replay_selection",
    "phi_rate",
    "adapt_to_json",
    "adapt_from_json",
]


@dataclass(frozen=True)
class AdaptConfig:
    """Selection inputs: sample shape, noise scale, budget range, search plumbing.

    r_max defaults to the rate-optimal cap max(d+1, floor((n/ln n)^((d-1)/(d+1))))
    and may not exceed it; m defaults to min(n, 64).
    """

    n: int
    d: int
    sigma: float
    r_max: Optional[int] = None
    m: Optional[int] = None
    search: SearchConfig = field(default_factory=SearchConfig)
    seed: int = 0
    distance_budget: int = 200_000

    def __post_init__(self):
        n, d = int(self.n), int(self.d)
        if n < 2:
            raise ValueError("n must be >= 2")
        if d < 2:
            raise ValueError("dimension must be >= 2")
        if not (float(self.sigma) > 0.0):
            raise ValueError("sigma must be positive")
        cap = convex_rate_r(n, d)
        r_max = cap if self.r_max is None else int(self.r_max)
        if r_max < d + 1:
            raise ValueError("r_max must be >= d+1")
        if r_max > cap:
            raise ValueError(f"r_max must not exceed the rate-optimal cap {cap}")
        m = default_resolution(n) if self.m is None else int(self.m)
        if m < 1:
            raise ValueError("m must be >= 1")
        if int(self.distance_budget) < 1:
            raise ValueError("distance_budget must be >= 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "r_max", r_max)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "distance_budget", int(self.distance_budget))


@dataclass(frozen=True)
class AdaptResult:
    """Chosen budget plus everything needed to replay the selection."""

    r_hat: int
    estimates: dict[int, FitResult]
    distances: dict[tuple[int, int], float]  # keys (r, r') with r < r'
    thresholds: dict[int, float]

    @property
    def r_grid(self) -> list[int]:
        return sorted(self.estimates)

    @property
    def chosen(self) -> FitResult:
        return self.estimates[self.r_hat]


def adapt_threshold(r_prime: int, n: int, d: int, sigma: float) -> float:
    """Comparison threshold 6*d*r'*ln(n) / (rate * n) for budget r'."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    return 6.0 * d * r_prime * math.log(n) / (deviation_rate(sigma) * n)


def _event_holds(
    r: int,
    grid: list[int],
    distances: dict[tuple[int, int], float],
    thresholds: dict[int, float],
    scale: float,
) -> bool:
    return all(
        distances[(r, rp)] <= scale * thresholds[rp] for rp in grid if rp > r
    )


def select_r_hat(s: Sample, cfg: AdaptConfig) -> AdaptResult:
    """Smallest budget consistent with all higher-budget fits on one sample."""
    d = s.x.shape[1]
    if d != cfg.d or s.n != cfg.n:
        raise ValueError("sample shape must match the config")
    grid = list(range(d + 1, cfg.r_max + 1))
    estimates: dict[int, FitResult] = {}
    for r in grid:
        search = SearchConfig(
            strategy=cfg.search.strategy,
            steps=cfg.search.steps,
            t0=cfg.search.t0,
            gamma=cfg.search.gamma,
            restarts=cfg.search.restarts,
            seed=derive_seed(cfg.seed, r),
        )
        estimates[r] = estimate_polytope(s, r, cfg.m, search)
    distances: dict[tuple[int, int], float] = {}
    for i, r in enumerate(grid):
        for rp in grid[i + 1 :]:
            est = nikodym_distance(
                estimates[r].estimate,
                estimates[rp].estimate,
                budget=cfg.distance_budget,
                seed=derive_seed(cfg.seed, r, rp),
            )
            distances[(r, rp)] = est.value
    thresholds = {rp: adapt_threshold(rp, cfg.n, d, cfg.sigma) for rp in grid}
    r_hat = grid[-1]
    for r in grid:
        if _event_holds(r, grid, distances, thresholds, 1.0):
            r_hat = r
            break
    return AdaptResult(r_hat, estimates, distances, thresholds)


def replay_selection(result: AdaptResult, scale: float = 1.0) -> int:
    """Re-run the selection scan on the recorded table, thresholds scaled."""
    if not (scale > 0.0):
        raise ValueError("scale must be positive")
    grid = result.r_grid
    for r in grid:
        if _event_holds(r, grid, result.distances, result.thresholds, scale):
            return r
    return grid[-1]


def phi_rate(n: int, d: int, r) -> float:
    """Risk rate min(r*ln(n)/n, (ln(n)/n)^(2/(d+1))); r = inf takes the 2nd branch."""
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2")
    body_rate = (math.log(n) / n) ** (2.0 / (d + 1))
    if r == math.inf:
        return body_rate
    return min(r * math.log(n) / n, body_rate)


def adapt_to_json(res: AdaptResult) -> dict:
    return {
        "r_hat": res.r_hat,
        "estimates": {str(r): fit_to_json(fr) for r, fr in res.estimates.items()},
        "distances": [
            {"r": r, "r_prime": rp, "value": v}
            for (r, rp), v in sorted(res.distances.items())
        ],
        "thresholds": {str(r): t for r, t in res.thresholds.items()},
    }


def adapt_from_json(obj: dict) -> AdaptResult:
    return AdaptResult(
        r_hat=int(obj["r_hat"]),
        estimates={int(r): fit_from_json(fr) for r, fr in obj["estimates"].items()},
        distances={
            (int(row["r"]), int(row["r_prime"])): float(row["value"])
            for row in obj["distances"]
        },
        thresholds={int(r): float(t) for r, t in obj["thresholds"].items()},
    )
