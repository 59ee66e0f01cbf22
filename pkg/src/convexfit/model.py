"""Regression samples: uniform design, set-indicator signal, subgaussian noise.

Each observation is Y = I(X in truth) + noise, with X uniform on the unit
cube. Noise is either centered gaussian or a scaled coin flip (+/- sigma),
both subgaussian with parameter sigma. Samples round-trip through CSV with
the generating configuration embedded as a JSON header comment.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .geometry import ConvexBody, body_from_json, body_to_json, contains_many
from .rng import ROLE_DESIGN, ROLE_NOISE, substream

NOISE_KINDS = ("gaussian", "scaled_rademacher")

__all__ = [
    "NOISE_KINDS",
    "ModelConfig",
    "Sample",
    "generate_sample",
    "write_sample",
    "read_sample",
    "config_to_json",
    "config_from_json",
]


@dataclass(frozen=True)
class ModelConfig:
    d: int
    n: int
    truth: ConvexBody
    sigma: float
    noise_kind: str = "gaussian"
    seed: int = 0

    def __post_init__(self):
        if int(self.d) < 2:
            raise ValueError("dimension must be >= 2")
        if int(self.n) < 0:
            raise ValueError("sample size must be nonnegative")
        if self.truth.dim != int(self.d):
            raise ValueError("truth dimension must match d")
        if not (float(self.sigma) > 0.0) or not math.isfinite(float(self.sigma)):
            raise ValueError("sigma must be positive and finite")
        if self.noise_kind not in NOISE_KINDS:
            raise ValueError(f"noise_kind must be one of {NOISE_KINDS}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True, eq=False)
class Sample:
    """Design matrix x (n, d) and responses y (n,) plus the generating config."""

    config: ModelConfig
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.ascontiguousarray(np.asarray(self.x, dtype=np.float64))
        y = np.ascontiguousarray(np.asarray(self.y, dtype=np.float64))
        if x.ndim != 2 or x.shape[1] != self.config.d:
            raise ValueError("x must be an (n, d) array matching the config")
        if y.shape != (x.shape[0],):
            raise ValueError("y must be a length-n vector")
        if x.shape[0] and (x.min() < 0.0 or x.max() > 1.0):
            raise ValueError("design points must lie in [0,1]^d")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("sample values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def rows(self) -> list[tuple[np.ndarray, float]]:
        return [(self.x[i], float(self.y[i])) for i in range(self.n)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Sample)
            and self.config == other.config
            and self.x.shape == other.x.shape
            and bool(np.array_equal(self.x, other.x))
            and bool(np.array_equal(self.y, other.y))
        )


def generate_sample(cfg: ModelConfig) -> Sample:
    """Draw the sample determined by cfg (bit-identical under a fixed seed)."""
    x = substream(cfg.seed, ROLE_DESIGN).random((cfg.n, cfg.d))
    signal = contains_many(cfg.truth, x).astype(np.float64)
    rng = substream(cfg.seed, ROLE_NOISE)
    if cfg.noise_kind == "gaussian":
        noise = cfg.sigma * rng.standard_normal(cfg.n)
    else:
        noise = cfg.sigma * (2.0 * rng.integers(0, 2, cfg.n) - 1.0)
    return Sample(cfg, x, signal + noise)


# ---------------------------------------------------------------------------
# serialization


def config_to_json(cfg: ModelConfig) -> dict:
    return {
        "d": cfg.d,
        "n": cfg.n,
        "truth": body_to_json(cfg.truth),
        "sigma": cfg.sigma,
        "noise_kind": cfg.noise_kind,
        "seed": cfg.seed,
    }


def config_from_json(obj: dict) -> ModelConfig:
    return ModelConfig(
        d=int(obj["d"]),
        n=int(obj["n"]),
        truth=body_from_json(obj["truth"]),
        sigma=float(obj["sigma"]),
        noise_kind=str(obj["noise_kind"]),
        seed=int(obj["seed"]),
    )


def write_sample(s: Sample, path: str | os.PathLike) -> None:
    """CSV with header x1..xd,y and the config as a JSON comment line."""
    d = s.config.d
    header = ",".join([f"x{j + 1}" for j in range(d)] + ["y"])
    lines = [
        "# " + json.dumps(config_to_json(s.config), separators=(",", ":")),
        header,
    ]
    for i in range(s.n):
        vals = [repr(float(v)) for v in s.x[i]] + [repr(float(s.y[i]))]
        lines.append(",".join(vals))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_sample(path: str | os.PathLike) -> Sample:
    """Inverse of write_sample; parse failures name the offending line."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read().splitlines()
    if not raw or not raw[0].startswith("# "):
        raise ValueError(f"{path}:1: expected a '# {{json config}}' comment line")
    try:
        cfg = config_from_json(json.loads(raw[0][2:]))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"{path}:1: bad config header: {exc}") from exc
    expected = ",".join([f"x{j + 1}" for j in range(cfg.d)] + ["y"])
    if len(raw) < 2 or raw[1] != expected:
        raise ValueError(f"{path}:2: expected header {expected!r}")
    body = [ln for ln in raw[2:] if ln]
    if len(body) != cfg.n:
        raise ValueError(f"{path}: expected {cfg.n} data lines, found {len(body)}")
    x = np.empty((cfg.n, cfg.d))
    y = np.empty(cfg.n)
    for i, ln in enumerate(body):
        parts = ln.split(",")
        if len(parts) != cfg.d + 1:
            raise ValueError(f"{path}:{i + 3}: expected {cfg.d + 1} fields, found {len(parts)}")
        try:
            vals = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{path}:{i + 3}: {exc}") from exc
        x[i] = vals[:-1]
        y[i] = vals[-1]
    return Sample(cfg, x, y)
