"""Convex bodies in the unit cube: membership, measure, distances, constructions.

Bodies live in [0,1]^d, d >= 2. Three kinds are supported: polytopes given by
a vertex multiset (degenerate ones with zero volume are legal), closed balls,
and balls with spherical caps sliced off by hyperplanes. Two-dimensional
polytope measures are exact (shoelace / convex clipping); everything else is
Monte Carlo over the unit cube with Wilson-style 95% confidence intervals.
The MC sampler is jitter-stratified, which never increases the variance of an
indicator integral, so the reported binomial CIs are conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import quad
from scipy.optimize import nnls
from scipy.spatial import ConvexHull, QhullError

from . import _kernels
from .rng import substream

TOL = 1e-9  # membership tolerance; boundary points count as inside
_Z95 = 1.959963984540054  # two-sided 95% normal quantile

__all__ = [
    "TOL",
    "Polytope",
    "GridPolytope",
    "Ball",
    "CapCarvedBall",
    "ConvexBody",
    "MeasureEstimate",
    "unit_ball_volume",
    "contains",
    "contains_many",
    "volume",
    "nikodym_distance",
    "snap_to_grid",
    "dilation_area_2d",
    "cap_volume",
    "sphere_packing",
    "sphere_grid",
    "regular_polygon",
    "body_to_json",
    "body_from_json",
    "polytope_to_json",
    "polytope_from_json",
]


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex hull of a vertex multiset in [0,1]^d (repeats allowed)."""

    vertices: np.ndarray  # (k, d) float64

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=np.float64))
        if v.ndim != 2 or v.shape[0] < 1:
            raise ValueError("vertices must form a nonempty (k, d) array")
        if v.shape[1] < 2:
            raise ValueError("dimension must be >= 2")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        if v.min() < -TOL or v.max() > 1.0 + TOL:
            raise ValueError("vertices must lie in [0,1]^d")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polytope)
            and self.vertices.shape == other.vertices.shape
            and bool(np.array_equal(self.vertices, other.vertices))
        )


@dataclass(frozen=True, eq=False)
class GridPolytope(Polytope):
    """Polytope whose coordinates are exact integer multiples of 1/resolution."""

    resolution: int = 1

    def __post_init__(self):
        super().__post_init__()
        m = int(self.resolution)
        if m < 1:
            raise ValueError("resolution must be >= 1")
        k = np.rint(self.vertices * m)
        if not np.array_equal(k / m, self.vertices):
            raise ValueError("coordinates must be exact multiples of 1/resolution")
        object.__setattr__(self, "resolution", m)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GridPolytope)
            and self.resolution == other.resolution
            and Polytope.__eq__(self, other)
        )


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed Euclidean ball contained in [0,1]^d."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.center, dtype=np.float64))
        r = float(self.radius)
        if c.ndim != 1 or c.shape[0] < 2 or not np.all(np.isfinite(c)):
            raise ValueError("center must be a finite vector of dimension >= 2")
        if not (r > 0.0) or not math.isfinite(r):
            raise ValueError("radius must be positive and finite")
        if (c - r).min() < -TOL or (c + r).max() > 1.0 + TOL:
            raise ValueError("ball must be contained in [0,1]^d")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ball)
            and self.radius == other.radius
            and bool(np.array_equal(self.center, other.center))
        )


@dataclass(frozen=True, eq=False)
class CapCarvedBall:
    """Ball with spherical caps sliced off where pattern == 0.

    Cap j is bounded by the hyperplane orthogonal to directions[j] at
    distance radius - heights[j] from the center; pattern[j] == 1 keeps the
    cap, pattern[j] == 0 removes it (the body stays convex: it is the ball
    intersected with the carved half-spaces).
    """

    center: np.ndarray
    radius: float
    directions: np.ndarray  # (J, d) unit rows
    heights: np.ndarray  # (J,)
    pattern: np.ndarray  # (J,) of 0/1

    def __post_init__(self):
        c = np.ascontiguousarray(np.asarray(self.center, dtype=np.float64))
        r = float(self.radius)
        u = np.ascontiguousarray(np.asarray(self.directions, dtype=np.float64))
        h = np.ascontiguousarray(np.asarray(self.heights, dtype=np.float64))
        w = np.ascontiguousarray(np.asarray(self.pattern, dtype=np.int64))
        if c.ndim != 1 or c.shape[0] < 2:
            raise ValueError("center must have dimension >= 2")
        if not (r > 0.0):
            raise ValueError("radius must be positive")
        if u.ndim != 2 or u.shape[1] != c.shape[0] or u.shape[0] < 1:
            raise ValueError("directions must be a (J, d) array")
        if not np.allclose(np.linalg.norm(u, axis=1), 1.0, atol=1e-9):
            raise ValueError("directions must be unit vectors")
        if h.shape != (u.shape[0],) or np.any(h <= 0.0) or np.any(h > r):
            raise ValueError("heights must lie in (0, radius]")
        if w.shape != (u.shape[0],) or not np.all((w == 0) | (w == 1)):
            raise ValueError("pattern must be 0/1 with one entry per cap")
        if (c - r).min() < -TOL or (c + r).max() > 1.0 + TOL:
            raise ValueError("ball must be contained in [0,1]^d")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "directions", u)
        object.__setattr__(self, "heights", h)
        object.__setattr__(self, "pattern", w)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CapCarvedBall)
            and self.radius == other.radius
            and bool(np.array_equal(self.center, other.center))
            and self.directions.shape == other.directions.shape
            and bool(np.array_equal(self.directions, other.directions))
            and bool(np.array_equal(self.heights, other.heights))
            and bool(np.array_equal(self.pattern, other.pattern))
        )


ConvexBody = Union[Polytope, Ball, CapCarvedBall]


@dataclass(frozen=True)
class MeasureEstimate:
    """Lebesgue measure with a 95% half-width (0 on exact paths)."""

    value: float
    half_width: float
    method: str  # "exact2d" | "mc"

    def __post_init__(self):
        if self.method not in ("exact2d", "mc"):
            raise ValueError("method must be 'exact2d' or 'mc'")
        if not (self.value >= 0.0) or not math.isfinite(self.value):
            raise ValueError("value must be a finite nonnegative real")
        if not (self.half_width >= 0.0) or not math.isfinite(self.half_width):
            raise ValueError("half_width must be a finite nonnegative real")
        if self.method == "exact2d" and self.half_width != 0.0:
            raise ValueError("exact results carry half_width 0")


# ---------------------------------------------------------------------------
# basic helpers


def unit_ball_volume(d: int) -> float:
    """Volume of the d-dimensional unit Euclidean ball."""
    d = int(d)
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    return math.exp(0.5 * d * math.log(math.pi) - math.lgamma(0.5 * d + 1.0))


def hull2d(p: Polytope) -> np.ndarray:
    """CCW hull vertices of a 2D polytope (minimal: 1, 2, or >= 3 rows)."""
    if p.dim != 2:
        raise ValueError("hull2d requires dimension 2")
    hx, hy = _kernels.hull_of(p.vertices[:, 0].copy(), p.vertices[:, 1].copy())
    return np.column_stack([hx, hy])


def _shoelace(h: np.ndarray) -> float:
    if h.shape[0] < 3:
        return 0.0
    x = h[:, 0]
    y = h[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _hull_perimeter(h: np.ndarray) -> float:
    if h.shape[0] < 2:
        return 0.0
    d = h - np.roll(h, -1, axis=0)
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def _clip_area(subject: np.ndarray, clip: np.ndarray) -> float:
    """Area of the intersection of two CCW convex polygons."""
    if subject.shape[0] < 3 or clip.shape[0] < 3:
        return 0.0
    poly = [tuple(v) for v in subject]
    k = clip.shape[0]
    for j in range(k):
        if not poly:
            return 0.0
        ax, ay = clip[j]
        bx, by = clip[(j + 1) % k]
        ex, ey = bx - ax, by - ay
        new = []
        npoly = len(poly)
        for i in range(npoly):
            px, py = poly[i]
            qx, qy = poly[(i + 1) % npoly]
            sp = ex * (py - ay) - ey * (px - ax)
            sq = ex * (qy - ay) - ey * (qx - ax)
            if sp >= 0.0:
                new.append((px, py))
            if (sp > 0.0 > sq) or (sp < 0.0 < sq):
                t = sp / (sp - sq)
                new.append((px + t * (qx - px), py + t * (qy - py)))
        poly = new
    if len(poly) < 3:
        return 0.0
    arr = np.asarray(poly)
    return _shoelace(arr)


def _wilson(hits: int, trials: int) -> tuple[float, float]:
    """Point estimate and max-sided Wilson 95% half-width."""
    p = hits / trials
    z2 = _Z95 * _Z95
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    half = _Z95 * math.sqrt(p * (1.0 - p) / trials + z2 / (4 * trials * trials)) / denom
    lo, hi = center - half, center + half
    return p, max(p - lo, hi - p)


def _mc_points(d: int, budget: int, rng: np.random.Generator) -> np.ndarray:
    """Jitter-stratified uniform points on [0,1]^d (plus an iid remainder)."""
    g = max(1, int(round(budget ** (1.0 / d))))
    while (g + 1) ** d <= budget:
        g += 1
    while g > 1 and g**d > budget:
        g -= 1
    if g < 2:
        return rng.random((budget, d))
    s = g**d
    cells = np.stack(np.unravel_index(np.arange(s), (g,) * d), axis=1)
    pts = (cells + rng.random((s, d))) / g
    rest = budget - s
    if rest > 0:
        pts = np.vstack([pts, rng.random((rest, d))])
    return pts


# ---------------------------------------------------------------------------
# membership


def _in_hull_feasibility(vertices: np.ndarray, x: np.ndarray) -> bool:
    # x in conv(V) iff the convex-combination system has a nonnegative
    # solution; nnls residual 0 on feasible, > 0 at distance-to-hull scale
    k = vertices.shape[0]
    a = np.vstack([vertices.T, np.ones((1, k))])
    b = np.append(x, 1.0)
    _, resid = nnls(a, b)
    return bool(resid <= TOL)


def contains_many(body: ConvexBody, x: np.ndarray) -> np.ndarray:
    """Vectorized closed-set membership of the rows of x in the body."""
    x = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    if x.ndim != 2 or x.shape[1] != body.dim:
        raise ValueError("points must be a (n, d) array matching the body dimension")
    if not np.all(np.isfinite(x)):
        raise ValueError("points must be finite")
    if isinstance(body, Polytope):
        if body.dim == 2:
            hx, hy = _kernels.hull_of(
                body.vertices[:, 0].copy(), body.vertices[:, 1].copy()
            )
            return np.asarray(
                _kernels.mask_in_hull(
                    hx, hy, np.ascontiguousarray(x[:, 0]), np.ascontiguousarray(x[:, 1]), TOL
                )
            )
        v = body.vertices
        try:
            hull = ConvexHull(v)
        except QhullError:
            # degenerate in d >= 3: prefilter by bounding box, then solve
            lo = v.min(axis=0) - TOL
            hi = v.max(axis=0) + TOL
            out = np.zeros(x.shape[0], dtype=bool)
            near = np.flatnonzero(np.all((x >= lo) & (x <= hi), axis=1))
            for i in near:
                out[i] = _in_hull_feasibility(v, x[i])
            return out
        eq = hull.equations  # unit outward normals: n.x + b <= 0 inside
        return np.all(x @ eq[:, :-1].T + eq[:, -1] <= TOL, axis=1)
    if isinstance(body, Ball):
        return np.linalg.norm(x - body.center, axis=1) <= body.radius + TOL
    if isinstance(body, CapCarvedBall):
        inside = np.linalg.norm(x - body.center, axis=1) <= body.radius + TOL
        carved = np.flatnonzero(body.pattern == 0)
        if carved.size:
            dots = (x - body.center) @ body.directions[carved].T
            cut = body.radius - body.heights[carved]
            inside &= np.all(dots <= cut + TOL, axis=1)
        return inside
    raise TypeError(f"unsupported body type: {type(body).__name__}")


def contains(body: ConvexBody, x) -> bool:
    """Closed-set membership of a single point (boundary counts as inside)."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != body.dim:
        raise ValueError("point dimension must match the body")
    if not np.all(np.isfinite(x)):
        raise ValueError("point must be finite")
    if isinstance(body, Polytope) and body.dim >= 3:
        return _in_hull_feasibility(body.vertices, x)
    return bool(contains_many(body, x[None, :])[0])


# ---------------------------------------------------------------------------
# measures


def volume(body: ConvexBody, budget: int = 200_000, seed: int = 0) -> MeasureEstimate:
    """Lebesgue measure: exact for 2D polytopes and balls, MC otherwise."""
    if isinstance(body, Polytope) and body.dim == 2:
        return MeasureEstimate(_shoelace(hull2d(body)), 0.0, "exact2d")
    if isinstance(body, Ball):
        return MeasureEstimate(
            unit_ball_volume(body.dim) * body.radius**body.dim, 0.0, "exact2d"
        )
    budget = int(budget)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    pts = _mc_points(body.dim, budget, substream(seed, 0))
    hits = int(contains_many(body, pts).sum())
    value, hw = _wilson(hits, budget)
    return MeasureEstimate(value, hw, "mc")


def nikodym_distance(
    a: ConvexBody, b: ConvexBody, budget: int = 200_000, seed: int = 0
) -> MeasureEstimate:
    """Measure of the symmetric difference, exact for pairs of 2D polytopes."""
    if a.dim != b.dim:
        raise ValueError("bodies must share a dimension")
    if isinstance(a, Polytope) and isinstance(b, Polytope) and a.dim == 2:
        ha = hull2d(a)
        hb = hull2d(b)
        # clipping is not bit-symmetric in its argument order; canonicalize
        if tuple(map(tuple, ha)) > tuple(map(tuple, hb)):
            ha, hb = hb, ha
        val = _shoelace(ha) + _shoelace(hb) - 2.0 * _clip_area(ha, hb)
        return MeasureEstimate(max(val, 0.0), 0.0, "exact2d")
    budget = int(budget)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    pts = _mc_points(a.dim, budget, substream(seed, 0))
    hits = int((contains_many(a, pts) != contains_many(b, pts)).sum())
    value, hw = _wilson(hits, budget)
    return MeasureEstimate(value, hw, "mc")


# ---------------------------------------------------------------------------
# constructions


def snap_to_grid(p: Polytope, m: int) -> GridPolytope:
    """Move each vertex to the nearest grid point (ties toward smaller)."""
    m = int(m)
    if m < 1:
        raise ValueError("resolution must be >= 1")
    k = np.ceil(p.vertices * m - 0.5)
    np.clip(k, 0, m, out=k)
    return GridPolytope(k / m, resolution=m)


def dilation_area_2d(p: Polytope, lam: float) -> float:
    """Area of the lam-dilation of a 2D polytope: area + perimeter*lam + pi*lam^2."""
    lam = float(lam)
    if p.dim != 2:
        raise ValueError("dilation_area_2d requires dimension 2")
    if not (lam >= 0.0) or not math.isfinite(lam):
        raise ValueError("dilation radius must be nonnegative and finite")
    h = hull2d(p)
    return _shoelace(h) + _hull_perimeter(h) * lam + math.pi * lam * lam


def cap_volume(d: int, radius: float, height: float) -> float:
    """Volume of a spherical cap of the given height, by slice quadrature."""
    d = int(d)
    radius = float(radius)
    height = float(height)
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if not (radius > 0.0):
        raise ValueError("radius must be positive")
    if height < 0.0 or height > 2.0 * radius:
        raise ValueError("height must lie in [0, 2*radius]")
    if height == 0.0:
        return 0.0
    ex = 0.5 * (d - 1)
    val, _ = quad(
        lambda r: (r * (2.0 * radius - r)) ** ex,
        0.0,
        height,
        epsabs=1e-14,
        epsrel=1e-11,
        limit=200,
    )
    return unit_ball_volume(d - 1) * val


def sphere_packing(d: int, eta: float, seed: int = 0) -> np.ndarray:
    """Greedy maximal eta-packing of the sphere of radius 1/2 centered at 1/2.

    Streams uniform sphere points, keeping each candidate whose Euclidean
    distance to every kept center is >= eta. Approximate maximality is
    certified by a rejection streak of 100000 * (current size) consecutive
    misses, which also makes the result an eta-net up to MC certainty.
    """
    d = int(d)
    eta = float(eta)
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if not (0.0 < eta < 1.0):
        raise ValueError("eta must lie in (0, 1)")
    rng = substream(seed, 0)
    eta2 = eta * eta
    centers: list[np.ndarray] = []
    carr = np.empty((0, d))
    streak = 0
    chunk = 8192
    while True:
        z = rng.standard_normal((chunk, d))
        nrm = np.linalg.norm(z, axis=1)
        nrm[nrm == 0.0] = 1.0
        cand = 0.5 + 0.5 * z / nrm[:, None]
        if carr.shape[0]:
            d2 = (
                (cand * cand).sum(axis=1)[:, None]
                - 2.0 * cand @ carr.T
                + (carr * carr).sum(axis=1)[None, :]
            )
            ok = np.all(d2 >= eta2, axis=1)
        else:
            ok = np.ones(chunk, dtype=bool)
        i = 0
        while i < chunk:
            nxt = np.flatnonzero(ok[i:])
            bar = 100_000 * max(1, len(centers))
            if nxt.size == 0:
                streak += chunk - i
                break
            j = i + int(nxt[0])
            if streak + (j - i) >= bar:
                return np.asarray(centers)
            streak = 0
            centers.append(cand[j].copy())
            carr = np.asarray(centers)
            i = j + 1
            if i < chunk:
                gap2 = ((cand[i:] - cand[j]) ** 2).sum(axis=1)
                ok[i:] &= gap2 >= eta2
        if streak >= 100_000 * max(1, len(centers)):
            return np.asarray(centers)


def sphere_grid(d: int, count: int) -> np.ndarray:
    """Deterministic probe points on the sphere of radius 1/2 centered at 1/2.

    Circle angles for d=2, a Fibonacci lattice for d=3; used to certify the
    net property of greedy packings against a fixed, seed-free grid.
    """
    d = int(d)
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    if d == 2:
        ang = 2.0 * math.pi * np.arange(count) / count
        return 0.5 + 0.5 * np.column_stack([np.cos(ang), np.sin(ang)])
    if d == 3:
        k = np.arange(count, dtype=np.float64)
        golden = (1.0 + math.sqrt(5.0)) / 2.0
        z = 1.0 - (2.0 * k + 1.0) / count
        rad = np.sqrt(np.clip(1.0 - z * z, 0.0, 1.0))
        ang = 2.0 * math.pi * k / golden
        pts = np.column_stack([rad * np.cos(ang), rad * np.sin(ang), z])
        return 0.5 + 0.5 * pts
    raise ValueError("probe grids are provided for d in {2, 3}")


def regular_polygon(m: int, center=(0.5, 0.5), radius: float = 0.5) -> Polytope:
    """Regular m-gon inscribed in the circle of the given center and radius."""
    m = int(m)
    if m < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    cx, cy = float(center[0]), float(center[1])
    radius = float(radius)
    ang = 2.0 * math.pi * np.arange(m) / m
    return Polytope(np.column_stack([cx + radius * np.cos(ang), cy + radius * np.sin(ang)]))


# ---------------------------------------------------------------------------
# serialization


def polytope_to_json(p: Polytope) -> dict:
    out = {"dim": p.dim, "vertices": p.vertices.tolist()}
    if isinstance(p, GridPolytope):
        out["resolution"] = p.resolution
    return out


def polytope_from_json(obj: dict) -> Polytope:
    v = np.asarray(obj["vertices"], dtype=np.float64)
    if v.ndim != 2 or v.shape[1] != int(obj["dim"]):
        raise ValueError("vertex array does not match the declared dimension")
    if "resolution" in obj:
        return GridPolytope(v, resolution=int(obj["resolution"]))
    return Polytope(v)


def body_to_json(body: ConvexBody) -> dict:
    if isinstance(body, Polytope):
        return {"variant": "poly", **polytope_to_json(body)}
    if isinstance(body, Ball):
        return {"variant": "ball", "center": body.center.tolist(), "radius": body.radius}
    if isinstance(body, CapCarvedBall):
        return {
            "variant": "capball",
            "center": body.center.tolist(),
            "radius": body.radius,
            "directions": body.directions.tolist(),
            "heights": body.heights.tolist(),
            "pattern": body.pattern.tolist(),
        }
    raise TypeError(f"unsupported body type: {type(body).__name__}")


def body_from_json(obj: dict) -> ConvexBody:
    kind = obj.get("variant")
    if kind == "poly":
        return polytope_from_json(obj)
    if kind == "ball":
        return Ball(np.asarray(obj["center"], dtype=np.float64), float(obj["radius"]))
    if kind == "capball":
        return CapCarvedBall(
            np.asarray(obj["center"], dtype=np.float64),
            float(obj["radius"]),
            np.asarray(obj["directions"], dtype=np.float64),
            np.asarray(obj["heights"], dtype=np.float64),
            np.asarray(obj["pattern"], dtype=np.int64),
        )
    raise ValueError(f"unknown body variant: {kind!r}")
