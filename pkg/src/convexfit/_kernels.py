"""Compiled 2D geometry kernels: hulls, membership, criterion sums, annealing.

Everything here is deterministic; all randomness is pregenerated by the
caller and passed in as arrays. Tolerance semantics match geometry.TOL:
half-plane tests use signed distance >= -tol, degenerate hulls (points,
segments) use Euclidean distance <= tol, boundary counts as inside.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _sort_xy(vx, vy):
    # insertion sort by (x, y); input arrays are mutated
    k = vx.shape[0]
    for i in range(1, k):
        xi = vx[i]
        yi = vy[i]
        j = i - 1
        while j >= 0 and (vx[j] > xi or (vx[j] == xi and vy[j] > yi)):
            vx[j + 1] = vx[j]
            vy[j + 1] = vy[j]
            j -= 1
        vx[j + 1] = xi
        vy[j + 1] = yi


@njit(cache=True)
def _chain_sorted(sx, sy):
    # monotone chain on lexicographically sorted points; collinear points
    # dropped, so the result is a minimal CCW hull (1, 2, or >= 3 vertices)
    k = sx.shape[0]
    if k == 1:
        return sx.copy(), sy.copy()
    idx = np.empty(2 * k + 1, np.int64)
    t = 0
    for i in range(k):
        while t >= 2:
            ax = sx[idx[t - 2]]
            ay = sy[idx[t - 2]]
            c = (sx[idx[t - 1]] - ax) * (sy[i] - ay) - (sy[idx[t - 1]] - ay) * (sx[i] - ax)
            if c <= 0.0:
                t -= 1
            else:
                break
        idx[t] = i
        t += 1
    lo = t + 1
    for i in range(k - 2, -1, -1):
        while t >= lo:
            ax = sx[idx[t - 2]]
            ay = sy[idx[t - 2]]
            c = (sx[idx[t - 1]] - ax) * (sy[i] - ay) - (sy[idx[t - 1]] - ay) * (sx[i] - ax)
            if c <= 0.0:
                t -= 1
            else:
                break
        idx[t] = i
        t += 1
    h = t - 1
    hx = np.empty(h, np.float64)
    hy = np.empty(h, np.float64)
    for i in range(h):
        hx[i] = sx[idx[i]]
        hy[i] = sy[idx[i]]
    return hx, hy


@njit(cache=True)
def hull_of(vx, vy):
    """CCW convex hull coordinates of an arbitrary 2D vertex multiset."""
    sx = vx.copy()
    sy = vy.copy()
    _sort_xy(sx, sy)
    return _chain_sorted(sx, sy)


@njit(cache=True)
def _seg_dist2(ax, ay, bx, by, px, py):
    dx = bx - ax
    dy = by - ay
    l2 = dx * dx + dy * dy
    if l2 == 0.0:
        ex = px - ax
        ey = py - ay
        return ex * ex + ey * ey
    t = ((px - ax) * dx + (py - ay) * dy) / l2
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    ex = px - (ax + t * dx)
    ey = py - (ay + t * dy)
    return ex * ex + ey * ey


@njit(cache=True)
def mask_in_hull(hx, hy, px, py, tol):
    """Boolean membership of points (px, py) in the CCW hull (hx, hy)."""
    n = px.shape[0]
    h = hx.shape[0]
    out = np.zeros(n, np.bool_)
    if h == 1:
        t2 = tol * tol
        for i in range(n):
            ex = px[i] - hx[0]
            ey = py[i] - hy[0]
            out[i] = ex * ex + ey * ey <= t2
        return out
    if h == 2:
        t2 = tol * tol
        for i in range(n):
            out[i] = _seg_dist2(hx[0], hy[0], hx[1], hy[1], px[i], py[i]) <= t2
        return out
    # per-edge slack tol * |edge| so the test is on signed distance
    slack = np.empty(h, np.float64)
    for j in range(h):
        j2 = j + 1
        if j2 == h:
            j2 = 0
        ex = hx[j2] - hx[j]
        ey = hy[j2] - hy[j]
        slack[j] = tol * np.sqrt(ex * ex + ey * ey)
    xlo = hx[0]
    xhi = hx[0]
    ylo = hy[0]
    yhi = hy[0]
    for j in range(1, h):
        if hx[j] < xlo:
            xlo = hx[j]
        if hx[j] > xhi:
            xhi = hx[j]
        if hy[j] < ylo:
            ylo = hy[j]
        if hy[j] > yhi:
            yhi = hy[j]
    xlo -= tol
    xhi += tol
    ylo -= tol
    yhi += tol
    for i in range(n):
        x = px[i]
        y = py[i]
        if x < xlo or x > xhi or y < ylo or y > yhi:
            continue
        inside = True
        for j in range(h):
            j2 = j + 1
            if j2 == h:
                j2 = 0
            c = (hx[j2] - hx[j]) * (y - hy[j]) - (hy[j2] - hy[j]) * (x - hx[j])
            if c < -slack[j]:
                inside = False
                break
        out[i] = inside
    return out


@njit(cache=True)
def _sum_in_hull(hx, hy, px, py, w, tol):
    # sum of w over points inside the hull, in ascending point order
    n = px.shape[0]
    h = hx.shape[0]
    s = 0.0
    if h == 1:
        t2 = tol * tol
        for i in range(n):
            ex = px[i] - hx[0]
            ey = py[i] - hy[0]
            if ex * ex + ey * ey <= t2:
                s += w[i]
        return s
    if h == 2:
        t2 = tol * tol
        for i in range(n):
            if _seg_dist2(hx[0], hy[0], hx[1], hy[1], px[i], py[i]) <= t2:
                s += w[i]
        return s
    slack = np.empty(h, np.float64)
    for j in range(h):
        j2 = j + 1
        if j2 == h:
            j2 = 0
        ex = hx[j2] - hx[j]
        ey = hy[j2] - hy[j]
        slack[j] = tol * np.sqrt(ex * ex + ey * ey)
    xlo = hx[0]
    xhi = hx[0]
    ylo = hy[0]
    yhi = hy[0]
    for j in range(1, h):
        if hx[j] < xlo:
            xlo = hx[j]
        if hx[j] > xhi:
            xhi = hx[j]
        if hy[j] < ylo:
            ylo = hy[j]
        if hy[j] > yhi:
            yhi = hy[j]
    xlo -= tol
    xhi += tol
    ylo -= tol
    yhi += tol
    for i in range(n):
        x = px[i]
        y = py[i]
        if x < xlo or x > xhi or y < ylo or y > yhi:
            continue
        inside = True
        for j in range(h):
            j2 = j + 1
            if j2 == h:
                j2 = 0
            c = (hx[j2] - hx[j]) * (y - hy[j]) - (hy[j2] - hy[j]) * (x - hx[j])
            if c < -slack[j]:
                inside = False
                break
        if inside:
            s += w[i]
    return s


@njit(cache=True)
def eval_polygon(vx, vy, px, py, w, tol):
    """Criterion sum of w over points covered by conv(vertex multiset)."""
    hx, hy = hull_of(vx, vy)
    return _sum_in_hull(hx, hy, px, py, w, tol)


@njit(cache=True)
def _eval_grid_state(ix, iy, m, px, py, w, tol):
    r = ix.shape[0]
    vx = np.empty(r, np.float64)
    vy = np.empty(r, np.float64)
    for q in range(r):
        vx[q] = ix[q] / m
        vy[q] = iy[q] / m
    return eval_polygon(vx, vy, px, py, w, tol)


@njit(cache=True)
def anneal_run(px, py, w, m, t0, gamma, tol, ix0, iy0,
               vsel, jump, gxs, gys, dxs, dys, acc):
    """One annealing restart over vertex multisets on the (m+1)^2 grid.

    Proposal draws are pregenerated: vsel picks the vertex, jump switches to
    a global move (gxs, gys), otherwise the local offset (dxs, dys) applies
    with clamping to the grid; acc holds the Metropolis uniforms.
    Returns (best value, best state, final value).
    """
    r = ix0.shape[0]
    steps = vsel.shape[0]
    ix = ix0.copy()
    iy = iy0.copy()
    cur = _eval_grid_state(ix, iy, m, px, py, w, tol)
    bestv = cur
    bix = ix.copy()
    biy = iy.copy()
    temp = t0
    for t in range(steps):
        v = vsel[t]
        ox = ix[v]
        oy = iy[v]
        if jump[t]:
            nx = gxs[t]
            ny = gys[t]
        else:
            nx = ox + dxs[t]
            ny = oy + dys[t]
            if nx < 0:
                nx = 0
            elif nx > m:
                nx = m
            if ny < 0:
                ny = 0
            elif ny > m:
                ny = m
        ix[v] = nx
        iy[v] = ny
        val = _eval_grid_state(ix, iy, m, px, py, w, tol)
        delta = val - cur
        ok = delta <= 0.0
        if not ok:
            ok = acc[t] < np.exp(-delta / temp)
        if ok:
            cur = val
            if val < bestv:
                bestv = val
                for q in range(r):
                    bix[q] = ix[q]
                    biy[q] = iy[q]
        else:
            ix[v] = ox
            iy[v] = oy
        temp *= gamma
    return bestv, bix, biy, cur
