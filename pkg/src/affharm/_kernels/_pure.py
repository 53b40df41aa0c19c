"""Pure numpy backend for the hot grid kernels.

Same call signatures as the compiled core (affharm._kernels._core); the
dispatcher in __init__ picks whichever is importable.  All routines are
deterministic and side-effect free.
"""

from __future__ import annotations

import numpy as np

KIND_SAMPLED = -1
KIND_CAUCHY_PLUS = 0
KIND_CAUCHY_MINUS = 1
KIND_POISSON = 2
KIND_CONJ_POISSON = 3
KIND_GAUSSIAN = 4
KIND_MEXICAN_HAT = 5
KIND_BOX = 6
KIND_CAUCHY_INTEGRAL = 7

_B_CHUNK = 128


def eval_kernel(kind: int, s):
    """Evaluate a builtin kernel shape at (array of) points s."""
    s = np.asarray(s, dtype=float)
    if kind == KIND_CAUCHY_PLUS:
        return 1.0 / (np.pi * 1j * (1j - s))
    if kind == KIND_CAUCHY_MINUS:
        return 1.0 / (np.pi * 1j * (1j + s))
    if kind == KIND_POISSON:
        return ((1.0 / np.pi) / (1.0 + s * s)).astype(np.complex128)
    if kind == KIND_CONJ_POISSON:
        return (-(1.0 / np.pi) * s / (1.0 + s * s)).astype(np.complex128)
    if kind == KIND_GAUSSIAN:
        return np.exp(-s * s).astype(np.complex128)
    if kind == KIND_MEXICAN_HAT:
        return ((1.0 - s * s) * np.exp(-0.5 * s * s)).astype(np.complex128)
    if kind == KIND_BOX:
        return np.where(np.abs(s) <= 1.0, 0.5, 0.0).astype(np.complex128)
    if kind == KIND_CAUCHY_INTEGRAL:
        return 1.0 / (2.0 * np.pi * 1j * (s - 1j))
    raise ValueError(f"unknown kernel kind {kind}")


def interp_kernel(ksamples, kx0: float, kdx: float, s):
    """Linear interpolation of a sampled kernel, zero outside its grid.

    Index arithmetic t = (s - kx0)/kdx, shared verbatim with the compiled
    core so both backends agree bit for bit.
    """
    nk = len(ksamples)
    t = (np.asarray(s, dtype=float) - kx0) / kdx
    inside = (t >= 0.0) & (t <= nk - 1)
    j = np.clip(np.floor(t).astype(np.int64), 0, nk - 2)
    frac = np.clip(t, 0.0, float(nk - 1)) - j
    val = ksamples[j] * (1.0 - frac) + ksamples[j + 1] * frac
    return np.where(inside, val, 0.0 + 0.0j)


def _kernel_values(kind, ksamples, kx0, kdx, s):
    if kind == KIND_SAMPLED:
        return interp_kernel(ksamples, kx0, kdx, s)
    return eval_kernel(kind, s)


def field_general(fw, x, a_axis, b_axis, kind, ksamples, kx0, kdx, expo):
    """General-position covariant synthesis.

    out[l, i] = a_l**expo * sum_j fw[j] * K((x[j] - b[i]) / a_l)

    fw must already carry the quadrature weights.
    """
    na, nb = len(a_axis), len(b_axis)
    out = np.empty((na, nb), dtype=np.complex128)
    for l in range(na):
        a = a_axis[l]
        pref = a ** expo
        for i0 in range(0, nb, _B_CHUNK):
            bb = b_axis[i0 : i0 + _B_CHUNK]
            s = (x[None, :] - bb[:, None]) / a
            kv = _kernel_values(kind, ksamples, kx0, kdx, s)
            out[l, i0 : i0 + _B_CHUNK] = pref * (kv @ fw)
    return out


def contra_general(uw, b_axis, a_axis, scal, x_out, kind, ksamples, kx0, kdx):
    """General-position contravariant synthesis.

    out[i] = sum_l scal[l] * sum_j uw[l, j] * K((x_out[i] - b_axis[j]) / a_l)

    uw must carry the b-quadrature weights.
    """
    n = len(x_out)
    out = np.zeros(n, dtype=np.complex128)
    for l in range(len(a_axis)):
        a = a_axis[l]
        row = uw[l]
        for i0 in range(0, n, _B_CHUNK):
            xx = x_out[i0 : i0 + _B_CHUNK]
            s = (xx[:, None] - b_axis[None, :]) / a
            kv = _kernel_values(kind, ksamples, kx0, kdx, s)
            out[i0 : i0 + _B_CHUNK] += scal[l] * (kv @ row)
    return out


def hilbert_direct(fvals, dx):
    """Principal-value Hilbert sum by direct summation, O(n^2).

    out[i] = (1/pi) * sum_{j != i} w[j] * f[j] / (x_i - x_j)
    with composite-trapezoid weights w.
    """
    n = len(fvals)
    w = np.full(n, dx)
    w[0] = w[-1] = 0.5 * dx
    wf = w * fvals
    idx = np.arange(n, dtype=float)
    out = np.empty(n, dtype=np.complex128)
    for i0 in range(0, n, _B_CHUNK):
        ii = idx[i0 : i0 + _B_CHUNK]
        d = (ii[:, None] - idx[None, :]) * dx
        with np.errstate(divide="ignore"):
            m = 1.0 / d
        for r, i in enumerate(range(i0, min(i0 + _B_CHUNK, n))):
            m[r, i] = 0.0
        out[i0 : i0 + _B_CHUNK] = m @ wf
    return out / np.pi


# ---------------------------------------------------------------------------
# Uncentered maximal function sweep.
#
# Prefix array T[j] = sum_{k<j} (|f_k| + |f_{k+1}|) makes the average of |f|
# over the grid interval [x_i, x_j] equal to (T[j]-T[i]) / (2 (j-i)),
# independent of dx.  The uncentered maximal value at node t is the larger of
# the two one-sided maxima (an interval straddling t averages a weighted mean
# of its two halves, so it never beats both).  Each one-sided sweep keeps the
# lower convex hull of prefix points and finds the tangent from the query
# point by binary search: O(n log n) total.
# ---------------------------------------------------------------------------


def _one_sided_sweep(yc, xc, order):
    """Hull-based argmax of the slope (yc[q]-yc[c])/(xc[q]-xc[c]) per query.

    Nodes are visited in `order`; node order[k-1] joins the candidate set
    before node order[k] is queried.  xc must be strictly increasing along
    `order`, so every query lies to the right of its candidates.  Returns
    the best candidate index per node, -1 when the set is empty.
    """
    n = len(yc)
    best = np.full(n, -1, dtype=int)
    hull: list[int] = []

    for k in range(1, n):
        new = order[k - 1]
        # keep the chain lower-convex: pop while slope(h2,h1) >= slope(h1,new)
        while len(hull) >= 2:
            h2, h1 = hull[-2], hull[-1]
            lhs = (yc[h1] - yc[h2]) * (xc[new] - xc[h1])
            rhs = (yc[new] - yc[h1]) * (xc[h1] - xc[h2])
            if lhs >= rhs:
                hull.pop()
            else:
                break
        hull.append(new)

        q = order[k]
        lo, hi = 0, len(hull) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            i1, i2 = hull[mid], hull[mid + 1]
            n1, d1 = yc[q] - yc[i1], xc[q] - xc[i1]
            n2, d2 = yc[q] - yc[i2], xc[q] - xc[i2]
            # slope-to-query is unimodal along the hull; denominators > 0
            if n2 * d1 > n1 * d2:
                lo = mid + 1
            else:
                hi = mid
        best[q] = hull[lo]
    return best


def hl_maximal(T):
    """Uncentered maximal values per node from the prefix array T."""
    n = len(T)
    out = np.full(n, -np.inf)
    idx = np.arange(n, dtype=float)

    left_best = _one_sided_sweep(T, idx, np.arange(n))
    # right side: mirror both axes so candidates sit left of their queries
    right_best = _one_sided_sweep(-T, -idx, np.arange(n - 1, -1, -1))

    for t in range(n):
        i = left_best[t]
        if i >= 0:
            out[t] = (T[t] - T[i]) / (2.0 * (t - i))
        j = right_best[t]
        if j >= 0:
            v = (T[j] - T[t]) / (2.0 * (j - t))
            if v > out[t]:
                out[t] = v
    return out
