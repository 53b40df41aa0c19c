"""Compositions of covariant and contravariant transforms on the line.

The Hardy-Littlewood maximal function (averaging followed by the cone sup),
the Hilbert transform as a principal-value integral and as the vanishing-
scale limit of conjugate-Poisson integrals, the Sokhotsky-Plemelj boundary
map, and least-squares estimation of the two scalars any shift-dilation
commuting operator reduces to on the Hardy components.

Sign conventions, all verified against dense quadrature oracles before use:

    H f(t) = (1/pi) PV int f(b) / (t - b) db
    H cos = sin,  H (Poisson kernel) = -(conjugate Poisson kernel)
    PV int f(t) / (t - x) dt = -pi * (H f)(x)
    H = -i I on the positive-frequency component, +i I on the negative.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .signal import Signal, hardy_split, inner_product, lp_norm, trapezoid_weights

__all__ = [
    "hardy_littlewood",
    "hilbert_pv",
    "hilbert_via_conj_poisson",
    "sokhotsky_boundary",
    "schur_constants",
]


def _hl_prefix(f: Signal) -> np.ndarray:
    a = np.abs(f.values)
    return np.concatenate([[0.0], np.cumsum(a[:-1] + a[1:])])


def hardy_littlewood(f: Signal, centered: bool = False) -> Signal:
    """Maximal averages of |f| over grid intervals containing each node.

    The uncentered form takes all intervals [x_i, x_j], i <= t <= j; the
    prefix representation makes the average (T_j - T_i) / (2 (j - i)) and
    the hull sweep in the kernel backend finds each node's optimum in
    O(n log n).  ``centered=True`` restricts to symmetric windows
    [x_t - a, x_t + a] (clipped at the grid, length kept at 2a).
    """
    T = _hl_prefix(f)
    if not centered:
        vals = _kernels.hl_maximal(T)
        return Signal(f.grid, vals.astype(np.complex128))
    n = f.grid.n
    out = np.zeros(n)
    for t in range(n):
        m = np.arange(1, max(t, n - 1 - t) + 1)
        lo = np.clip(t - m, 0, n - 1)
        hi = np.clip(t + m, 0, n - 1)
        avg = (T[hi] - T[lo]) / (2.0 * (2 * m))
        out[t] = float(np.max(avg))
    return Signal(f.grid, out.astype(np.complex128))


def hilbert_pv(f: Signal) -> Signal:
    """Principal-value Hilbert transform with symmetric exclusion.

    Trapezoid quadrature of (1/pi) int f(b)/(t-b) db over the grid with the
    |b - t| <= dx/2 neighbourhood excluded (exactly the self term).
    """
    return Signal(f.grid, _kernels.hilbert_pv(f.values, f.grid.dx))


DEFAULT_CP_LEVELS = (0.05, 0.1, 0.2)


def hilbert_via_conj_poisson(f: Signal, a_levels: Sequence[float] = DEFAULT_CP_LEVELS) -> Signal:
    """Hilbert transform as the a -> 0 limit of conjugate-Poisson integrals.

    u_a(t) = (1/pi) int f(x) (t - x) / ((t - x)^2 + a^2) dx, evaluated on the
    three smallest levels and Richardson-extrapolated assuming O(a) error.
    The raw level rows ride in ``meta``.
    """
    a_levels = np.sort(np.asarray(a_levels, dtype=float))[:3]
    if len(a_levels) < 2:
        raise ValueError("need at least two scale levels to extrapolate")
    n = f.grid.n
    rows = np.empty((len(a_levels), n), dtype=np.complex128)
    for l, a in enumerate(a_levels):
        # a^-1 q((x-t)/a) = (1/pi)(t-x)/((t-x)^2+a^2) for the builtin kernel
        rows[l] = _kernels.field_kernel(
            f.values, f.grid.x0, f.grid.dx, np.array([a]),
            f.grid.x0, f.grid.dx, n,
            _kernels.KIND_CONJ_POISSON, expo=-1.0,
        )[0]
    a1, a2 = a_levels[0], a_levels[1]
    primary = (a2 * rows[0] - a1 * rows[1]) / (a2 - a1)
    return Signal(f.grid, primary, meta={"a_levels": tuple(a_levels), "raw": rows})


_PV_SELFTEST_DONE = False


def _pv_sign_selftest() -> None:
    """One-time check of PV int f/(t-x) dt = -pi H f against direct sums."""
    global _PV_SELFTEST_DONE
    if _PV_SELFTEST_DONE:
        return
    from .signal import RealGrid

    grid = RealGrid(-10.0, 0.01, 2001)
    x = grid.points()
    f = Signal(grid, np.exp(-x * x).astype(complex))
    h = hilbert_pv(f).values
    w = trapezoid_weights(grid.n, grid.dx)
    for i in (400, 1000, 1600):
        mask = np.abs(x - x[i]) > 0.5 * grid.dx
        lhs = np.sum((w * f.values)[mask] / (x[mask] - x[i]))
        if abs(lhs + np.pi * h[i]) > 1e-9 * max(abs(lhs), 1.0):
            raise AssertionError("PV sign/constant mapping self-test failed")
    _PV_SELFTEST_DONE = True


def sokhotsky_boundary(f: Signal) -> Signal:
    """Boundary value of the Cauchy integral: f/2 + (1/(2 pi i)) PV int f/(t-x).

    With PV int f/(t-x) dt = -pi H f this is f/2 + (i/2) H f: the identity
    on the positive-frequency component, zero on the negative one.
    """
    _pv_sign_selftest()
    h = hilbert_pv(f)
    return Signal(f.grid, 0.5 * f.values + 0.5j * h.values)


def schur_constants(
    op: Callable[[Signal], Signal],
    basis_plus: Sequence[Signal],
    basis_minus: Sequence[Signal],
    leakage_tol: float = 1e-3,
):
    """Least-squares eigenvalues of a shift-dilation commuting operator on
    the two spectral-half components.

    Basis vectors must lie in their component: the energy on the opposite
    spectral half may not exceed ``leakage_tol`` of the total.  Returns
    (k_plus, k_minus, residuals) with per-vector relative residuals.
    """
    if not basis_plus or not basis_minus:
        raise ValueError("both component bases must be non-empty")

    def check_component(vec: Signal, positive: bool):
        hp, hm = hardy_split(vec)
        wrong = hm if positive else hp
        leak = lp_norm(wrong, 2) / lp_norm(vec, 2)
        if leak > leakage_tol:
            raise ValueError(
                f"basis vector leaks {leak:.2e} onto the opposite component"
            )

    def fit(basis, positive):
        num = 0 + 0j
        den = 0.0
        pairs = []
        for vec in basis:
            check_component(vec, positive)
            image = op(vec)
            num += inner_product(image, vec)
            den += inner_product(vec, vec).real
            pairs.append((image, vec))
        k = num / den
        residuals = [
            lp_norm(Signal(v.grid, im.values - k * v.values), 2) / lp_norm(v, 2)
            for im, v in pairs
        ]
        return complex(k), residuals

    k_plus, res_plus = fit(basis_plus, True)
    k_minus, res_minus = fit(basis_minus, False)
    return k_plus, k_minus, {"plus": res_plus, "minus": res_minus}
