"""Covariant transforms: signals to half-plane fields.

The general map sends f to the field g -> F(pi_p(g^-1) f) over the group.
For a kernel functional the change of variables turns each field value into
the quadrature

    u(a, b) = a**(1/p - 1) * int f(x) k((x - b)/a) dx

which is what the production path evaluates (by per-scale FFT correlation
when the b axis coincides with f's grid).  A literal composition of the
group action and the functional is kept alongside as a reference path; the
two coincide up to round-off whenever (a, b) maps kernel nodes onto signal
nodes, and to interpolation accuracy otherwise.

Classical specialisations: the Cauchy and Poisson integrals of the upper
half-plane, the L2 wavelet transform, the interval averaging transform and
its sup-over-a-family linearisation.
"""

from __future__ import annotations

import math
import warnings
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .fiducial import (
    KERNEL_FUNCTIONAL,
    MODULUS_AVERAGE,
    POINT_EVALUATION,
    Fiducial,
    evaluate,
)
from .group import GroupElement, inverse
from .representation import HalfPlaneField, check_p, log_axis, quasi_regular
from .signal import RealGrid, Signal, interpolate

__all__ = [
    "default_scale_axis",
    "covariant",
    "covariant_definitional",
    "wavelet_transform",
    "cauchy_integral",
    "poisson_integral",
    "average_transform",
    "family_sup_transform",
]

DEFAULT_A_MIN = 2.0 ** -6
DEFAULT_A_MAX = 2.0 ** 6
DEFAULT_A_COUNT = 64


def default_scale_axis() -> np.ndarray:
    return log_axis(DEFAULT_A_MIN, DEFAULT_A_MAX, DEFAULT_A_COUNT)


def _axes(f: Signal, a_axis, b_grid) -> tuple[np.ndarray, RealGrid]:
    a = default_scale_axis() if a_axis is None else np.asarray(a_axis, dtype=float)
    b = f.grid if b_grid is None else b_grid
    return a, b


def _truncation_meta(f: Signal, fid: Fiducial, a_axis, b_grid) -> dict:
    """Flag field points whose rescaled kernel support leaves f's grid."""
    if fid.kernel is None:
        return {}
    a_max = float(np.max(a_axis))
    lo = b_grid.x0 + a_max * fid.kernel.grid.x0
    hi = b_grid.x_end + a_max * fid.kernel.grid.x_end
    if lo < f.grid.x0 - 0.5 * f.grid.dx or hi > f.grid.x_end + 0.5 * f.grid.dx:
        warnings.warn(
            "rescaled kernel support leaves the signal grid; zero extension "
            "applies and field values near the edges are truncated",
            stacklevel=3,
        )
        return {"truncated": True}
    return {"truncated": False}


def covariant(
    fid: Fiducial,
    p: float,
    f: Signal,
    a_axis=None,
    b_grid: Optional[RealGrid] = None,
) -> HalfPlaneField:
    """Covariant transform of f under the fiducial operator.

    p indexes the quasi-regular action used in the definition; p = inf drops
    the normalisation prefactor (and gives the classical Poisson/averaging
    conventions).
    """
    p = check_p(p)
    a_axis, b_grid = _axes(f, a_axis, b_grid)
    expo = 1.0 / p - 1.0

    if fid.kind == KERNEL_FUNCTIONAL:
        meta = _truncation_meta(f, fid, a_axis, b_grid)
        if fid.kernel_kind != _kernels.KIND_SAMPLED:
            vals = _kernels.field_kernel(
                f.values, f.grid.x0, f.grid.dx, a_axis,
                b_grid.x0, b_grid.dx, b_grid.n,
                fid.kernel_kind, expo=expo,
            )
        else:
            k = fid.kernel
            vals = _kernels.field_kernel(
                f.values, f.grid.x0, f.grid.dx, a_axis,
                b_grid.x0, b_grid.dx, b_grid.n,
                _kernels.KIND_SAMPLED,
                ksamples=k.values, kx0=k.grid.x0, kdx=k.grid.dx,
                expo=expo,
            )
        return HalfPlaneField(a_axis, b_grid, vals, meta=meta or None)

    if fid.kind == POINT_EVALUATION:
        # F(pi_p(g^-1) f) = a**(1/p) f(b)
        fb = interpolate(f, b_grid.points())
        vals = (a_axis[:, None] ** (1.0 / p)) * fb[None, :]
        return HalfPlaneField(a_axis, b_grid, vals)

    if fid.kind == MODULUS_AVERAGE:
        return average_transform(p, f, a_axis, b_grid)

    raise ValueError(f"unsupported fiducial kind {fid.kind!r}")


def covariant_definitional(
    fid: Fiducial, p: float, f: Signal, g: GroupElement
) -> complex:
    """Reference path: literally F(pi_p(g^-1) f).  One field point."""
    return evaluate(fid, quasi_regular(p, inverse(g), f))


def wavelet_transform(
    v0: Signal,
    f: Signal,
    a_axis=None,
    b_grid: Optional[RealGrid] = None,
) -> HalfPlaneField:
    """L2 wavelet transform field(g) = <f, pi_2(g) v0>.

    Equal to the covariant transform at p = 2 with kernel conj(v0); the
    mother wavelet is resampled onto f's grid first.
    """
    if not v0.grid.close_to(f.grid):
        v0 = Signal(f.grid, interpolate(v0, f.grid.points()))
    from .fiducial import from_kernel_signal

    fid = from_kernel_signal(Signal(v0.grid, np.conj(v0.values)), "conj-wavelet")
    return covariant(fid, 2.0, f, a_axis, b_grid)


def wavelet_transform_inner(v0: Signal, f: Signal, g: GroupElement) -> complex:
    """Literal inner-product form <f, pi_2(g) v0> for one group element."""
    if not v0.grid.close_to(f.grid):
        v0 = Signal(f.grid, interpolate(v0, f.grid.points()))
    from .signal import inner_product

    return inner_product(f, quasi_regular(2.0, g, v0))


def cauchy_integral(
    f: Signal, a_axis=None, b_grid: Optional[RealGrid] = None
) -> HalfPlaneField:
    """[Cf](b + i a) = (1/(2 pi i)) int f(t) / (t - (b + i a)) dt."""
    a_axis, b_grid = _axes(f, a_axis, b_grid)
    vals = _kernels.field_kernel(
        f.values, f.grid.x0, f.grid.dx, a_axis,
        b_grid.x0, b_grid.dx, b_grid.n,
        _kernels.KIND_CAUCHY_INTEGRAL, expo=-1.0,
    )
    return HalfPlaneField(a_axis, b_grid, vals)


def poisson_integral(
    f: Signal, a_axis=None, b_grid: Optional[RealGrid] = None
) -> HalfPlaneField:
    """[Pf](b, a) = (1/pi) int a f(t) / ((t-b)^2 + a^2) dt."""
    a_axis, b_grid = _axes(f, a_axis, b_grid)
    vals = _kernels.field_kernel(
        f.values, f.grid.x0, f.grid.dx, a_axis,
        b_grid.x0, b_grid.dx, b_grid.n,
        _kernels.KIND_POISSON, expo=-1.0,
    )
    return HalfPlaneField(a_axis, b_grid, vals)


def _abs_prefix(f: Signal) -> np.ndarray:
    a = np.abs(f.values)
    return np.concatenate([[0.0], np.cumsum(a[:-1] + a[1:])])


def average_transform(
    p: float, f: Signal, a_axis=None, b_grid: Optional[RealGrid] = None
) -> HalfPlaneField:
    """Interval averages of |f|: a**(-1/q) / 2 * int_{b-a}^{b+a} |f|.

    1/p + 1/q = 1, so the exponent equals the kernel-path 1/p - 1; p = inf
    yields the plain averaging operator with the 1/(2a) normalisation.
    Evaluated from prefix sums of the trapezoid integral of |f| (the prefix
    is linearly interpolated between nodes and clamped outside the grid),
    which makes dyadic window splits exact.
    """
    p = check_p(p)
    a_axis, b_grid = _axes(f, a_axis, b_grid)
    expo = 1.0 / p - 1.0
    # prefix is in units of dx/2
    T = _abs_prefix(f)
    x = f.grid.points()
    b = b_grid.points()
    dx = f.grid.dx

    def S(pos):
        return np.interp(pos, x, T, left=0.0, right=float(T[-1]))

    vals = np.empty((len(a_axis), b_grid.n), dtype=np.complex128)
    for l, a in enumerate(a_axis):
        vals[l] = (a ** expo) * 0.25 * dx * (S(b + a) - S(b - a))
    return HalfPlaneField(a_axis, b_grid, vals)


def family_sup_transform(
    family: Sequence[Fiducial],
    p: float,
    f: Signal,
    a_axis=None,
    b_grid: Optional[RealGrid] = None,
) -> HalfPlaneField:
    """Pointwise sup of |covariant transform| over a family of linear
    fiducials (the linearisation of the modulus average)."""
    if not family:
        raise ValueError("family must not be empty")
    for fid in family:
        if fid.kind not in (KERNEL_FUNCTIONAL, POINT_EVALUATION):
            raise ValueError("family_sup_transform requires linear fiducials")
    a_axis, b_grid = _axes(f, a_axis, b_grid)
    out = None
    for fid in family:
        u = covariant(fid, p, f, a_axis, b_grid)
        mag = np.abs(u.values)
        out = mag if out is None else np.maximum(out, mag)
    return HalfPlaneField(a_axis, b_grid, out.astype(np.complex128))
