"""Transported norms and measure diagnostics on the half-plane.

The Hardy norm on the group, norms pulled back through contravariant
transforms, the orthogonality constant of two analysing wavelets, the
conjugate-Poisson isometry, and Carleson box counting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .contravariant import contravariant
from .covariant import covariant, wavelet_transform
from .fiducial import admissibility, builtin
from .representation import HalfPlaneField, check_p
from .signal import RealGrid, Signal, inner_product, lp_norm, trapezoid_weights

__all__ = [
    "hardy_norm_aff",
    "transported_norm_contra",
    "orthogonality_constant",
    "conj_poisson_isometry",
    "HalfPlaneMeasure",
    "carleson_transform",
]


def hardy_norm_aff(u: HalfPlaneField, p: float) -> float:
    """sup over a of (int |u(a, b)|^p db / a)^(1/p); sup |u| at p = inf."""
    p = check_p(p)
    if math.isinf(p):
        return float(np.max(np.abs(u.values)))
    w = trapezoid_weights(u.b_grid.n, u.b_grid.dx)
    per_level = np.sum(w[None, :] * np.abs(u.values) ** p, axis=1) / u.a_axis
    return float(np.max(per_level) ** (1.0 / p))


def transported_norm_contra(
    pairing: str, vector, p: float, u: HalfPlaneField
) -> float:
    """Norm of the contravariant image: ||M_vector u||_p."""
    return lp_norm(contravariant(pairing, vector, p, u), p)


def haar_field_inner(u1: HalfPlaneField, u2: HalfPlaneField) -> complex:
    """int u1 conj(u2) a^-2 da db by log-trapezoid quadrature."""
    if len(u1.a_axis) != len(u2.a_axis) or u1.b_grid.n != u2.b_grid.n:
        raise ValueError("fields must share axes")
    dl = math.log(u1.a_axis[1] / u1.a_axis[0])
    wa = np.full(len(u1.a_axis), dl)
    wa[0] = wa[-1] = 0.5 * dl
    wa = wa / u1.a_axis  # a^-2 da = a^-1 d(log a)
    wb = trapezoid_weights(u1.b_grid.n, u1.b_grid.dx)
    return complex(np.sum(wa[:, None] * wb[None, :] * u1.values * np.conj(u2.values)))


def orthogonality_constant(
    f: Signal,
    fprime: Signal,
    pairs: Sequence[tuple[Signal, Signal]],
    a_axis=None,
    b_grid: Optional[RealGrid] = None,
):
    """Estimate c with int <v, pi(g) f> conj(<v', pi(g) f'>) dg = c <v, v'>.

    Runs over the supplied (v, v') test pairs; pairs with |<v, v'>| below
    1e-8 of the norm product are flagged and skipped.  Returns
    (c, spread, per_pair) where spread is the maximal relative deviation of
    the kept estimates from their mean and per_pair records every estimate.
    """
    rep_f = admissibility(f)
    rep_fp = admissibility(fprime)
    per_pair = []
    kept = []
    for v, vp in pairs:
        denom = inner_product(v, vp)
        scale = lp_norm(v, 2) * lp_norm(vp, 2)
        if abs(denom) < 1e-8 * scale:
            per_pair.append({"c": None, "skipped": True, "inner": denom})
            continue
        w1 = wavelet_transform(f, v, a_axis, b_grid)
        w2 = wavelet_transform(fprime, vp, a_axis, b_grid)
        c = haar_field_inner(w1, w2) / denom
        per_pair.append({"c": c, "skipped": False, "inner": denom})
        kept.append(c)
    if not kept:
        raise ValueError("all test pairs were skipped (near-orthogonal inputs)")
    mean = sum(kept) / len(kept)
    spread = max(abs(c - mean) for c in kept) / abs(mean) if abs(mean) else math.inf
    info = {
        "admissibility_f": rep_f,
        "admissibility_fprime": rep_fp,
    }
    return complex(mean), float(spread), per_pair, info


def conj_poisson_isometry(
    f: Signal, a_axis=None, b_grid: Optional[RealGrid] = None
):
    """Hardy norm on the group of the conjugate-Poisson transform vs ||f||_2.

    Returns (lhs, rhs, ratio); ratio is reported as 1 when both sides
    vanish.
    """
    u = covariant(builtin("conj_poisson"), 2.0, f, a_axis, b_grid)
    lhs = hardy_norm_aff(u, 2.0)
    rhs = lp_norm(f, 2)
    ratio = 1.0 if lhs == rhs == 0.0 else lhs / rhs
    return lhs, rhs, ratio


@dataclass(frozen=True)
class HalfPlaneMeasure:
    """A measure on the half-plane: nonnegative density w.r.t. da db plus
    optional point masses (weight, a, b)."""

    density: HalfPlaneField
    point_masses: tuple = ()

    def __post_init__(self):
        if np.any(self.density.values.real < -1e-12) or np.any(
            np.abs(self.density.values.imag) > 1e-12
        ):
            raise ValueError("measure density must be nonnegative real")
        for wt, a, b in self.point_masses:
            if not (wt > 0 and a > 0):
                raise ValueError("point masses need positive weight and scale")


def carleson_transform(
    mu: HalfPlaneMeasure,
    a_axis=None,
    b_grid: Optional[RealGrid] = None,
    bound: Optional[float] = None,
):
    """Box counts field(a, b) = mu(Q_{a,b}) / a over Q_{a,b} = (b, b+a) x (0, a).

    The density integrates by the log-trapezoid rule in scale (clipped at
    the box top) and prefix sums along b.  Boundedness of the counts is not
    decidable from a finite grid, so ``is_carleson`` is judged only against
    a caller-supplied bound and the grid sup plus its arg-sup are always
    reported.  Returns (field, sup, argsup, is_carleson).
    """
    dens = mu.density
    out_a = dens.a_axis if a_axis is None else np.asarray(a_axis, dtype=float)
    out_b = dens.b_grid if b_grid is None else b_grid

    # prefix along b of the density rows (trapezoid integral up to each node)
    rows = dens.values.real
    pre = np.concatenate(
        [np.zeros((rows.shape[0], 1)), np.cumsum(rows[:, :-1] + rows[:, 1:], axis=1)],
        axis=1,
    ) * (0.5 * dens.b_grid.dx)
    bpts = dens.b_grid.points()
    bout = out_b.points()

    la = np.log(dens.a_axis)
    dl = dens.log_step
    vals = np.zeros((len(out_a), out_b.n))
    for i, a in enumerate(out_a):
        # clipped log-trapezoid weights for int_0^a (.) da' = int (.) a' dlog,
        # treating each level as a cell [log a_l - dl/2, log a_l + dl/2]
        wts = np.full(len(la), dl)
        wts[0] = wts[-1] = 0.5 * dl
        frac = np.clip((math.log(a) - (la - 0.5 * dl)) / dl, 0.0, 1.0)
        wts = wts * frac * dens.a_axis
        acc = np.zeros(out_b.n)
        for level in np.nonzero(wts)[0]:
            s_lo = np.interp(bout, bpts, pre[level], left=0.0, right=pre[level, -1])
            s_hi = np.interp(bout + a, bpts, pre[level], left=0.0, right=pre[level, -1])
            acc += wts[level] * (s_hi - s_lo)
        for wt, pa, pb in mu.point_masses:
            if 0 < pa < a:
                acc += wt * ((bout < pb) & (pb < bout + a))
        vals[i] = acc / a
    field = HalfPlaneField(out_a, out_b, vals.astype(np.complex128))
    sup = float(np.max(vals))
    k = np.unravel_index(int(np.argmax(vals)), vals.shape)
    argsup = (float(out_a[k[0]]), float(out_b.points()[k[1]]))
    is_carleson = None if bound is None else bool(sup <= bound)
    return field, sup, argsup, is_carleson
