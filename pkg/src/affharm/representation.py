"""Group actions on signals and on half-plane fields.

Holds the quasi-regular action on the line, its Fourier-side (co-adjoint)
realisation, the left regular action on functions over the group, the
derived actions of the dilation and translation generators, and the
half-plane field container with its CSV format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.ndimage import map_coordinates

from .group import GroupElement
from .signal import RealGrid, Signal, SpectralSignal, interpolate

__all__ = [
    "HalfPlaneField",
    "log_axis",
    "quasi_regular",
    "co_adjoint",
    "left_regular",
    "derived_rep",
    "check_p",
    "conjugate_exponent",
    "read_field_csv",
    "write_field_csv",
]

_FLOAT_FMT = "%.17g"


def check_p(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"representation index p must satisfy p >= 1, got {p}")
    return p


def conjugate_exponent(p: float) -> float:
    """q with 1/p + 1/q = 1; q = inf for p = 1 and vice versa."""
    p = check_p(p)
    if math.isinf(p):
        return 1.0
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


def log_axis(a_min: float, a_max: float, count: int) -> np.ndarray:
    """Log-spaced scale axis, ascending."""
    if not (0 < a_min < a_max) or count < 2:
        raise ValueError("need 0 < a_min < a_max and count >= 2")
    return np.exp(np.linspace(math.log(a_min), math.log(a_max), count))


@dataclass(frozen=True)
class HalfPlaneField:
    """Complex samples u(a, b) over a log-spaced scale axis and a uniform
    translation grid.  The row values[k] holds the scale a_axis[k]."""

    a_axis: np.ndarray
    b_grid: RealGrid
    values: np.ndarray
    meta: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        a = np.array(self.a_axis, dtype=float, copy=True)
        if a.ndim != 1 or len(a) < 2 or not np.all(a > 0):
            raise ValueError("a_axis must hold at least two positive scales")
        if not np.all(np.diff(a) > 0):
            raise ValueError("a_axis must be strictly increasing")
        ratios = a[1:] / a[:-1]
        if np.max(ratios) - np.min(ratios) > 1e-12 * np.mean(ratios):
            raise ValueError("a_axis must be log-spaced (constant ratio)")
        vals = np.array(self.values, dtype=np.complex128, copy=True)
        if vals.shape != (len(a), self.b_grid.n):
            raise ValueError(
                f"field shape {vals.shape} does not match axes "
                f"({len(a)}, {self.b_grid.n})"
            )
        a.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "a_axis", a)
        object.__setattr__(self, "values", vals)

    @property
    def log_step(self) -> float:
        return math.log(self.a_axis[1] / self.a_axis[0])

    def log_points(self) -> np.ndarray:
        return np.log(self.a_axis)

    def sample(self, a_new: np.ndarray, b_new: np.ndarray) -> np.ndarray:
        """Bilinear interpolation in (log a, b), zero outside the domain.

        a_new and b_new must broadcast to the output shape.
        """
        la0 = math.log(self.a_axis[0])
        dl = self.log_step
        with np.errstate(divide="ignore", invalid="ignore"):
            ia = (np.log(a_new) - la0) / dl
        ib = (b_new - self.b_grid.x0) / self.b_grid.dx
        ia, ib = np.broadcast_arrays(ia, ib)
        coords = np.vstack([ia.ravel(), ib.ravel()])
        re = map_coordinates(self.values.real, coords, order=1, cval=0.0)
        im = map_coordinates(self.values.imag, coords, order=1, cval=0.0)
        return (re + 1j * im).reshape(ia.shape)

    def with_values(self, values: np.ndarray, meta: Optional[dict] = None):
        return HalfPlaneField(
            self.a_axis, self.b_grid, values, meta if meta is not None else self.meta
        )


def quasi_regular(p: float, g: GroupElement, f: Signal) -> Signal:
    """Isometric action on the line: a**(-1/p) f((x-b)/a), sampled back on
    f's grid by linear interpolation (zero outside); the prefactor is 1 at
    p = inf."""
    p = check_p(p)
    pref = g.a ** (-1.0 / p)
    x = f.grid.points()
    vals = pref * interpolate(f, (x - g.b) / g.a)
    return Signal(f.grid, vals)


def co_adjoint(p: float, g: GroupElement, F: SpectralSignal) -> SpectralSignal:
    """Fourier-side action a**(1/p) exp(-2 pi i b lam) F(a lam)."""
    p = check_p(p)
    lam = F.grid.points()
    scaled = np.interp(g.a * lam, lam, F.values.real, left=0.0, right=0.0) + 1j * (
        np.interp(g.a * lam, lam, F.values.imag, left=0.0, right=0.0)
    )
    vals = (g.a ** (1.0 / p)) * np.exp(-2j * np.pi * g.b * lam) * scaled
    return SpectralSignal(F.grid, vals, meta=F.meta)


def left_regular(g: GroupElement, u: HalfPlaneField) -> HalfPlaneField:
    """Left shift on the group: u(a'/a, (b'-b)/a)."""
    a_new = u.a_axis[:, None] / g.a
    b_new = (u.b_grid.points()[None, :] - g.b) / g.a
    return u.with_values(u.sample(a_new, b_new), meta=None)


def derived_rep(which: str, f: Signal) -> Signal:
    """Derived action of the generators: A -> -f - x f', N -> -f'.

    f' uses centred differences with one-sided stencils at the ends, so the
    caller is responsible for smoothness.
    """
    df = np.gradient(f.values, f.grid.dx)
    if which == "N":
        return Signal(f.grid, -df)
    if which == "A":
        return Signal(f.grid, -f.values - f.grid.points() * df)
    raise ValueError(f"which must be 'A' or 'N', got {which!r}")


# --- CSV: columns a,b,re,im with metadata lines reconstructing both axes ---


def write_field_csv(u: HalfPlaneField, path) -> None:
    a, b = u.a_axis, u.b_grid.points()
    ratio = a[1] / a[0]
    with open(path, "w") as fh:
        fh.write(
            f"# a_min={_FLOAT_FMT % a[0]} ratio={_FLOAT_FMT % ratio} "
            f"count={len(a)}\n"
        )
        fh.write(
            f"# b0={_FLOAT_FMT % u.b_grid.x0} db={_FLOAT_FMT % u.b_grid.dx} "
            f"nb={u.b_grid.n}\n"
        )
        fh.write("a,b,re,im\n")
        for k in range(len(a)):
            for j in range(u.b_grid.n):
                v = u.values[k, j]
                fh.write(
                    f"{_FLOAT_FMT % a[k]},{_FLOAT_FMT % b[j]},"
                    f"{_FLOAT_FMT % v.real},{_FLOAT_FMT % v.imag}\n"
                )


def read_field_csv(path) -> HalfPlaneField:
    meta = {}
    rows = []
    header = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].split():
                    if "=" in tok:
                        k, v = tok.split("=", 1)
                        meta[k] = float(v)
                continue
            if header is None:
                header = line
                continue
            rows.append([float(c) for c in line.split(",")])
    required = {"a_min", "ratio", "count", "b0", "db", "nb"}
    if not required <= meta.keys():
        raise ValueError(f"field csv missing metadata {sorted(required - meta.keys())}")
    count, nb = int(meta["count"]), int(meta["nb"])
    a_axis = meta["a_min"] * meta["ratio"] ** np.arange(count)
    b_grid = RealGrid(meta["b0"], meta["db"], nb)
    arr = np.asarray(rows)
    if arr.shape[0] != count * nb:
        raise ValueError("field csv row count does not match axes metadata")
    vals = (arr[:, 2] + 1j * arr[:, 3]).reshape(count, nb)
    return HalfPlaneField(a_axis, b_grid, vals)
