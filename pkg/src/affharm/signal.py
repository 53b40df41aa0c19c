"""Sampled complex functions on uniform real grids.

Provides the grid/signal value types, Lp norms by composite trapezoid
quadrature, the Fourier transform pair in the convention
fhat(lam) = int exp(-2 pi i lam x) f(x) dx, the Hardy-space splitting by
spectral support, the reflection J: f(x) -> f(-x), off-grid linear
interpolation with zero extension, and CSV I/O.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "RealGrid",
    "Signal",
    "SpectralSignal",
    "lp_norm",
    "fourier",
    "inverse_fourier",
    "hardy_split",
    "reflect",
    "interpolate",
    "trapezoid_weights",
    "inner_product",
    "read_signal_csv",
    "write_signal_csv",
    "read_spectral_csv",
    "write_spectral_csv",
]

_FLOAT_FMT = "%.17g"


@dataclass(frozen=True)
class RealGrid:
    """Uniform grid x0 + k*dx, k = 0..n-1."""

    x0: float
    dx: float
    n: int

    def __post_init__(self):
        if not (self.dx > 0 and math.isfinite(self.dx) and math.isfinite(self.x0)):
            raise ValueError("grid needs finite x0 and dx > 0")
        if self.n < 2:
            raise ValueError("grid needs at least 2 samples")

    def points(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    @property
    def x_end(self) -> float:
        return self.x0 + self.dx * (self.n - 1)

    def is_symmetric(self, tol: float = 1e-9) -> bool:
        """True when the grid is centred on 0 (x0 = -(n-1) dx / 2)."""
        return abs(self.x0 + 0.5 * self.dx * (self.n - 1)) <= tol * self.dx

    def close_to(self, other: "RealGrid", tol: float = 1e-9) -> bool:
        return (
            self.n == other.n
            and abs(self.dx - other.dx) <= tol * self.dx
            and abs(self.x0 - other.x0) <= tol * self.dx
        )


def _freeze(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Signal:
    """Complex samples over a RealGrid.  Immutable after construction.

    ``meta`` carries diagnostic side-channel data (extrapolation reports,
    truncation flags); it never participates in numerics.
    """

    grid: RealGrid
    values: np.ndarray
    meta: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        vals = _freeze(self.values)
        if vals.shape != (self.grid.n,):
            raise ValueError(
                f"value count {vals.shape} does not match grid length {self.grid.n}"
            )
        object.__setattr__(self, "values", vals)

    def with_values(self, values: np.ndarray, meta: Optional[dict] = None) -> "Signal":
        return Signal(self.grid, values, meta if meta is not None else self.meta)


@dataclass(frozen=True)
class SpectralSignal:
    """Complex samples over a uniform frequency grid (variable lambda)."""

    grid: RealGrid
    values: np.ndarray
    meta: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        vals = _freeze(self.values)
        if vals.shape != (self.grid.n,):
            raise ValueError(
                f"value count {vals.shape} does not match grid length {self.grid.n}"
            )
        object.__setattr__(self, "values", vals)


def trapezoid_weights(n: int, dx: float) -> np.ndarray:
    w = np.full(n, dx)
    w[0] = w[-1] = 0.5 * dx
    return w


def lp_norm(f: Signal | SpectralSignal, p: float) -> float:
    """Lp norm by trapezoid quadrature; p = inf gives max |values|."""
    if math.isinf(p):
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise ValueError(f"p must satisfy p >= 1 or p = inf, got {p}")
    w = trapezoid_weights(f.grid.n, f.grid.dx)
    return float(np.sum(w * np.abs(f.values) ** p) ** (1.0 / p))


def inner_product(f: Signal, g: Signal) -> complex:
    """Trapezoid approximation of int f conj(g); grids must agree."""
    if not f.grid.close_to(g.grid):
        raise ValueError("inner product requires a shared grid")
    w = trapezoid_weights(f.grid.n, f.grid.dx)
    return complex(np.sum(w * f.values * np.conj(g.values)))


def _frequency_grid(n: int, dx: float) -> RealGrid:
    dlam = 1.0 / (n * dx)
    m0 = -(n // 2)
    return RealGrid(m0 * dlam, dlam, n)


def fourier(f: Signal) -> SpectralSignal:
    """Discrete approximation of fhat(lam) = int exp(-2 pi i lam x) f(x) dx.

    Includes the continuous normalisation dx and the phase for the grid
    origin, so band-limited well-decaying signals reproduce the continuous
    transform.  The frequency axis is the fft grid in ascending order.
    """
    n, dx, x0 = f.grid.n, f.grid.dx, f.grid.x0
    fgrid = _frequency_grid(n, dx)
    lam = fgrid.points()
    vals = np.fft.fftshift(np.fft.fft(f.values)) * dx * np.exp(-2j * np.pi * lam * x0)
    return SpectralSignal(fgrid, vals, meta={"x0": x0})


def inverse_fourier(F: SpectralSignal, x0: Optional[float] = None) -> Signal:
    """Two-sided inverse of :func:`fourier` at grid resolution.

    The signal-grid origin is taken from ``F.meta['x0']`` when present
    (attached by ``fourier``); otherwise from the ``x0`` argument, default
    symmetric about zero.
    """
    n = F.grid.n
    dx = 1.0 / (n * F.grid.dx)
    if x0 is None:
        x0 = (F.meta or {}).get("x0", -(n // 2) * dx)
    lam = F.grid.points()
    dft = F.values * np.exp(2j * np.pi * lam * x0) / dx
    vals = np.fft.ifft(np.fft.ifftshift(dft))
    return Signal(RealGrid(x0, dx, n), vals)


def hardy_split(f: Signal) -> tuple[Signal, Signal]:
    """Split f = f_H + f_Hp by spectral support: lam > 0 versus lam < 0.

    The lam = 0 bin is shared half/half between the components.  The second
    component is formed as f - f_H so the sum identity is exact.
    """
    F = fourier(f)
    lam = F.grid.points()
    mask = (lam > 0).astype(float)
    mask[lam == 0] = 0.5
    plus = SpectralSignal(F.grid, F.values * mask, meta=F.meta)
    f_plus = inverse_fourier(plus)
    f_minus = Signal(f.grid, f.values - f_plus.values)
    return Signal(f.grid, f_plus.values), f_minus


def reflect(f: Signal) -> Signal:
    """J: f(x) -> f(-x) by grid reversal; requires a symmetric grid."""
    if not f.grid.is_symmetric():
        raise ValueError("reflect requires a grid symmetric about 0")
    return Signal(f.grid, f.values[::-1])


def interpolate(f: Signal, x) -> complex | np.ndarray:
    """Linear interpolation of f at x, zero outside the grid span."""
    pts = f.grid.points()
    xv = np.asarray(x, dtype=float)
    out = np.interp(xv, pts, f.values.real, left=0.0, right=0.0) + 1j * np.interp(
        xv, pts, f.values.imag, left=0.0, right=0.0
    )
    if np.isscalar(x) or xv.ndim == 0:
        return complex(out)
    return out


# ---------------------------------------------------------------------------
# CSV I/O.  Signals: columns x, re [, im].  Spectra: lambda, re [, im].
# Lines starting with '#' hold key=value metadata.
# ---------------------------------------------------------------------------


def _write_columns(path, axis_name: str, pts: np.ndarray, vals: np.ndarray, meta_lines):
    with open(path, "w") as fh:
        for line in meta_lines:
            fh.write(line + "\n")
        fh.write(f"{axis_name},re,im\n")
        for x, v in zip(pts, vals):
            fh.write(
                f"{_FLOAT_FMT % x},{_FLOAT_FMT % v.real},{_FLOAT_FMT % v.imag}\n"
            )


def _read_columns(path):
    meta = {}
    rows = []
    header = None
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for tok in line[1:].replace(",", " ").split():
                    if "=" in tok:
                        k, v = tok.split("=", 1)
                        meta[k.strip()] = float(v)
                continue
            if header is None:
                header = [c.strip() for c in line.split(",")]
                continue
            rows.append([float(c) for c in line.split(",")])
    if header is None or not rows:
        raise ValueError(f"no data rows in {path}")
    arr = np.asarray(rows)
    vals = arr[:, 1] + 1j * (arr[:, 2] if arr.shape[1] > 2 else 0.0)
    return meta, arr[:, 0], vals


def _grid_from_axis(axis: np.ndarray) -> RealGrid:
    n = len(axis)
    dx = (axis[-1] - axis[0]) / (n - 1)
    steps = np.diff(axis)
    if not np.allclose(steps, dx, rtol=1e-9, atol=1e-12 * max(abs(dx), 1.0)):
        raise ValueError("axis is not uniform")
    return RealGrid(float(axis[0]), float(dx), n)


def write_signal_csv(f: Signal, path) -> None:
    _write_columns(path, "x", f.grid.points(), f.values, [])


def read_signal_csv(path) -> Signal:
    _, axis, vals = _read_columns(path)
    return Signal(_grid_from_axis(axis), vals)


def write_spectral_csv(F: SpectralSignal, path) -> None:
    meta = []
    if F.meta and "x0" in F.meta:
        meta.append(f"# x0={_FLOAT_FMT % F.meta['x0']}")
    _write_columns(path, "lambda", F.grid.points(), F.values, meta)


def read_spectral_csv(path) -> SpectralSignal:
    meta, axis, vals = _read_columns(path)
    kept = {"x0": meta["x0"]} if "x0" in meta else None
    return SpectralSignal(_grid_from_axis(axis), vals, meta=kept)
