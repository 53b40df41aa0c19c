"""Deterministic test-signal generators (name + scalar params, no expression
language)."""

from __future__ import annotations

import numpy as np

from .signal import RealGrid, Signal


def _gaussian(x, center=0.0, width=1.0, height=1.0):
    return height * np.exp(-(((x - center) / width) ** 2))


def _mexican_hat(x):
    return (1.0 - x * x) * np.exp(-x * x / 2.0)


def _box(x, lo=-1.0, hi=1.0, height=1.0):
    return height * ((x >= lo) & (x <= hi)).astype(float)


def _cos_window(x, omega=1.0, width=10.0):
    return np.cos(omega * x) * np.exp(-((x / width) ** 2))


def _cauchy_kernel(x, sign=1.0, bare=0.0):
    # (1/(pi i)) / (i + sign*x); bare=1 drops the 1/(pi i) factor.
    base = 1.0 / (1j + sign * x)
    return base if bare else base / (np.pi * 1j)


GENERATORS = {
    "gaussian": _gaussian,
    "mexican_hat": _mexican_hat,
    "box": _box,
    "cos_window": _cos_window,
    "cauchy_kernel": _cauchy_kernel,
}


def generate(name: str, grid: RealGrid, **params) -> Signal:
    try:
        fn = GENERATORS[name]
    except KeyError:
        raise ValueError(
            f"unknown generator {name!r}; known: {sorted(GENERATORS)}"
        ) from None
    return Signal(grid, np.asarray(fn(grid.points(), **params), dtype=complex))


def bandlimited_noise(
    grid: RealGrid,
    lam_lo: float,
    lam_hi: float,
    seed: int = 20240801,
    envelope_width: float | None = None,
    real: bool = True,
) -> Signal:
    """White noise restricted to |lambda| in [lam_lo, lam_hi], unit L2 norm.

    Seeded for reproducibility; optional Gaussian envelope keeps the result
    well inside the grid.
    """
    rng = np.random.default_rng(seed)
    n, dx = grid.n, grid.dx
    lam = np.fft.fftfreq(n, d=dx)
    spec = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    spec[(np.abs(lam) < lam_lo) | (np.abs(lam) > lam_hi)] = 0.0
    vals = np.fft.ifft(spec)
    if real:
        vals = vals.real.astype(complex)
    if envelope_width is not None:
        vals = vals * np.exp(-((grid.points() / envelope_width) ** 2))
    norm = np.sqrt(np.sum(np.abs(vals) ** 2) * dx)
    return Signal(grid, vals / norm)
