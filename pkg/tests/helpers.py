"""Shared helpers for the test suite."""

import numpy as np

import affharm as ah


def rel_l2(got: np.ndarray, want: np.ndarray) -> float:
    """Relative l2 mismatch over the sample vectors."""
    return float(
        np.sqrt(np.sum(np.abs(got - want) ** 2) / np.sum(np.abs(want) ** 2))
    )


def sup_err(got: np.ndarray, want: np.ndarray) -> float:
    return float(np.max(np.abs(got - want)))


def gaussian_signal(grid: ah.RealGrid, width=1.0, center=0.0) -> ah.Signal:
    x = grid.points()
    return ah.Signal(grid, np.exp(-(((x - center) / width) ** 2)).astype(complex))


def hardy_pole_signal(grid: ah.RealGrid, sign=+1) -> ah.Signal:
    """1/(x + i) for sign=+1 (positive-frequency component), 1/(x - i) else."""
    x = grid.points()
    return ah.Signal(grid, 1.0 / (x + sign * 1j))


def second_difference_interp_error(values: np.ndarray) -> float:
    """Upper estimate of the linear-interpolation error of sampled values:
    max |second difference| / 8."""
    return float(np.max(np.abs(np.diff(values, 2))) / 8.0)
