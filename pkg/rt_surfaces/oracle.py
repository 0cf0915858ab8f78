"""Finite-difference geometry of arbitrary parameterized surfaces."""
from __future__ import annotations

from collections.abc import Callable

import numpy as np

from .const import _LOGGER, DEFAULT_FD_STEP, DEGENERATE_TANGENT_NORM
from .exceptions import DegenerateGrid
from .models import FdReport, FirstFundamentalForm, ImmersionFn, SecondFundamentalForm


def fd_gradient(
    fn: Callable[[float, float], object],
    u: tuple[float, float],
    step: float = DEFAULT_FD_STEP,
) -> tuple[np.ndarray, np.ndarray]:
    """Return central-difference partials of a scalar or vector function."""
    u1, u2 = u
    d1 = (np.asarray(fn(u1 + step, u2)) - np.asarray(fn(u1 - step, u2))) / (2 * step)
    d2 = (np.asarray(fn(u1, u2 + step)) - np.asarray(fn(u1, u2 - step))) / (2 * step)
    return d1, d2


def fd_laplacian(
    fn: Callable[[float, float], float],
    u: tuple[float, float],
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Return the 5-point-stencil Laplacian of a real function."""
    u1, u2 = u
    centre = fn(u1, u2)
    total = (
        fn(u1 + step, u2)
        + fn(u1 - step, u2)
        + fn(u1, u2 + step)
        + fn(u1, u2 - step)
        - 4 * centre
    )
    return float(total) / step**2


def fd_forms(
    s: ImmersionFn, u: tuple[float, float], step: float = DEFAULT_FD_STEP
) -> FdReport:
    """Estimate the fundamental forms and curvatures of s at u.

    The normal is X_1 x X_2 normalized, flipped to agree with the reference
    Gauss map when s carries one. The second form is <X_ij, N>, which is the
    negative of <X_i, N_j>.
    """
    if step <= 0:
        raise ValueError(f"Step must be positive, got {step}")
    u1, u2 = u
    X = s.position

    def at(di: int, dj: int) -> np.ndarray:
        return np.asarray(X(u1 + di * step, u2 + dj * step), dtype=float)

    centre = at(0, 0)
    xp0, xm0, x0p, x0m = at(1, 0), at(-1, 0), at(0, 1), at(0, -1)
    X1 = (xp0 - xm0) / (2 * step)
    X2 = (x0p - x0m) / (2 * step)
    X11 = (xp0 - 2 * centre + xm0) / step**2
    X22 = (x0p - 2 * centre + x0m) / step**2
    X12 = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * step**2)

    cross = np.cross(X1, X2)
    norm = float(np.linalg.norm(cross))
    if norm < DEGENERATE_TANGENT_NORM:
        raise DegenerateGrid(f"|X_1 x X_2| = {norm:.3e} at {u}")
    N = cross / norm
    if s.gauss_map is not None and float(N @ np.asarray(s.gauss_map(u1, u2))) < 0:
        N = -N

    E, F, G = float(X1 @ X1), float(X1 @ X2), float(X2 @ X2)
    e2, f2, g2 = float(X11 @ N), float(X12 @ N), float(X22 @ N)
    area = E * G - F * F
    K = (e2 * g2 - f2 * f2) / area
    H = (E * g2 - 2 * F * f2 + G * e2) / (2 * area)
    _LOGGER.debug("Oracle at %s: H=%s K=%s", u, H, K)
    return FdReport(
        I=FirstFundamentalForm(E, F, G),
        II=SecondFundamentalForm(e2, f2, g2),
        H=H,
        K=K,
        N=N,
        step=step,
    )
