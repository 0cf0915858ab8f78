"""Rotation RT-surfaces X_{a,b} and their singular parallels.

The family comes from the Weierstrass data f = a z + b, g = exp(z). A surface
is singular along the parallels where the signed area density of X_{a,b}
changes sign; those are located numerically and set beside the closed-form
candidates for comparison.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.optimize import bisect

from .const import (
    _LOGGER,
    CANDIDATE_MATCH_TOL,
    CERTIFY_OFFSET,
    DEFAULT_EQUIVALENCE_TOL,
    DEFAULT_FD_STEP,
    DEFAULT_ROOT_XTOL,
    DEFAULT_SCAN_SAMPLES,
)
from .expression import Add, Const, Exp, Mul, Var, eval_jet2
from .helpers import check_consistency
from .models import (
    CandidateRoot,
    GeneratorPair,
    ImmersionFn,
    RotationParams,
    SingularRoot,
    SingularSet,
    Vector,
)
from .weierstrass import gauss_map, position_closed


def profile(p: RotationParams, u1):
    """Return the profile functions (M, N) of the meridian."""
    e = np.exp(u1)
    M = (p.a * (np.exp(-u1) - e**3) + 4 * e) / 2
    Ncoord = 1 - e**2 - p.a * (1 + e**2)
    return M, Ncoord


def x_ab(p: RotationParams, u1, u2) -> Vector:
    """Return X_{a,b}(u1, u2); arrays broadcast and stack along the last axis."""
    M, Ncoord = profile(p, u1)
    scale = np.exp(p.a * np.asarray(u1) + p.b) / (1 + np.exp(2 * np.asarray(u1)))
    return np.stack(
        np.broadcast_arrays(
            scale * M * np.cos(u2), scale * M * np.sin(u2), scale * Ncoord
        ),
        axis=-1,
    )


def rotation_generators(p: RotationParams) -> GeneratorPair:
    """Return the Weierstrass data f = a z + b, g = exp(z) of X_{a,b}."""
    return GeneratorPair(
        f=Add(Mul(Const(complex(p.a)), Var()), Const(complex(p.b))),
        g=Exp(Var()),
    )


def rotation_immersion(p: RotationParams) -> ImmersionFn:
    """Return X_{a,b} with the Gauss map of g = exp(z)."""
    return ImmersionFn(
        position=lambda u1, u2: x_ab(p, u1, u2),
        gauss_map=lambda u1, u2: gauss_map(eval_jet2(Exp(Var()), complex(u1, u2))),
    )


def weierstrass_equivalence(
    p: RotationParams, z: complex, rtol: float = DEFAULT_EQUIVALENCE_TOL
) -> Vector:
    """Return the Weierstrass-route position, checked against x_ab."""
    gen = rotation_generators(p)
    z = complex(z)
    fj = eval_jet2(gen.f, z)
    gj = eval_jet2(gen.g, z)
    h = math.exp(fj.v.real)
    X = position_closed(fj, gj, h, 1 + abs(gj.v) ** 2)
    check_consistency("X_ab", X, x_ab(p, z.real, z.imag), rtol, summands=(h,))
    return X


def area_element(p: RotationParams, u1: float, step: float = DEFAULT_FD_STEP) -> float:
    """Return the signed area density <X_1 x X_2, N> at (u1, 0).

    Its square is EG - F^2. The tangents come from central differences of
    x_ab; N is the Gauss map of g = exp(z).
    """
    X1 = (x_ab(p, u1 + step, 0.0) - x_ab(p, u1 - step, 0.0)) / (2 * step)
    X2 = (x_ab(p, u1, step) - x_ab(p, u1, -step)) / (2 * step)
    N = gauss_map(eval_jet2(Exp(Var()), complex(u1, 0.0)))
    return float(np.cross(X1, X2) @ N)


def factored_area_element(p: RotationParams, u1: float) -> float:
    """Return the factored closed form of EG - F^2 for the family."""
    a, b = p.a, p.b
    e2 = math.exp(2 * u1)
    first = a * e2 * (e2 - 4) - a
    second = a * e2 * e2 * (a + 1) + 2 * e2 * (a * a + 2) + a * (a - 1)
    denominator = 16 * (e2 + 1) ** 4 * math.exp(-4 * u1 * (a - 1) - 4 * b)
    return first**2 * second**2 / denominator


def _half_log(numerator: float, denominator: float) -> float | None:
    if denominator == 0 or numerator / denominator <= 0:
        return None
    return 0.5 * math.log(numerator / denominator)


def candidate_roots(a: float) -> list[CandidateRoot]:
    """Return the four closed-form singular-parallel cases evaluated at a."""
    root = math.sqrt(4 + a * a)
    root5 = math.sqrt(4 + 5 * a * a)
    cases = [
        ("a>0", a > 0, 2 + root, a),
        ("a<0", a < 0, 2 - root, a),
        ("0<a<1", 0 < a < 1, -(2 + a * a) + root5, a * a + a),
        ("-1<a<0", -1 < a < 0, -(2 + a * a) - root5, a * a + a),
    ]
    return [
        CandidateRoot(label, applies, _half_log(num, den) if applies else None)
        for label, applies, num, den in cases
    ]


def _compare(
    u1: float, candidates: list[CandidateRoot]
) -> tuple[str | None, float | None]:
    usable = [c for c in candidates if c.u1 is not None]
    if not usable:
        return None, None
    nearest = min(usable, key=lambda c: abs(c.u1 - u1))
    deviation = abs(nearest.u1 - u1)
    if deviation <= CANDIDATE_MATCH_TOL:
        _LOGGER.debug("Root %s matches candidate %s", u1, nearest.label)
    else:
        _LOGGER.warning(
            "Root %s disagrees with candidate %s = %s by %s",
            u1,
            nearest.label,
            nearest.u1,
            deviation,
        )
    return nearest.label, deviation


def singular_u1(
    p: RotationParams,
    search: tuple[float, float],
    samples: int = DEFAULT_SCAN_SAMPLES,
    xtol: float = DEFAULT_ROOT_XTOL,
) -> SingularSet:
    """Find every sign change of the area density on the search interval."""
    lo, hi = search
    if not lo < hi:
        raise ValueError(f"Search interval must satisfy lo < hi, got {search}")

    def density(u1: float) -> float:
        return area_element(p, u1)

    grid = np.linspace(lo, hi, samples)
    values = [density(u) for u in grid]
    candidates = candidate_roots(p.a)
    roots: list[SingularRoot] = []
    for left, right, v_left, v_right in zip(grid, grid[1:], values, values[1:]):
        if v_left == 0:
            u1 = float(left)
        elif v_left * v_right < 0:
            u1 = float(bisect(density, left, right, xtol=xtol))
            _LOGGER.debug("Bisected [%s, %s] to %s", left, right, u1)
        else:
            continue
        below = density(u1 - CERTIFY_OFFSET)
        above = density(u1 + CERTIFY_OFFSET)
        certified = below * above < 0
        if not certified:
            _LOGGER.warning("Root %s has no sign change within %s", u1, CERTIFY_OFFSET)
        label, deviation = _compare(u1, candidates)
        roots.append(
            SingularRoot(
                u1=u1,
                residual=density(u1) ** 2,
                bracket=(float(left), float(right)),
                certified=certified,
                nearest_candidate=label,
                candidate_deviation=deviation,
            )
        )
    if values[-1] == 0:
        roots.append(
            SingularRoot(
                float(hi), 0.0, (float(hi), float(hi)), False, *_compare(hi, candidates)
            )
        )
    for candidate in candidates:
        if candidate.u1 is not None and lo <= candidate.u1 <= hi:
            if not any(abs(r.u1 - candidate.u1) <= CANDIDATE_MATCH_TOL for r in roots):
                _LOGGER.warning(
                    "Candidate %s = %s has no numeric root",
                    candidate.label,
                    candidate.u1,
                )
    return SingularSet(params=p, search=(lo, hi), roots=roots, candidates=candidates)
