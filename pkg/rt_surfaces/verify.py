"""Grid verification of closed forms against the finite-difference oracle."""
from __future__ import annotations

import math

from .const import _LOGGER
from .exceptions import DegenerateGrid
from .helpers import relative_deviation
from .models import (
    FdReport,
    GeneratorPair,
    GridSpec,
    RotationParams,
    SurfaceJet,
    Thresholds,
    VerificationReport,
    VerifyTolerances,
)
from .oracle import fd_forms
from .rotation import weierstrass_equivalence, x_ab
from .sampler import MASKED_ERRORS
from .weierstrass import A2Convention, evaluate, immersion, form_coefficients


def oracle_deviation(jet: SurfaceJet, fd: FdReport) -> float:
    """Return the worst relative deviation of I, II, H and K from the oracle.

    The oracle's second form is <X_ij, N>, the negative of the closed form's.
    H and K are measured against the largest principal curvature, the size of
    the terms they are built from.
    """
    kappa = abs(jet.H) + math.sqrt(max(jet.H**2 - jet.K, 0.0))
    return max(
        relative_deviation(jet.I, fd.I),
        relative_deviation(jet.II, [-c for c in fd.II]),
        relative_deviation(jet.H, fd.H, kappa),
        relative_deviation(jet.K, fd.K, kappa**2),
    )


def adjudicate_a2_sign(jet: SurfaceJet, fd: FdReport) -> tuple[float, float]:
    """Return the g2 deviation from the oracle under both A2 sign conventions."""
    reference = -fd.II.g2
    deviations = []
    for convention in (A2Convention.PLUS, A2Convention.MINUS):
        _, second = form_coefficients(jet.fj, jet.gj, jet.h, jet.T, jet.xi, convention)
        deviations.append(relative_deviation(second.g2, reference))
    _LOGGER.debug("A2 sign at %s: plus %s, minus %s", jet.z, *deviations)
    return deviations[0], deviations[1]


def verify_generator(
    gen: GeneratorPair,
    grid: GridSpec,
    thresholds: Thresholds = Thresholds(),
    tolerances: VerifyTolerances = VerifyTolerances(),
) -> VerificationReport:
    """Evaluate every node and record the worst residual and deviations.

    Every evaluated node is compared with the oracle unless the tolerances
    bound the condition number of V, in which case worse nodes are skipped.
    """
    report = VerificationReport()
    surface = immersion(gen, thresholds.gauss_eps)
    for u1 in grid.u1:
        for u2 in grid.u2:
            try:
                jet = evaluate(gen, complex(u1, u2), thresholds)
            except MASKED_ERRORS as err:
                _LOGGER.debug("Skipping (%s, %s): %s", u1, u2, err)
                report.masked += 1
                continue
            report.evaluated += 1
            report.max_residual = max(report.max_residual, jet.normalized_residual)
            report.max_position_deviation = max(
                report.max_position_deviation,
                relative_deviation(jet.X, jet.X_gradient),
            )
            if jet.condition > tolerances.max_condition:
                report.oracle_skipped += 1
                continue
            try:
                fd = fd_forms(surface, (u1, u2), tolerances.step)
            except (DegenerateGrid, *MASKED_ERRORS) as err:
                _LOGGER.debug("Oracle refused (%s, %s): %s", u1, u2, err)
                report.oracle_skipped += 1
                continue
            report.oracle_compared += 1
            report.max_oracle_deviation = max(
                report.max_oracle_deviation, oracle_deviation(jet, fd)
            )
            plus, minus = adjudicate_a2_sign(jet, fd)
            report.a2_plus_deviation = max(report.a2_plus_deviation, plus)
            report.a2_minus_deviation = max(report.a2_minus_deviation, minus)
    _LOGGER.debug("Verification of %s: %s", gen, report)
    return report


def verify_rotation(p: RotationParams, grid: GridSpec, rtol: float) -> float:
    """Return the worst deviation of x_ab from the Weierstrass route.

    Raises ConsistencyError at the first node beyond rtol.
    """
    worst = 0.0
    for u1 in grid.u1:
        for u2 in grid.u2:
            X = weierstrass_equivalence(p, complex(u1, u2), rtol)
            h = math.exp(p.a * u1 + p.b)
            worst = max(worst, relative_deviation(X, x_ab(p, u1, u2), h))
    return worst
