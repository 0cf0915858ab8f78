"""Test grid verification of the closed forms against the oracle."""
import math

import numpy as np
import pytest

from rt_surfaces.exceptions import ConsistencyError
from rt_surfaces.models import (
    GridSpec,
    RotationParams,
    VerificationReport,
    VerifyTolerances,
)
from rt_surfaces.oracle import fd_forms
from rt_surfaces.sampler import evaluate_grid
from rt_surfaces.verify import (
    adjudicate_a2_sign,
    oracle_deviation,
    verify_generator,
    verify_rotation,
)
from rt_surfaces.weierstrass import evaluate, immersion

from tests.common import pair


def test_reference_pairs_residual(reference_pairs, reference_grid):
    """Test the RT identity holds on every reference pair."""
    for gen in reference_pairs:
        report = verify_generator(gen, reference_grid)
        assert report.evaluated > 0
        assert report.max_residual <= 1e-9
        assert report.max_position_deviation <= 1e-10


def test_branch_point_counted_as_masked(square_g_pair, reference_grid):
    """Test the zero of g' is masked rather than failing the run."""
    report = verify_generator(square_g_pair, reference_grid)
    assert report.masked == 1
    assert report.evaluated == 33 * 33 - 1


def test_reference_pairs_oracle(reference_pairs, oracle_grid):
    """Test the oracle agrees with the closed forms and adopts the plus A2 sign."""
    for gen in reference_pairs:
        report = verify_generator(gen, oracle_grid)
        assert report.oracle_compared > 0
        assert report.max_oracle_deviation <= 1e-5
        assert report.a2_plus_deviation <= 1e-5
        assert report.passed(VerifyTolerances())


def test_small_mean_curvature_oracle(square_g_pair):
    """Test H near zero is judged against the principal curvatures, not |H|."""
    u = (0.1, 0.0)
    jet = evaluate(square_g_pair, complex(*u))
    fd = fd_forms(immersion(square_g_pair), u)
    assert jet.K < 0
    assert abs(jet.H) < 0.2 * math.sqrt(-jet.K)
    assert oracle_deviation(jet, fd) <= 1e-5


def test_oracle_covers_every_node(reference_pairs, oracle_grid):
    """Test the default tolerances compare every evaluated node with the oracle."""
    assert VerifyTolerances().max_condition == math.inf
    for gen in reference_pairs:
        report = verify_generator(gen, oracle_grid)
        assert report.oracle_skipped == 0
        assert report.oracle_compared == report.evaluated


def test_minus_a2_sign_rejected(square_f_pair, oracle_grid):
    """Test the minus A2 sign visibly disagrees with the oracle."""
    report = verify_generator(square_f_pair, oracle_grid)
    assert report.a2_minus_deviation > 1e-2
    assert report.a2_plus_deviation < report.a2_minus_deviation


def test_adjudicate_single_point(identity_pair):
    """Test adjudication at one point where Re xi does not vanish."""
    z = 0.2 + 0.1j
    jet = evaluate(identity_pair, z)
    fd = fd_forms(immersion(identity_pair), (z.real, z.imag))
    plus, minus = adjudicate_a2_sign(jet, fd)
    assert abs(jet.xi.real) > 0
    assert plus <= 1e-5
    assert minus > plus
    assert oracle_deviation(jet, fd) <= 1e-5


@pytest.mark.parametrize("radius", [1.0, 2.5])
def test_sphere(sphere_of_radius, radius):
    """Test f = ln r, g = z gives the sphere of radius r."""
    grid = GridSpec(-1, 1, -1, 1, 17, 17)
    for jet in evaluate_grid(sphere_of_radius(radius), grid):
        assert abs(np.linalg.norm(jet.X) - radius) <= 1e-12 * radius
        assert jet.H == pytest.approx(-1 / radius, rel=1e-10)
        assert jet.K == pytest.approx(1 / radius**2, rel=1e-10)


def test_tight_tolerance_fails(identity_pair, oracle_grid):
    """Test an impossible oracle tolerance fails the report."""
    report = verify_generator(identity_pair, oracle_grid)
    assert not report.passed(VerifyTolerances(oracle=1e-30))


def test_empty_report_fails():
    """Test a report with no evaluated node never passes."""
    assert not VerificationReport(masked=4).passed(VerifyTolerances())


def test_condition_filter(square_g_pair, oracle_grid):
    """Test a condition limit below one keeps every node away from the oracle."""
    report = verify_generator(
        square_g_pair, oracle_grid, tolerances=VerifyTolerances(max_condition=0.5)
    )
    assert report.oracle_compared == 0
    assert report.oracle_skipped == report.evaluated


@pytest.mark.parametrize("a", [-1.0, 0.0, 0.5, 1.0])
@pytest.mark.parametrize("b", [0.0, 0.7])
def test_verify_rotation(a, b):
    """Test the rotation family on a 17 x 17 grid."""
    grid = GridSpec(-2, 2, 0, 2 * math.pi, 17, 17)
    assert verify_rotation(RotationParams(a, b), grid, 1e-9) <= 1e-9


def test_verify_rotation_tolerance():
    """Test a zero tolerance surfaces as a consistency failure."""
    grid = GridSpec(-2, 2, 0, 2 * math.pi, 5, 5)
    with pytest.raises(ConsistencyError):
        verify_rotation(RotationParams(0.5, 0.7), grid, 0.0)
