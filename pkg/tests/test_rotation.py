"""Test the rotation family X_{a,b} and its singular parallels."""
import logging
import math

import numpy as np
import pytest

from rt_surfaces.exceptions import ConsistencyError
from rt_surfaces.models import GridSpec, RotationParams
from rt_surfaces.rotation import (
    area_element,
    candidate_roots,
    factored_area_element,
    profile,
    rotation_generators,
    singular_u1,
    weierstrass_equivalence,
    x_ab,
)
from rt_surfaces.sampler import evaluate_grid

# u1 where e^{2 u1} = 2 + sqrt(5)
GOLDEN_PARALLEL = 0.5 * math.log(2 + math.sqrt(5))


def test_profile_at_origin():
    """Test the meridian profile at u1 = 0."""
    M, N = profile(RotationParams(a=1.0), 0.0)
    assert M == pytest.approx(2)
    assert N == pytest.approx(-2)


def test_x_ab_value():
    """Test X_{1,0}(0, 0) = (1, 0, -1)."""
    assert np.allclose(x_ab(RotationParams(a=1.0), 0.0, 0.0), [1, 0, -1])


def test_x_ab_broadcasts():
    """Test array parameters stack coordinates along the last axis."""
    u1, u2 = np.meshgrid(np.linspace(-1, 1, 4), np.linspace(0, 3, 5), indexing="ij")
    p = RotationParams(a=0.5, b=0.2)
    points = x_ab(p, u1, u2)
    assert points.shape == (4, 5, 3)
    assert np.allclose(points[2, 3], x_ab(p, u1[2, 3], u2[2, 3]))


@pytest.mark.parametrize("b", [0.0, 0.7, -1.2])
def test_sphere_when_a_vanishes(b):
    """Test X_{0,b} lies on the sphere of radius e^b."""
    u1, u2 = np.meshgrid(np.linspace(-3, 3, 61), np.linspace(0, 2 * math.pi, 9))
    radii = np.linalg.norm(x_ab(RotationParams(a=0.0, b=b), u1, u2), axis=-1)
    assert np.max(np.abs(radii - math.exp(b))) <= 1e-12 * math.exp(b)


def test_rotational_symmetry():
    """Test X_{a,b}(u1, u2) is X_{a,b}(u1, 0) rotated about the z axis by u2."""
    p = RotationParams(a=-0.6, b=0.3)
    angle = 1.1
    base = x_ab(p, 0.4, 0.0)
    rotation = np.array(
        [
            [math.cos(angle), -math.sin(angle), 0],
            [math.sin(angle), math.cos(angle), 0],
            [0, 0, 1],
        ]
    )
    np.testing.assert_allclose(
        x_ab(p, 0.4, angle), rotation @ base, rtol=0, atol=1e-12
    )


def test_generators():
    """Test the Weierstrass data f = a z + b, g = exp(z)."""
    gen = rotation_generators(RotationParams(a=2.0, b=0.5))
    assert str(gen) == "f=((2.0*z)+0.5), g=exp(z)"


@pytest.mark.parametrize("a", [-1.0, 0.0, 0.5, 1.0])
@pytest.mark.parametrize("b", [0.0, 0.7])
def test_weierstrass_equivalence(a, b):
    """Test x_ab equals the Weierstrass route on a 17 x 17 grid."""
    p = RotationParams(a=a, b=b)
    for u1 in np.linspace(-2, 2, 17):
        for u2 in np.linspace(0, 2 * math.pi, 17):
            X = weierstrass_equivalence(p, complex(u1, u2))
            scale = max(math.exp(a * u1 + b), 1e-30)
            assert np.max(np.abs(X - x_ab(p, u1, u2))) <= 1e-9 * scale


@pytest.mark.parametrize("a", [-1.0, 0.5, 1.0])
def test_rotation_rt_property(a):
    """Test the rotation generators satisfy the RT identity at every regular node."""
    grid = GridSpec(-2, 2, 0, 2 * math.pi, 17, 17)
    gen = rotation_generators(RotationParams(a))
    jets = [jet for jet in evaluate_grid(gen, grid) if jet is not None]
    assert len(jets) > 0
    for jet in jets:
        assert jet.normalized_residual <= 1e-9


def test_equivalence_detects_mismatch(monkeypatch):
    """Test a wrong closed form is reported as a consistency failure."""
    monkeypatch.setattr(
        "rt_surfaces.rotation.x_ab", lambda p, u1, u2: np.array([0.0, 0.0, 5.0])
    )
    with pytest.raises(ConsistencyError):
        weierstrass_equivalence(RotationParams(a=1.0), 0.2 + 0.1j)


def test_area_element_on_sphere():
    """Test the unit sphere has unit area density at the equator."""
    assert abs(area_element(RotationParams(a=0.0), 0.0)) == pytest.approx(1, rel=1e-7)


def test_area_element_changes_sign():
    """Test the density of X_{1,0} has opposite signs across its singular parallel."""
    p = RotationParams(a=1.0)
    assert area_element(p, GOLDEN_PARALLEL - 0.1) * area_element(
        p, GOLDEN_PARALLEL + 0.1
    ) < 0


def test_factored_area_element():
    """Test the factored density vanishes on the a > 0 candidate."""
    value = factored_area_element(RotationParams(a=1.0), GOLDEN_PARALLEL)
    assert value == pytest.approx(0, abs=1e-12)
    assert factored_area_element(RotationParams(a=0.0), 0.3) == 0


def test_candidate_roots():
    """Test which candidate cases apply for a few values of a."""
    by_label = {c.label: c for c in candidate_roots(1.0)}
    assert by_label["a>0"].applies
    assert by_label["a>0"].u1 == pytest.approx(GOLDEN_PARALLEL)
    assert by_label["a<0"].u1 is None
    assert not by_label["0<a<1"].applies

    by_label = {c.label: c for c in candidate_roots(0.5)}
    assert by_label["0<a<1"].applies
    assert not any(c.applies for c in candidate_roots(0.0))


def test_singular_none_on_sphere():
    """Test the sphere a = 0 has no singular parallel."""
    result = singular_u1(RotationParams(a=0.0), (-3.0, 3.0))
    assert result.roots == []
    assert result.search == (-3.0, 3.0)


def test_singular_a_one(caplog):
    """Test a = 1 has one certified singular parallel on the a > 0 candidate."""
    with caplog.at_level(logging.WARNING):
        result = singular_u1(RotationParams(a=1.0), (-3.0, 3.0))
    assert len(result.roots) == 1
    root = result.roots[0]
    assert root.certified
    assert root.u1 == pytest.approx(GOLDEN_PARALLEL, abs=1e-6)
    assert root.bracket[0] <= root.u1 <= root.bracket[1]
    assert root.nearest_candidate == "a>0"
    assert root.candidate_deviation <= 1e-6
    assert "disagrees" not in caplog.text


def test_singular_a_minus_one():
    """Test a = -1 mirrors the a = 1 parallel."""
    result = singular_u1(RotationParams(a=-1.0), (-3.0, 3.0))
    assert [r.certified for r in result.roots] == [True]
    assert result.roots[0].u1 == pytest.approx(-GOLDEN_PARALLEL, abs=1e-6)
    assert result.roots[0].nearest_candidate == "a<0"


def test_singular_invalid_range():
    """Test an empty search interval is rejected."""
    with pytest.raises(ValueError):
        singular_u1(RotationParams(a=1.0), (1.0, -1.0))
