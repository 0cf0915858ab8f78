"""Test second-order jet arithmetic."""
import cmath

import pytest

from rt_surfaces.jet import Jet2


def test_product_rule():
    """Test products follow the Leibniz rule up to second order."""
    z = 0.3 + 0.2j
    x = Jet2.variable(z)
    square = x * x
    assert square.v == pytest.approx(z * z)
    assert square.d1 == pytest.approx(2 * z)
    assert square.d2 == pytest.approx(2)


def test_quotient():
    """Test 1/z has derivatives -1/z^2 and 2/z^3."""
    z = 1.5 - 0.5j
    inverse = Jet2.constant(1) / Jet2.variable(z)
    assert inverse.v == pytest.approx(1 / z)
    assert inverse.d1 == pytest.approx(-1 / z**2)
    assert inverse.d2 == pytest.approx(2 / z**3)


def test_compose_chain_rule():
    """Test exp(z^2) through compose."""
    z = 0.4 + 0.1j
    inner = Jet2.variable(z).power(2)
    value = cmath.exp(inner.v)
    outer = inner.compose(value, value, value)
    assert outer.d1 == pytest.approx(2 * z * value)
    assert outer.d2 == pytest.approx((2 + 4 * z * z) * value)


@pytest.mark.parametrize("k", [0, 1, 2, 3, -1, -2])
def test_power(k):
    """Test integer powers against the closed-form derivatives."""
    z = 0.7 + 0.6j
    jet = Jet2.variable(z).power(k)
    assert jet.v == pytest.approx(z**k)
    assert jet.d1 == pytest.approx(k * z ** (k - 1) if k else 0)
    assert jet.d2 == pytest.approx(k * (k - 1) * z ** (k - 2) if k not in (0, 1) else 0)


def test_is_finite():
    """Test non-finite components are detected."""
    assert Jet2(1, 2, 3).is_finite
    assert not Jet2(complex("inf"), 0, 0).is_finite
    assert not Jet2(0, 0, complex("nan")).is_finite
