"""Second-order jets of holomorphic functions."""
from __future__ import annotations

import cmath
from dataclasses import dataclass


@dataclass(frozen=True)
class Jet2:
    """Value and first two complex derivatives of a function at a point."""

    v: complex
    d1: complex = 0j
    d2: complex = 0j

    @classmethod
    def constant(cls, value: complex) -> Jet2:
        """Return the jet of a constant."""
        return cls(complex(value))

    @classmethod
    def variable(cls, z: complex) -> Jet2:
        """Return the jet of the identity function at z."""
        return cls(complex(z), 1 + 0j)

    @property
    def is_finite(self) -> bool:
        """Return True when all three components are finite."""
        return all(cmath.isfinite(c) for c in (self.v, self.d1, self.d2))

    def __add__(self, other: Jet2) -> Jet2:
        """Add two jets."""
        return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)

    def __sub__(self, other: Jet2) -> Jet2:
        """Subtract two jets."""
        return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)

    def __neg__(self) -> Jet2:
        """Negate every component."""
        return Jet2(-self.v, -self.d1, -self.d2)

    def __mul__(self, other: Jet2) -> Jet2:
        """Multiply jets by the Leibniz rule."""
        return Jet2(
            self.v * other.v,
            self.d1 * other.v + self.v * other.d1,
            self.d2 * other.v + 2 * self.d1 * other.d1 + self.v * other.d2,
        )

    def __truediv__(self, other: Jet2) -> Jet2:
        """Divide jets; the caller guarantees other.v != 0."""
        q = self.v / other.v
        q1 = (self.d1 - q * other.d1) / other.v
        q2 = (self.d2 - 2 * q1 * other.d1 - q * other.d2) / other.v
        return Jet2(q, q1, q2)

    def compose(self, phi0: complex, phi1: complex, phi2: complex) -> Jet2:
        """Apply an outer function given its value and derivatives at self.v.

        Chain rule: (phi o u)' = phi'(u) u', (phi o u)'' = phi''(u) u'^2 + phi'(u) u''.
        """
        return Jet2(
            phi0,
            phi1 * self.d1,
            phi2 * self.d1 * self.d1 + phi1 * self.d2,
        )

    def power(self, k: int) -> Jet2:
        """Raise to an integer power; the caller guarantees v != 0 when k < 0."""
        if k == 0:
            return Jet2(1 + 0j)
        u = self.v
        phi1 = k * u ** (k - 1)
        phi2 = k * (k - 1) * u ** (k - 2) if k != 1 else 0j
        return self.compose(u**k, phi1, phi2)
