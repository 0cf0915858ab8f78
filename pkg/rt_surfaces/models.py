"""The RT-surface data models."""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .const import (
    DEFAULT_DET_EPS,
    DEFAULT_DET_RTOL,
    DEFAULT_EQUIVALENCE_TOL,
    DEFAULT_FD_STEP,
    DEFAULT_FORMS_RTOL,
    DEFAULT_GAUSS_EPS,
    DEFAULT_MAX_CONDITION,
    DEFAULT_ORACLE_TOL,
    DEFAULT_POSITION_RTOL,
    DEFAULT_REGULARITY_RTOL,
    DEFAULT_RESIDUAL_TOL,
)
from .exceptions import InvalidGrid
from .expression import ExprNode, print_expr
from .jet import Jet2

Vector = np.ndarray
PositionMap = Callable[[float, float], Vector]


class Christoffel(NamedTuple):
    """Christoffel symbols of the conformal metric L."""

    g1_11: float
    g2_22: float
    g2_11: float
    g1_22: float
    g1_12: float
    g2_12: float

    def symbol(self, k: int, i: int, j: int) -> float:
        """Return the symbol with upper index k and lower indices i, j (1-based)."""
        i, j = sorted((i, j))
        table = {
            (1, 1, 1): self.g1_11,
            (2, 2, 2): self.g2_22,
            (2, 1, 1): self.g2_11,
            (1, 2, 2): self.g1_22,
            (1, 1, 2): self.g1_12,
            (2, 1, 2): self.g2_12,
        }
        return table[(k, i, j)]


class FirstFundamentalForm(NamedTuple):
    """Coefficients E, F, G of the first fundamental form."""

    E: float
    F: float
    G: float


class SecondFundamentalForm(NamedTuple):
    """Coefficients of the second fundamental form."""

    e2: float
    f2: float
    g2: float


class SupportDerivatives(NamedTuple):
    """Partial derivatives of the support function h up to order two."""

    h1: float
    h2: float
    h11: float
    h12: float
    h22: float


@dataclass(frozen=True)
class GeneratorPair:
    """Weierstrass data (f, g) of an RT-surface."""

    f: ExprNode
    g: ExprNode

    def __str__(self) -> str:
        """Return both generators as f=..., g=... text."""
        return f"f={print_expr(self.f)}, g={print_expr(self.g)}"


@dataclass(frozen=True)
class Thresholds:
    """Degeneracy thresholds and internal consistency tolerances."""

    gauss_eps: float = DEFAULT_GAUSS_EPS
    det_eps: float = DEFAULT_DET_EPS
    det_rtol: float = DEFAULT_DET_RTOL
    position_rtol: float = DEFAULT_POSITION_RTOL
    forms_rtol: float = DEFAULT_FORMS_RTOL
    regularity_rtol: float = DEFAULT_REGULARITY_RTOL


@dataclass(frozen=True)
class VerifyTolerances:
    """Pass/fail limits of a grid verification."""

    residual: float = DEFAULT_RESIDUAL_TOL
    oracle: float = DEFAULT_ORACLE_TOL
    position: float = DEFAULT_POSITION_RTOL
    equivalence: float = DEFAULT_EQUIVALENCE_TOL
    step: float = DEFAULT_FD_STEP
    max_condition: float = DEFAULT_MAX_CONDITION


@dataclass(frozen=True)
class SurfaceJet:
    """Every closed-form geometric quantity at one parameter point."""

    z: complex
    fj: Jet2
    gj: Jet2
    h: float
    T: float
    xi: complex
    N: Vector
    L11: float
    gamma: Christoffel
    V: Vector
    detV: float
    X: Vector
    X_gradient: Vector
    I: FirstFundamentalForm
    II: SecondFundamentalForm
    H: float
    K: float
    Psi: float
    Lambda: float
    residual: float
    residual_scale: float
    regularity: float

    @property
    def W(self) -> Vector:
        """Return the Weingarten matrix, the inverse of V."""
        return np.linalg.inv(self.V)

    @property
    def normalized_residual(self) -> float:
        """Return the RT residual relative to the size of its two terms."""
        return abs(self.residual) / max(self.residual_scale, 1e-30)

    @property
    def condition(self) -> float:
        """Return the 2-norm condition number of V."""
        return float(np.linalg.cond(self.V))

    def middle_sphere(self) -> tuple[Vector, float]:
        """Return centre and radius of the middle sphere."""
        radius = self.H / self.K
        return self.X + radius * self.N, radius

    def shifted_middle_sphere(self) -> tuple[Vector, float]:
        """Return centre and radius of the sphere through the origin on RT-surfaces."""
        radius = self.H / self.K + self.Psi / 2
        return self.X + radius * self.N, radius


@dataclass(frozen=True)
class RotationParams:
    """Constants (a, b) of the rotation family X_{a,b}."""

    a: float
    b: float = 0.0


@dataclass(frozen=True)
class CandidateRoot:
    """One entry of the closed-form four-case table of singular parallels."""

    label: str
    applies: bool
    u1: float | None


@dataclass(frozen=True)
class SingularRoot:
    """A certified zero of the signed area element."""

    u1: float
    residual: float
    bracket: tuple[float, float]
    certified: bool
    nearest_candidate: str | None = None
    candidate_deviation: float | None = None


@dataclass(frozen=True)
class SingularSet:
    """Roots of the area element on a search interval."""

    params: RotationParams
    search: tuple[float, float]
    roots: list[SingularRoot] = field(default_factory=list)
    candidates: list[CandidateRoot] = field(default_factory=list)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular parameter grid."""

    u1_min: float
    u1_max: float
    u2_min: float
    u2_max: float
    n1: int
    n2: int

    def __post_init__(self) -> None:
        """Reject empty bounds and axes with fewer than two nodes."""
        if not (self.u1_min < self.u1_max and self.u2_min < self.u2_max):
            raise InvalidGrid(f"Grid bounds must satisfy min < max: {self}")
        if self.n1 < 2 or self.n2 < 2:
            raise InvalidGrid(f"Grid needs at least 2 nodes per axis: {self}")

    @property
    def u1(self) -> Vector:
        """Return the u1 node coordinates."""
        return np.linspace(self.u1_min, self.u1_max, self.n1)

    @property
    def u2(self) -> Vector:
        """Return the u2 node coordinates."""
        return np.linspace(self.u2_min, self.u2_max, self.n2)

    def index(self, i: int, j: int) -> int:
        """Return the flat node index of (i, j); u2 varies fastest."""
        return i * self.n2 + j


@dataclass
class MeshBuffer:
    """Sampled grid of positions and normals with a validity mask."""

    grid: GridSpec
    vertices: Vector
    normals: Vector
    valid_mask: Vector
    det_v: Vector
    faces: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def valid_count(self) -> int:
        """Return the number of valid nodes."""
        return int(np.count_nonzero(self.valid_mask))


@dataclass(frozen=True)
class ReportRow:
    """Per-node values written to the CSV report."""

    u1: float
    u2: float
    x: float
    y: float
    z: float
    H: float
    K: float
    psi: float
    lambda_: float
    detV: float
    residual: float
    regularity: float

    @classmethod
    def from_jet(cls, jet: SurfaceJet) -> ReportRow:
        """Build a row from an evaluated surface jet."""
        x, y, z = (float(c) for c in jet.X)
        return cls(
            u1=jet.z.real,
            u2=jet.z.imag,
            x=x,
            y=y,
            z=z,
            H=jet.H,
            K=jet.K,
            psi=jet.Psi,
            lambda_=jet.Lambda,
            detV=jet.detV,
            residual=jet.residual,
            regularity=jet.regularity,
        )

    def values(self) -> tuple[float, ...]:
        """Return the values in CSV column order."""
        return (
            self.u1,
            self.u2,
            self.x,
            self.y,
            self.z,
            self.H,
            self.K,
            self.psi,
            self.lambda_,
            self.detV,
            self.residual,
            self.regularity,
        )


@dataclass(frozen=True)
class ImmersionFn:
    """A parameterized surface, optionally with a reference Gauss map."""

    position: PositionMap
    gauss_map: PositionMap | None = None


@dataclass(frozen=True)
class FdReport:
    """Fundamental forms and curvatures estimated by finite differences."""

    I: FirstFundamentalForm
    II: SecondFundamentalForm
    H: float
    K: float
    N: Vector
    step: float


@dataclass
class VerificationReport:
    """Worst deviations seen while verifying a grid."""

    evaluated: int = 0
    masked: int = 0
    oracle_compared: int = 0
    oracle_skipped: int = 0
    max_residual: float = 0.0
    max_oracle_deviation: float = 0.0
    max_position_deviation: float = 0.0
    a2_plus_deviation: float = 0.0
    a2_minus_deviation: float = 0.0

    def passed(self, tolerances: VerifyTolerances) -> bool:
        """Return True when every deviation is within tolerance."""
        return (
            self.evaluated > 0
            and self.max_residual <= tolerances.residual
            and self.max_oracle_deviation <= tolerances.oracle
            and self.max_position_deviation <= tolerances.position
        )
