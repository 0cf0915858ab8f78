"""Closed-form geometry of RT-surfaces from Weierstrass data (f, g).

Every quantity is evaluated at a single parameter point z = u1 + i u2 from the
second-order jets of f and g. The support function is h = exp(Re f) and the
Gauss map is the inverse stereographic projection of g. Complex first slots of
vector formulas map to the (x1, x2) coordinates of R^3 with x1 the real part.
"""
from __future__ import annotations

from enum import Enum
import math

import numpy as np

from .const import _LOGGER
from .exceptions import DegenerateGaussMap, EvalError, EvalErrorKind, SingularPoint
from .expression import eval_jet2
from .helpers import check_consistency
from .jet import Jet2
from .models import (
    Christoffel,
    FirstFundamentalForm,
    GeneratorPair,
    ImmersionFn,
    SecondFundamentalForm,
    SupportDerivatives,
    SurfaceJet,
    Thresholds,
    Vector,
)


class A2Convention(Enum):
    """Sign of <1, xi> inside A2 of the form coefficients."""

    PLUS = 1
    MINUS = -1


def pairing(a: complex, b: complex) -> float:
    """Return the real inner product a1 b1 + a2 b2 of two complex numbers."""
    return (a * b.conjugate()).real


def _embed(first: complex, third: float) -> Vector:
    return np.array([first.real, first.imag, third])


def gauss_map(gj: Jet2) -> Vector:
    """Return the unit normal (2 Re g, 2 Im g, 1 - |g|^2) / (1 + |g|^2)."""
    g = gj.v
    T = 1 + abs(g) ** 2
    return _embed(2 * g / T, (2 - T) / T)


def _check_gauss(gj: Jet2, gauss_eps: float) -> float:
    """Return |g'|^2, raising when g' vanishes numerically."""
    if abs(gj.d1) < gauss_eps:
        raise DegenerateGaussMap(f"|g'| = {abs(gj.d1):.3e} below {gauss_eps:.1e}")
    return abs(gj.d1) ** 2


def gauss_map_derivatives(gj: Jet2) -> tuple[Vector, Vector]:
    """Return the partial derivatives N_1 and N_2 of the Gauss map."""
    g, g1 = gj.v, gj.d1
    T = 1 + abs(g) ** 2
    factor = 2 / T**2
    t1 = pairing(g1, g)
    t2 = pairing(g, 1j * g1)
    n1 = _embed(factor * (T * g1 - 2 * g * t1), factor * (-2 * t1))
    n2 = _embed(factor * (T * 1j * g1 - 2 * g * t2), factor * (-2 * t2))
    return n1, n2


def third_form(gj: Jet2, gauss_eps: float = Thresholds.gauss_eps) -> float:
    """Return the conformal factor L11 = 4|g'|^2 / T^2 of the third form."""
    m = _check_gauss(gj, gauss_eps)
    T = 1 + abs(gj.v) ** 2
    return 4 * m / T**2


def christoffel(gj: Jet2, gauss_eps: float = Thresholds.gauss_eps) -> Christoffel:
    """Return the Christoffel symbols of the metric L11 (du1^2 + du2^2)."""
    m = _check_gauss(gj, gauss_eps)
    g, g1, g2 = gj.v, gj.d1, gj.d2
    T = 1 + abs(g) ** 2
    g1_11 = (T * pairing(g1, g2) - 2 * m * pairing(g, g1)) / (T * m)
    g2_22 = (T * pairing(g1, 1j * g2) - 2 * m * pairing(g, 1j * g1)) / (T * m)
    return Christoffel(
        g1_11=g1_11,
        g2_22=g2_22,
        g2_11=-g2_22,
        g1_22=-g1_11,
        g1_12=g2_22,
        g2_12=g1_11,
    )


def xi(
    fj: Jet2, gj: Jet2, T: float, gauss_eps: float = Thresholds.gauss_eps
) -> complex:
    """Return xi = f'(g''/g' - (2/T) g' conj(g)) - f''."""
    _check_gauss(gj, gauss_eps)
    g, g1, g2 = gj.v, gj.d1, gj.d2
    return fj.d1 * (g2 / g1 - (2 / T) * g1 * g.conjugate()) - fj.d2


def support_derivatives(fj: Jet2, h: float) -> SupportDerivatives:
    """Return first and second partials of h = exp(Re f)."""
    p, q = fj.d1.real, fj.d1.imag
    return SupportDerivatives(
        h1=h * p,
        h2=-h * q,
        h11=h * (p * p + fj.d2.real),
        h12=h * (-p * q - fj.d2.imag),
        h22=h * (q * q - fj.d2.real),
    )


def _v_terms(fj: Jet2, gj: Jet2, h: float, T: float, xi_value: complex) -> tuple:
    f1 = fj.d1
    c = h * T**2 / (4 * abs(gj.d1) ** 2)
    a1 = f1.real**2 - xi_value.real
    a2 = f1.imag**2 + xi_value.real
    b = (xi_value - f1 * f1 / 2).imag
    return c, a1, a2, b


def v_matrix(
    fj: Jet2,
    gj: Jet2,
    h: float,
    T: float,
    xi_value: complex,
    thresholds: Thresholds = Thresholds(),
) -> tuple[Vector, float]:
    """Return the matrix V with X_i = sum_j V_ij N_j and its determinant.

    The determinant is computed both from the expanded closed form and as the
    direct 2x2 determinant; a disagreement raises ConsistencyError.
    """
    _check_gauss(gj, thresholds.gauss_eps)
    c, a1, a2, b = _v_terms(fj, gj, h, T, xi_value)
    V = np.array([[c * a1 + h, c * b], [c * b, c * a2 + h]])
    direct = V[0, 0] * V[1, 1] - V[0, 1] * V[1, 0]
    f1 = fj.d1
    terms = (
        c * c * pairing(xi_value, f1 * f1 - xi_value),
        c * h * abs(f1) ** 2,
        h * h,
    )
    closed = sum(terms)
    check_consistency(
        "detV",
        direct,
        closed,
        thresholds.det_rtol,
        summands=(*terms, V[0, 0] * V[1, 1], V[0, 1] ** 2),
    )
    return V, float(closed)


def v_matrix_christoffel(
    fj: Jet2, h: float, L11: float, gamma: Christoffel
) -> Vector:
    """Return V from V_ij = (h_ij - sum_k h_k G^k_ij) / L11 + h delta_ij."""
    sd = support_derivatives(fj, h)
    hess = {(1, 1): sd.h11, (1, 2): sd.h12, (2, 2): sd.h22}
    V = np.empty((2, 2))
    for i in (1, 2):
        for j in (1, 2):
            key = (min(i, j), max(i, j))
            value = (
                hess[key]
                - sd.h1 * gamma.symbol(1, i, j)
                - sd.h2 * gamma.symbol(2, i, j)
            )
            V[i - 1, j - 1] = value / L11 + (h if i == j else 0.0)
    return V


def position_closed(
    fj: Jet2, gj: Jet2, h: float, T: float, gauss_eps: float = Thresholds.gauss_eps
) -> Vector:
    """Return the immersion X from the explicit Weierstrass-type formula."""
    m = _check_gauss(gj, gauss_eps)
    g, g1, f1 = gj.v, gj.d1, fj.d1
    w = pairing(g1, g * f1)
    k = h / (2 * m)
    first = k * (T * g1 * f1.conjugate() - 2 * g * w) + h * 2 * g / T
    third = k * (-2 * w) + h * (2 - T) / T
    return _embed(first, third)


def position_gradient(
    fj: Jet2, h: float, L11: float, dN: tuple[Vector, Vector], N: Vector
) -> Vector:
    """Return X = sum_j (h_j / L11) N_j + h N."""
    sd = support_derivatives(fj, h)
    n1, n2 = dN
    return (sd.h1 / L11) * n1 + (sd.h2 / L11) * n2 + h * N


def form_coefficients(
    fj: Jet2,
    gj: Jet2,
    h: float,
    T: float,
    xi_value: complex,
    convention: A2Convention = A2Convention.PLUS,
) -> tuple[FirstFundamentalForm, SecondFundamentalForm]:
    """Return the explicit first and second form coefficients."""
    m = abs(gj.d1) ** 2
    f1 = fj.d1
    a1 = f1.real**2 - xi_value.real
    a2 = f1.imag**2 + convention.value * xi_value.real
    b = (xi_value - f1 * f1 / 2).imag
    L = 4 * m / T**2
    k = T**2 / (4 * m)
    h2 = h * h
    first = FirstFundamentalForm(
        E=h2 * (k * (a1 * a1 + b * b) + 2 * a1 + L),
        F=h2 * (k * abs(f1) ** 2 + 2) * b,
        G=h2 * (k * (a2 * a2 + b * b) + 2 * a2 + L),
    )
    second = SecondFundamentalForm(e2=h * a1 + h * L, f2=h * b, g2=h * a2 + h * L)
    return first, second


def fundamental_forms(
    fj: Jet2,
    gj: Jet2,
    h: float,
    T: float,
    xi_value: complex,
    V: Vector,
    L11: float,
    forms_rtol: float = Thresholds.forms_rtol,
) -> tuple[FirstFundamentalForm, SecondFundamentalForm]:
    """Return (I, II), checked against I = L V V^T and II = V L."""
    first, second = form_coefficients(fj, gj, h, T, xi_value)
    via_v_first = L11 * V @ V.T
    via_v_second = L11 * V
    check_consistency(
        "I",
        np.array(first),
        np.array([via_v_first[0, 0], via_v_first[0, 1], via_v_first[1, 1]]),
        forms_rtol,
        summands=(L11 * V * V, h * h * L11),
    )
    check_consistency(
        "II",
        np.array(second),
        np.array([via_v_second[0, 0], via_v_second[0, 1], via_v_second[1, 1]]),
        forms_rtol,
        summands=(h * L11,),
    )
    return first, second


def curvatures(
    V: Vector, detV: float, h: float = 1.0, det_eps: float = Thresholds.det_eps
) -> tuple[float, float]:
    """Return (H, K) with K = 1/detV and V11 + V22 = -2H/K."""
    if abs(detV) < det_eps * h * h:
        raise SingularPoint(f"detV = {detV:.3e} below {det_eps:.1e} * h^2")
    K = 1 / detV
    H = -(V[0, 0] + V[1, 1]) / (2 * detV)
    return H, K


def psi_lambda(fj: Jet2, h: float, L11: float) -> tuple[float, float]:
    """Return the support function and the quadratic distance function."""
    sd = support_derivatives(fj, h)
    grad_sq = (sd.h1**2 + sd.h2**2) / L11
    return h, grad_sq + h * h


def rt_residual(Psi: float, Lambda: float, H: float, K: float) -> float:
    """Return 2 Psi H + (Lambda + Psi^2) K."""
    return 2 * Psi * H + (Lambda + Psi * Psi) * K


def regularity(
    fj: Jet2,
    gj: Jet2,
    T: float,
    xi_value: complex,
    detV: float,
    h: float,
    rtol: float = Thresholds.regularity_rtol,
) -> float:
    """Return R, which vanishes exactly where the immersion is singular."""
    m = abs(gj.d1) ** 2
    f1 = fj.d1
    terms = (
        T**4 * pairing(xi_value, f1 * f1 - xi_value),
        4 * T**2 * abs(f1) ** 2 * m,
        16 * m * m,
    )
    value = sum(terms)
    check_consistency(
        "regularity", value, 16 * m * m * detV / (h * h), rtol, summands=terms
    )
    return value


def _support(gen: GeneratorPair, fj: Jet2) -> float:
    try:
        return math.exp(fj.v.real)
    except OverflowError as err:
        raise EvalError(EvalErrorKind.OVERFLOW, gen.f) from err


def evaluate(
    gen: GeneratorPair, z: complex, thresholds: Thresholds = Thresholds()
) -> SurfaceJet:
    """Evaluate every closed-form quantity at z and run the consistency checks."""
    z = complex(z)
    fj = eval_jet2(gen.f, z)
    gj = eval_jet2(gen.g, z)
    L11 = third_form(gj, thresholds.gauss_eps)
    h = _support(gen, fj)
    T = 1 + abs(gj.v) ** 2
    xi_value = xi(fj, gj, T, thresholds.gauss_eps)
    gamma = christoffel(gj, thresholds.gauss_eps)
    N = gauss_map(gj)
    dN = gauss_map_derivatives(gj)

    V, detV = v_matrix(fj, gj, h, T, xi_value, thresholds)
    sd = support_derivatives(fj, h)
    check_consistency(
        "V",
        v_matrix_christoffel(fj, h, L11, gamma),
        V,
        thresholds.forms_rtol,
        summands=(
            np.array(sd[2:]) / L11,
            (abs(sd.h1) + abs(sd.h2)) * max(map(abs, gamma)) / L11,
            h,
        ),
    )
    # Laplacian of h in flat coordinates is h |f'|^2
    laplacian = h * abs(fj.d1) ** 2
    check_consistency(
        "trace V",
        laplacian / L11 + 2 * h,
        V[0, 0] + V[1, 1],
        thresholds.forms_rtol,
        summands=(laplacian / L11, V),
    )

    X = position_closed(fj, gj, h, T, thresholds.gauss_eps)
    X_gradient = position_gradient(fj, h, L11, dN, N)
    check_consistency(
        "X",
        X,
        X_gradient,
        thresholds.position_rtol,
        summands=(h, h * abs(fj.d1) / math.sqrt(L11)),
    )

    H, K = curvatures(V, detV, h, thresholds.det_eps)
    first, second = fundamental_forms(
        fj, gj, h, T, xi_value, V, L11, thresholds.forms_rtol
    )
    Psi, Lambda = psi_lambda(fj, h, L11)
    check_consistency("Lambda", Lambda, float(X @ X), thresholds.forms_rtol)
    check_consistency("Psi", Psi, float(X @ N), thresholds.forms_rtol, summands=(X,))

    residual = rt_residual(Psi, Lambda, H, K)
    R = regularity(fj, gj, T, xi_value, detV, h, thresholds.regularity_rtol)
    _LOGGER.debug("Evaluated %s at %s: detV=%s residual=%s", gen, z, detV, residual)
    return SurfaceJet(
        z=z,
        fj=fj,
        gj=gj,
        h=h,
        T=T,
        xi=xi_value,
        N=N,
        L11=L11,
        gamma=gamma,
        V=V,
        detV=detV,
        X=X,
        X_gradient=X_gradient,
        I=first,
        II=second,
        H=H,
        K=K,
        Psi=Psi,
        Lambda=Lambda,
        residual=residual,
        residual_scale=abs(2 * Psi * H) + abs((Lambda + Psi * Psi) * K),
        regularity=R,
    )


def immersion(
    gen: GeneratorPair, gauss_eps: float = Thresholds.gauss_eps
) -> ImmersionFn:
    """Return the position map and Gauss map of a generator pair as callables."""

    def position(u1: float, u2: float) -> Vector:
        z = complex(u1, u2)
        fj = eval_jet2(gen.f, z)
        gj = eval_jet2(gen.g, z)
        return position_closed(fj, gj, _support(gen, fj), 1 + abs(gj.v) ** 2, gauss_eps)

    def normal(u1: float, u2: float) -> Vector:
        return gauss_map(eval_jet2(gen.g, complex(u1, u2)))

    return ImmersionFn(position=position, gauss_map=normal)
