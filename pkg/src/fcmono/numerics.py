"""Floating-point evaluation of the hypergeometric series F_C and its
torus contour integral, plus the bridge from exact cyclotomic data to
complex doubles.

The series is summed by total degree: the coupled numerator factors
(a)_d (b)_d multiply a polynomial-convolution coefficient built from
the per-axis weights x_k^m / ((c_k)_m m!).  The contour rule is the
equispaced trapezoid on a product of circles |t_k| = eps, which is
spectrally accurate for the analytic integrand, with the closed-form
Gamma prefactor of the integer-c representation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CycNum, ParameterSet

__all__ = [
    "DomainError", "ConvergenceError", "GammaPoleError",
    "SeriesConfig", "TorusQuadrature", "SeriesValue", "ContourValue",
    "fc_series", "fc_contour", "gamma_value", "numeric_embed",
    "torus_quadrature", "contour_prefactor",
]


class DomainError(ValueError):
    """Inputs violate a validity constraint (the message names it)."""


class ConvergenceError(RuntimeError):
    pass


class GammaPoleError(ValueError):
    pass


@dataclass
class SeriesConfig:
    max_total_degree: int = 400
    rel_tol: float = 1e-13


@dataclass
class TorusQuadrature:
    epsilon: float = 0.2
    points_per_circle: int = 64


@dataclass
class SeriesValue:
    value: complex
    total_degree: int
    last_term: float


@dataclass
class ContourValue:
    value: complex
    points_per_circle: int
    prefactor: complex


def _check_c_parameters(params: ParameterSet):
    for k, c in enumerate(params.c):
        if c.denominator == 1 and c <= 0:
            raise DomainError(
                f"c_{k+1} = {c} is a nonpositive integer; the series "
                "coefficients are undefined")


def fc_series(params: ParameterSet, x, cfg: SeriesConfig | None = None) -> SeriesValue:
    """Truncated series sum of F_C(a, b, c; x) by total degree.

    Requires sum_k sqrt|x_k| < 1.  Stops once the relative contribution
    of a degree stays below cfg.rel_tol twice in a row.  The running
    Pochhammer product (a)_d (b)_d is kept frexp-normalised so large
    degrees cannot overflow before the convolution factor underflows.
    """
    cfg = cfg or SeriesConfig()
    _check_c_parameters(params)
    xs = [complex(v) for v in x]
    if len(xs) != params.n:
        raise DomainError(f"expected {params.n} coordinates, got {len(xs)}")
    radius = sum(math.sqrt(abs(v)) for v in xs)
    if radius >= 1.0:
        raise DomainError(
            f"sum_k sqrt|x_k| = {radius:.6g} >= 1 is outside the "
            "convergence domain")
    a, b = float(params.a), float(params.b)
    D = cfg.max_total_degree
    conv = None
    for c, xx in zip(params.c, xs):
        w = np.empty(D + 1, dtype=complex)
        w[0] = 1.0
        cf = float(c)
        for m in range(1, D + 1):
            w[m] = w[m - 1] * xx / ((cf + m - 1) * m)
        conv = w if conv is None else np.convolve(conv, w)[:D + 1]
    total = 0.0 + 0.0j
    poch_m, poch_e = 1.0, 0    # (a)_d (b)_d = poch_m * 2**poch_e
    quiet = 0
    for d in range(D + 1):
        scaled = poch_m * conv[d]
        term = complex(math.ldexp(scaled.real, poch_e),
                       math.ldexp(scaled.imag, poch_e))
        total += term
        if d > 0 and abs(term) <= cfg.rel_tol * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 2:
                return SeriesValue(total, d, abs(term))
        else:
            quiet = 0
        poch_m *= (a + d) * (b + d)
        if poch_m != 0.0:
            m2, e2 = math.frexp(poch_m)
            poch_m, poch_e = m2, poch_e + e2
    raise ConvergenceError(
        f"series did not meet rel_tol={cfg.rel_tol} within total degree {D}")


# -- Gamma via the Lanczos approximation --------------------------------

_LANCZOS_G = 7
_LANCZOS = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]


def gamma_value(z):
    """Gamma(z) for real or complex z, poles excluded.

    Lanczos with g = 7, 9 terms; the reflection formula handles
    Re z < 1/2.  Relative error is below 1e-12 on [0.5, 20].
    """
    zc = complex(z)
    if zc.imag == 0 and zc.real <= 0 and zc.real == int(zc.real):
        raise GammaPoleError(f"Gamma pole at z = {zc.real:g}")
    if zc.real < 0.5:
        val = math.pi / (cmath.sin(math.pi * zc) * gamma_value(1 - zc))
    else:
        w = zc - 1
        acc = _LANCZOS[0]
        for i, c in enumerate(_LANCZOS[1:], start=1):
            acc += c / (w + i)
        t = w + _LANCZOS_G + 0.5
        val = math.sqrt(2 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc
    if isinstance(z, complex):
        return val
    return val.real


def contour_prefactor(params: ParameterSet) -> float:
    """(-1)^{n + sum c} Gamma(1-a) prod Gamma(c_k) / Gamma(1-a-n+sum c),
    without the 1/(2 pi i)^n, which is folded into the quadrature."""
    n = params.n
    csum = sum(params.c)
    if csum.denominator != 1:
        raise DomainError("the contour representation needs integer c_k")
    a = float(params.a)
    try:
        val = gamma_value(1 - a)
        for c in params.c:
            val *= gamma_value(float(c))
        val /= gamma_value(1 - a - n + int(csum))
    except GammaPoleError as exc:
        raise DomainError(f"Gamma prefactor hits a pole: {exc}") from exc
    return (-1) ** (n + int(csum)) * val


def torus_quadrature(func, n: int, eps: float, points: int) -> complex:
    """(1/(2 pi i)^n) int_{|t_k| = eps} func(t) dt by the product trapezoid.

    Writing t_k = eps e^{i phi}, the measure dt_k/(2 pi i) becomes
    t_k dphi_k/(2 pi), so the rule is the plain grid average of
    func(t) prod_k t_k.
    """
    if points < 8:
        raise DomainError("points_per_circle must be at least 8")
    circle = eps * np.exp(2j * np.pi * np.arange(points) / points)
    mesh = np.meshgrid(*([circle] * n), indexing="ij")
    vals = func(mesh) * np.prod(np.array(mesh), axis=0)
    return complex(vals.sum() / points ** n)


def fc_contour(params: ParameterSet, x, quad: TorusQuadrature | None = None) -> ContourValue:
    """F_C via the torus contour integral (positive integer c_k).

    Constraints checked exactly where possible: c_k integers >= 1,
    0 < eps < 1/(n+1), and 0 < x_k < eps^2 / n.  Under these bounds
    1 - sum t_k and 1 - sum x_k/t_k stay away from the branch cut, so
    principal powers are correct.
    """
    quad = quad or TorusQuadrature()
    n = params.n
    for k, c in enumerate(params.c):
        if c.denominator != 1 or c < 1:
            raise DomainError(f"c_{k+1} = {c} must be a positive integer")
    eps = float(quad.epsilon)
    if not 0 < eps < 1 / (n + 1):
        raise DomainError(f"epsilon = {eps:g} violates 0 < eps < 1/(n+1)")
    xs = [float(v) for v in x]
    if len(xs) != n:
        raise DomainError(f"expected {n} coordinates, got {len(xs)}")
    for k, v in enumerate(xs):
        if not 0 < v < eps * eps / n:
            raise DomainError(
                f"x_{k+1} = {v:g} violates 0 < x_k < eps^2/n = "
                f"{eps * eps / n:g}")
    a, b = float(params.a), float(params.b)
    cs = [int(c) for c in params.c]
    csum = sum(cs)
    pref = contour_prefactor(params)

    def integrand(mesh):
        st = sum(mesh)
        sxt = sum(xv / tk for xv, tk in zip(xs, mesh))
        val = (1 - st) ** (csum - a - n) * (1 - sxt) ** (-b)
        for c, tk in zip(cs, mesh):
            val = val * tk ** (-c)
        return val

    value = pref * torus_quadrature(integrand, n, eps, quad.points_per_circle)
    return ContourValue(value, quad.points_per_circle, pref)


def numeric_embed(x: CycNum) -> complex:
    """Ring homomorphism zeta_N -> exp(2 pi i / N) into complex doubles."""
    return x.complex_value()
