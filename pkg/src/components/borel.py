"""
Borel Transform
Coefficient-wise transform and inverse, and the Laplace-type inverse integral
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, SeriesNotTrusted, TrustRadiusExceeded
from .scaled import factorial_scaled
from .series import PowerSeries, evaluate_many, scale_var, tail_bound

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps

# rounding noise of a series value relative to its |b_k| majorant
_NOISE = 64.0 * _EPS


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for the truncated integral f(z) = int_0^T e^{-t} g(tz) dt"""

    node_count: int = 64
    cutoff_T: float = 40.0
    trust_radius: float = 24.0

    def __post_init__(self):
        if self.node_count < 8:
            raise InvalidParameter(f"node_count must be >= 8, got {self.node_count}")
        if not self.cutoff_T > 0:
            raise InvalidParameter(f"cutoff_T must be > 0, got {self.cutoff_T}")
        if not self.trust_radius > 0:
            raise InvalidParameter(f"trust_radius must be > 0, got {self.trust_radius}")


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    nodes_used: int
    tail_estimate: float
    residual: float


def borel(f: PowerSeries) -> PowerSeries:
    """B(f): coefficients a_k / k!, the division done on the mantissa with k!'s exponent from log-gamma"""
    coeffs = tuple(c / factorial_scaled(k) for k, c in enumerate(f.coeffs))
    return PowerSeries(coeffs, f.order, f"{f.label}/borel")


def inverse_borel_coeff(g: PowerSeries) -> PowerSeries:
    """Coefficients b_k * k!, the representation-level inverse of borel"""
    coeffs = tuple(c * factorial_scaled(k) for k, c in enumerate(g.coeffs))
    label = g.label[: -len("/borel")] if g.label.endswith("/borel") else f"{g.label}/inverse-borel"
    return PowerSeries(coeffs, g.order, label)


def borel_scaled(f: PowerSeries, R: float) -> PowerSeries:
    """Borel transform of the scaled function f(Rz): coefficients a_k R^k / k!"""
    return borel(scale_var(f, R))


def _gauss_rule(n: int, T: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * T * (x + 1.0), 0.5 * T * w


def inverse_borel_integral(g: PowerSeries, z: complex, spec: QuadratureSpec) -> QuadratureResult:
    """
    Numerical inverse Borel transform f(z) = int_0^inf e^{-t} g(tz) dt

    The integral is cut at spec.cutoff_T, where g is still inside its trust
    disk, and integrated with Gauss nodes on [0, T] carrying the e^{-t}
    weight explicitly. The error estimate adds four parts:

        - residual between the n-node and n/2-node rules
        - the tail e^{-T} max|g|, inflated by 1/(1 - gamma) where gamma is
          the growth rate of log|g(tz)| measured at t = T
        - a round-off floor from the majorant sum |b_k| |tz|^k
        - the series tail estimate at the trust radius
    """
    z = complex(z)
    needed = abs(z) * spec.cutoff_T
    # one rounding of |z| * T may land just past the radius it was chosen to meet
    if needed > spec.trust_radius * (1 + 1e-12):
        raise TrustRadiusExceeded(needed, spec.trust_radius)
    tail = tail_bound(g, spec.trust_radius)
    if not math.isfinite(tail):
        raise SeriesNotTrusted(spec.trust_radius, tail, where="at required radius")

    T = spec.cutoff_T
    t_full, w_full = _gauss_rule(spec.node_count, T)
    t_half, w_half = _gauss_rule(spec.node_count // 2, T)

    g_full = evaluate_many(g, t_full * z)
    g_half = evaluate_many(g, t_half * z)
    integrand_full = np.exp(-t_full) * g_full
    value = complex(np.sum(w_full * integrand_full))
    value_half = complex(np.sum(w_half * np.exp(-t_half) * g_half))
    residual = abs(value - value_half)

    # sum |b_k| r^k bounds both |g| and the rounding noise of evaluating g
    majorant = PowerSeries.from_arrays(np.abs(g.mantissas), g.exps, f"|{g.label}|")
    noise_full = _NOISE * evaluate_many(majorant, t_full * abs(z)).real
    roundoff = float(np.sum(w_full * np.exp(-t_full) * noise_full))

    # growth of |g| along the ray at t = T, only where the samples rise above noise
    delta = min(1.0, T / 8.0)
    ends = np.array([T, T - delta])
    g_end = np.abs(evaluate_many(g, ends * z))
    noise_end = _NOISE * evaluate_many(majorant, ends * abs(z)).real
    growth = 0.0
    if np.all(g_end > noise_end):
        growth = max(0.0, (math.log(g_end[0]) - math.log(g_end[1])) / delta)
    if growth >= 1.0:
        raise SeriesNotTrusted(spec.trust_radius, math.inf, where="at required radius (integrand does not decay)")
    max_g = float(max(np.max(np.abs(g_full)), np.max(g_end)))
    tail_estimate = math.exp(-T) * max_g / (1.0 - growth)

    error = residual + tail_estimate + roundoff + tail
    logger.debug(
        f"inverse Borel at z={z}: value={value}, residual={residual:.3g}, tail={tail_estimate:.3g}"
    )
    return QuadratureResult(value, error, spec.node_count, tail_estimate, residual)
