"""
Truncated Power Series
Representation, evaluation, differentiation, scaling, products and tail estimates
"""

import json
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from .errors import InvalidParameter, MagnitudeOutOfRange, SeriesFileError
from .report import dumps_canonical
from .scaled import (
    LN2,
    ScaledComplex,
    ldexp_complex,
    rebalance,
    relative_difference,
    sum_scaled,
)

logger = logging.getLogger(__name__)

# Label suffix carried by series whose radius of convergence is zero
DIVERGENT_MARKER = "divergent for any z != 0"

# Exponents are rebalanced after this many power steps during scaled evaluation
REBALANCE_EVERY = 16

# Plain Horner evaluation is used only while every term stays inside this binary range
_PLAIN_EXPONENT_LIMIT = 1000


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series a_0 + a_1 z + ... + a_K z^K with scaled coefficients"""

    coeffs: Tuple[ScaledComplex, ...]
    order: int
    label: str = ""
    divergent: bool = False

    def __post_init__(self):
        if self.order < 0:
            raise InvalidParameter(f"order must be >= 0, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise InvalidParameter(
                f"series '{self.label}' has {len(self.coeffs)} coefficients for order {self.order}"
            )

    # Constructors

    @classmethod
    def from_scaled(cls, coeffs: Sequence[ScaledComplex], label: str = "") -> "PowerSeries":
        coeffs = tuple(c.normalize() for c in coeffs)
        return cls(coeffs, len(coeffs) - 1, label)

    @classmethod
    def from_complex(cls, values: Iterable[complex], label: str = "") -> "PowerSeries":
        coeffs = tuple(ScaledComplex.from_complex(v) for v in values)
        return cls(coeffs, len(coeffs) - 1, label)

    @classmethod
    def from_arrays(cls, mantissas: np.ndarray, exps: np.ndarray, label: str = "") -> "PowerSeries":
        coeffs = tuple(
            ScaledComplex.from_parts(float(m.real), float(m.imag), int(e))
            for m, e in zip(np.asarray(mantissas, dtype=np.complex128), np.asarray(exps))
        )
        return cls(coeffs, len(coeffs) - 1, label)

    @classmethod
    def zeros(cls, order: int, label: str = "zero") -> "PowerSeries":
        return cls(tuple(ScaledComplex.zero() for _ in range(order + 1)), order, label)

    def with_label(self, label: str, divergent: Optional[bool] = None) -> "PowerSeries":
        if divergent is None:
            divergent = self.divergent
        return PowerSeries(self.coeffs, self.order, label, divergent)

    # Array views, computed once per series

    @cached_property
    def mantissas(self) -> np.ndarray:
        return np.array([c.mantissa for c in self.coeffs], dtype=np.complex128)

    @cached_property
    def exps(self) -> np.ndarray:
        return np.array([c.exp2 for c in self.coeffs], dtype=np.int64)

    @cached_property
    def log_abs(self) -> np.ndarray:
        """log|a_k| per coefficient, -inf for zeros"""
        modulus = np.abs(self.mantissas)
        with np.errstate(divide="ignore"):
            return np.where(modulus > 0, np.log(modulus) + self.exps * LN2, -np.inf)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def to_complex_list(self) -> List[complex]:
        return [c.to_complex() for c in self.coeffs]

    def __len__(self) -> int:
        return self.order + 1


# Construction helpers


def polynomial(coeffs: Sequence[complex], label: str = "polynomial", order: Optional[int] = None) -> PowerSeries:
    """
    Zero-padded polynomial

    The default order 4*(degree+1) keeps the tail-bound window on padding
    zeros, so the polynomial counts as trusted at every radius.
    """
    values = [complex(c) for c in coeffs]
    degree = len(values) - 1
    if order is None:
        order = 4 * (degree + 1)
    if order < degree:
        raise InvalidParameter(f"order {order} below polynomial degree {degree}")
    values += [0j] * (order - degree)
    return PowerSeries.from_complex(values, label)


def polynomial_from_roots(
    roots: Sequence[complex], label: str = "roots", order: Optional[int] = None
) -> PowerSeries:
    """Monic polynomial with the given roots, lowest degree first"""
    highest_first = np.poly(np.asarray(roots, dtype=np.complex128)) if len(roots) else np.array([1.0])
    return polynomial(list(highest_first[::-1]), label, order)


def monomial(degree: int, order: Optional[int] = None, label: Optional[str] = None) -> PowerSeries:
    values = [0j] * degree + [1.0 + 0j]
    return polynomial(values, label or f"z^{degree}", order if order is not None else degree)


# Evaluation


def _plain_horner_safe(f: PowerSeries, radius: float) -> bool:
    nonzero = np.abs(f.mantissas) > 0
    if not np.any(nonzero):
        return True
    exps = f.exps[nonzero]
    if np.min(exps) < -_PLAIN_EXPONENT_LIMIT:
        return False
    log2_r = math.log2(radius) if radius > 0 else -math.inf
    k = np.nonzero(nonzero)[0]
    with np.errstate(invalid="ignore"):
        top = np.max(exps + np.where(k > 0, k * log2_r, 0.0))
    return bool(top < _PLAIN_EXPONENT_LIMIT)


def _scaled_power_sum(f: PowerSeries, zs: np.ndarray) -> np.ndarray:
    """
    Sum of a_k z^k with the power factor kept as mantissa and exponent

    Each scaled coefficient meets the accumulated power before any conversion,
    and exponents are rebalanced every REBALANCE_EVERY steps.
    """
    z_m, z_e = rebalance(zs, np.zeros(zs.shape, dtype=np.int64))
    p_m = np.ones(zs.shape, dtype=np.complex128)
    p_e = np.zeros(zs.shape, dtype=np.int64)
    s_m = np.zeros(zs.shape, dtype=np.complex128)
    s_e = np.zeros(zs.shape, dtype=np.int64)
    for k, (a_m, a_e) in enumerate(zip(f.mantissas, f.exps)):
        if a_m != 0:
            t_m = a_m * p_m
            t_e = p_e + int(a_e)
            s_zero = s_m == 0
            t_zero = t_m == 0
            top = np.where(s_zero, t_e, np.where(t_zero, s_e, np.maximum(s_e, t_e)))
            s_m = np.where(s_zero, 0.0, ldexp_complex(s_m, np.maximum(s_e - top, -1100))) + np.where(
                t_zero, 0.0, ldexp_complex(t_m, np.maximum(t_e - top, -1100))
            )
            s_e = top
        p_m = p_m * z_m
        p_e = p_e + z_e
        if k % REBALANCE_EVERY == REBALANCE_EVERY - 1:
            p_m, p_e = rebalance(p_m, p_e)
            s_m, s_e = _rebalance_keep_zero(s_m, s_e)
    return ldexp_complex(s_m, s_e)


def _rebalance_keep_zero(m: np.ndarray, e: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    m2, e2 = rebalance(m, e)
    return m2, np.where(m == 0, e, e2)


def evaluate_many(f: PowerSeries, zs: Union[np.ndarray, Sequence[complex]]) -> np.ndarray:
    """
    Evaluate f at many points

    Plain Horner on complex coefficients while all terms fit a double,
    scaled accumulation otherwise. Raises MagnitudeOutOfRange if a value
    does not fit a plain complex.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    radius = float(np.max(np.abs(zs))) if zs.size else 0.0
    if _plain_horner_safe(f, radius):
        coeffs = ldexp_complex(f.mantissas, f.exps)
        values = np.polynomial.polynomial.polyval(zs, coeffs)
    else:
        values = _scaled_power_sum(f, zs.ravel()).reshape(zs.shape)
    if not np.all(np.isfinite(values)):
        raise MagnitudeOutOfRange(f"value of '{f.label}' at |z| <= {radius:.6g}")
    return values


def evaluate(f: PowerSeries, z: complex) -> complex:
    return complex(evaluate_many(f, np.array([z]))[0])


# Coefficient maps


def derivative(f: PowerSeries) -> PowerSeries:
    """Term-by-term derivative; the derivative of an order-0 series is the zero series of order 0"""
    if f.order == 0:
        return PowerSeries.zeros(0, f"d({f.label})")
    coeffs = tuple(f.coeffs[k + 1] * (k + 1) for k in range(f.order))
    return PowerSeries(coeffs, f.order - 1, f"d({f.label})", f.divergent)


def scale_var(f: PowerSeries, R: float) -> PowerSeries:
    """The scaled function f(Rz): coefficients a_k R^k"""
    try:
        R = float(R)
    except (TypeError, ValueError):
        raise InvalidParameter(f"invalid scale R={R!r}") from None
    if not (math.isfinite(R) and R > 0):
        raise InvalidParameter(f"invalid scale R={R!r}; need a finite R > 0")
    base = ScaledComplex.from_complex(R)
    coeffs = tuple(c * (base ** k) for k, c in enumerate(f.coeffs))
    return PowerSeries(coeffs, f.order, f.label if R == 1 else f"{f.label}(R={R:.17g})", f.divergent)


def rotate(f: PowerSeries, theta: float) -> PowerSeries:
    """f(e^{i theta} z): coefficients a_k e^{i k theta}"""
    coeffs = tuple(
        c * ScaledComplex.from_complex(complex(math.cos(k * theta), math.sin(k * theta)))
        for k, c in enumerate(f.coeffs)
    )
    return PowerSeries(coeffs, f.order, f"{f.label}(rot)", f.divergent)


def add_constant(f: PowerSeries, c: complex) -> PowerSeries:
    coeffs = (f.coeffs[0] + ScaledComplex.from_complex(c),) + f.coeffs[1:]
    sign = "-" if complex(c).real < 0 else "+"
    return PowerSeries(coeffs, f.order, f"{f.label}{sign}{abs(complex(c)):.6g}", f.divergent)


def linear_combination(alpha: complex, f: PowerSeries, beta: complex, g: PowerSeries) -> PowerSeries:
    """alpha*f + beta*g over the common order"""
    order = max(f.order, g.order)
    a = ScaledComplex.from_complex(alpha)
    b = ScaledComplex.from_complex(beta)
    zero = ScaledComplex.zero()
    coeffs = tuple(
        a * (f.coeffs[k] if k <= f.order else zero) + b * (g.coeffs[k] if k <= g.order else zero)
        for k in range(order + 1)
    )
    return PowerSeries(coeffs, order, f"lin({f.label},{g.label})", f.divergent or g.divergent)


def truncate(f: PowerSeries, order: int) -> PowerSeries:
    if order > f.order:
        pad = tuple(ScaledComplex.zero() for _ in range(order - f.order))
        return PowerSeries(f.coeffs + pad, order, f.label, f.divergent)
    return PowerSeries(f.coeffs[: order + 1], order, f.label, f.divergent)


def mul_truncated(f: PowerSeries, g: PowerSeries, order: int) -> PowerSeries:
    """Cauchy product truncated at the requested order, summed in scaled arithmetic"""
    if order < 0:
        raise InvalidParameter(f"order must be >= 0, got {order}")
    coeffs = []
    for k in range(order + 1):
        lo, hi = max(0, k - g.order), min(k, f.order)
        if lo > hi:
            coeffs.append(ScaledComplex.zero())
            continue
        i = np.arange(lo, hi + 1)
        coeffs.append(sum_scaled(f.mantissas[i] * g.mantissas[k - i], f.exps[i] + g.exps[k - i]))
    return PowerSeries(tuple(coeffs), order, f"({f.label})*({g.label})", f.divergent or g.divergent)


# Trust


def tail_bound(f: PowerSeries, r: float) -> float:
    """
    Heuristic size of the discarded tail at radius r

    Fits a geometric envelope rho to the last quarter of the stored
    coefficients (rho = max |a_k|^(1/k)) and sums (rho*r)^k from order+1 on.
    This is an estimate, not a certificate; +inf means "do not trust".
    A series flagged divergent is untrusted at every radius.
    """
    if not (r > 0 and math.isfinite(r)):
        raise InvalidParameter(f"tail radius must be a finite r > 0, got {r!r}")
    if f.divergent:
        return math.inf
    K = f.order
    start = max(1, math.ceil(3 * K / 4))
    if start > K:
        return 0.0
    k = np.arange(start, K + 1)
    log_rho = float(np.max(f.log_abs[start:] / k))
    if log_rho == -math.inf:
        return 0.0
    log_x = log_rho + math.log(r)
    if log_x >= 0:
        return math.inf
    return math.exp((K + 1) * log_x - math.log1p(-math.exp(log_x)))


# Comparison


def max_relative_difference(f: PowerSeries, g: PowerSeries) -> float:
    """Largest per-coefficient relative difference over the common order; zeros pad the shorter one"""
    h = truncate(f, max(f.order, g.order))
    j = truncate(g, max(f.order, g.order))
    return max(relative_difference(a, b) for a, b in zip(h.coeffs, j.coeffs))


# JSON series files


class SeriesFile(BaseModel):
    """On-disk form of a series: label, order and [re_mantissa, im_mantissa, exp2] triples"""

    label: str = Field(default="", description="Series label")
    order: int = Field(..., ge=0, description="Truncation degree")
    coeffs: List[Tuple[float, float, int]] = Field(..., description="Scaled coefficients")
    divergent: bool = Field(default=False, description="Zero radius of convergence")

    @model_validator(mode="after")
    def _check_length(self):
        if len(self.coeffs) != self.order + 1:
            raise ValueError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        return self


def series_to_dict(f: PowerSeries) -> dict:
    data = {"label": f.label, "order": f.order, "coeffs": [list(c.to_triple()) for c in f.coeffs]}
    if f.divergent:
        data["divergent"] = True
    return data


def series_from_dict(data: dict) -> PowerSeries:
    model = SeriesFile.model_validate(data)
    coeffs = tuple(ScaledComplex.from_parts(re, im, e) for re, im, e in model.coeffs)
    divergent = model.divergent or DIVERGENT_MARKER in model.label
    return PowerSeries(coeffs, model.order, model.label, divergent)


def dumps_series(f: PowerSeries) -> str:
    return dumps_canonical(series_to_dict(f))


def save_series(f: PowerSeries, path: Union[str, Path]) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        handle.write(dumps_series(f))
    logger.info(f"Wrote series '{f.label}' (order {f.order}) to {path}")
    return path


def load_series(path: Union[str, Path]) -> PowerSeries:
    try:
        with open(path, "r") as handle:
            data = json.load(handle)
        return series_from_dict(data)
    except FileNotFoundError:
        raise SeriesFileError(str(path), "file not found") from None
    except json.JSONDecodeError as e:
        raise SeriesFileError(str(path), f"invalid JSON ({e})") from None
    except ValidationError as e:
        raise SeriesFileError(str(path), f"invalid series ({e.error_count()} problems)") from None
