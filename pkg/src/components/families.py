"""
Example Families
The worked example series, their formal Borel counterparts and closed-form root oracles.

    geometric   1 + z + z^2 + ...              (Borel transform e^z)
    fp          (z^p - 1)(e^z - 1)             (Borel transform of fp_tilde)
    fp_tilde    -sum_{k<=p} z^k + sum_{k>p} [k!/(k-p)! - 1] z^k
    exp_power   e^{z^p}                        (Borel transform of a divergent series)
    koebe       z / (1 - z)^2                  (extremal univalent function, a_k = k)

Coefficients are built from exact integers and rounded once into scaled form.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import List

from .errors import (
    BoundaryAmbiguous,
    InvalidParameter,
    NoCounterpart,
    OracleUnavailable,
)
from .scaled import ScaledComplex, inverse_factorial
from .series import DIVERGENT_MARKER, PowerSeries

logger = logging.getLogger(__name__)

EXAMPLE_NAMES = ("geometric", "fp", "fp_tilde", "exp_power", "koebe")
BOUNDARY_TOLERANCE = 1e-9

_PARAMETRIZED = ("fp", "fp_tilde", "exp_power")


@dataclass(frozen=True)
class ExampleId:
    name: str
    p: int = 1
    order: int = 0

    def __post_init__(self):
        if self.name not in EXAMPLE_NAMES:
            raise InvalidParameter(f"unknown example '{self.name}'; choose from {', '.join(EXAMPLE_NAMES)}")
        if self.name in _PARAMETRIZED and (int(self.p) != self.p or self.p < 1):
            raise InvalidParameter(f"example '{self.name}' needs an integer p >= 1, got {self.p!r}")
        if self.order < 0:
            raise InvalidParameter(f"order must be >= 0, got {self.order}")

    @property
    def label(self) -> str:
        return self.name if self.name not in _PARAMETRIZED else f"{self.name}({self.p})"


def _falling(k: int, p: int) -> int:
    """k! / (k-p)!"""
    return math.perm(k, p)


def exponential_series(order: int) -> PowerSeries:
    """1/k! coefficients, bit-identical to the Borel transform of the all-ones series"""
    return PowerSeries(tuple(inverse_factorial(k) for k in range(order + 1)), order, "exp")


def _geometric(order: int) -> List[ScaledComplex]:
    return [ScaledComplex.one() for _ in range(order + 1)]


def _fp(p: int, order: int) -> List[ScaledComplex]:
    coeffs = [ScaledComplex.zero()]
    for k in range(1, order + 1):
        numerator = -1 if k <= p else _falling(k, p) - 1
        coeffs.append(ScaledComplex.from_ratio(numerator, math.factorial(k)))
    return coeffs


def _fp_tilde(p: int, order: int) -> List[ScaledComplex]:
    coeffs = [ScaledComplex.zero()]
    for k in range(1, order + 1):
        coeffs.append(ScaledComplex.from_int(-1 if k <= p else _falling(k, p) - 1))
    return coeffs


def _exp_power(p: int, order: int) -> List[ScaledComplex]:
    coeffs = [ScaledComplex.zero() for _ in range(order + 1)]
    for l in range(order // p + 1):
        coeffs[l * p] = inverse_factorial(l)
    return coeffs


def _koebe(order: int) -> List[ScaledComplex]:
    return [ScaledComplex.from_int(k) for k in range(order + 1)]


def build(example: ExampleId) -> PowerSeries:
    """Coefficients of the example truncated at example.order"""
    name, p, order = example.name, int(example.p), example.order
    if name == "geometric":
        coeffs = _geometric(order)
    elif name == "fp":
        coeffs = _fp(p, order)
    elif name == "fp_tilde":
        coeffs = _fp_tilde(p, order)
    elif name == "exp_power":
        coeffs = _exp_power(p, order)
    else:
        coeffs = _koebe(order)
    return PowerSeries(tuple(coeffs), order, example.label)


def build_from_name(name: str, p: int = 1, order: int = 100) -> PowerSeries:
    return build(ExampleId(name, p, order))


def borel_counterpart(example: ExampleId, order: int) -> PowerSeries:
    """
    The series on the other side of the Borel pair the example belongs to

    geometric gives the all-ones series itself (whose transform is e^z), fp
    gives fp_tilde, and exp_power gives the formal series with (lp)!/l! at
    degree lp, which diverges everywhere off the origin.
    """
    name, p = example.name, int(example.p)
    if name == "geometric":
        return PowerSeries(tuple(_geometric(order)), order, "geometric")
    if name == "fp":
        return PowerSeries(tuple(_fp_tilde(p, order)), order, f"fp_tilde({p})")
    if name == "exp_power":
        coeffs = [ScaledComplex.zero() for _ in range(order + 1)]
        for l in range(order // p + 1):
            coeffs[l * p] = ScaledComplex.from_ratio(math.factorial(l * p), math.factorial(l))
        return PowerSeries(tuple(coeffs), order, f"exp_power_hat({p}) [{DIVERGENT_MARKER}]", divergent=True)
    raise NoCounterpart(example.label)


def _inside(solutions: List[complex], radius: float) -> List[complex]:
    inside = []
    for z in solutions:
        distance = abs(z) - radius
        if abs(distance) <= BOUNDARY_TOLERANCE:
            raise BoundaryAmbiguous(z, radius)
        if distance < 0:
            inside.append(z)
    return inside


def _log_branches(c: complex, bound: float) -> List[complex]:
    """Log c + 2 pi i k for every k with |Log c + 2 pi i k| <= bound (+ a margin of one branch)"""
    base = cmath.log(c)
    lo = math.floor((-base.imag - bound) / (2 * math.pi)) - 1
    hi = math.ceil((-base.imag + bound) / (2 * math.pi)) + 1
    return [base + 2j * math.pi * k for k in range(lo, hi + 1)]


def analytic_solutions(example: ExampleId, c: complex, radius: float) -> List[complex]:
    """
    All solutions of the example's equation in |z| < radius, repeated by multiplicity

        geometric   e^z = c  (the Borel transform of the geometric series)
        fp          f_p(z) = 0  (c = 0 only)
        exp_power   e^{z^p} = c

    Branches use the principal Log; the full 2 pi i k sweep makes the set
    independent of that choice. A solution within 1e-9 of the circle raises
    BoundaryAmbiguous.
    """
    c = complex(c)
    if not (math.isfinite(radius) and radius > 0):
        raise InvalidParameter(f"radius must be a finite r > 0, got {radius!r}")
    name, p = example.name, int(example.p)

    if name == "geometric":
        if c == 0:
            return []
        return _inside(_log_branches(c, radius), radius)

    if name == "fp":
        if c != 0:
            raise OracleUnavailable(f"no closed-form solutions of f_p(z) = c for c = {c!r} != 0")
        roots = [cmath.exp(2j * math.pi * j / p) for j in range(p)]
        bound = math.floor(radius / (2 * math.pi)) + 1
        roots += [2j * math.pi * k for k in range(-bound, bound + 1)]
        return _inside(roots, radius)

    if name == "exp_power":
        if c == 0:
            return []
        solutions = []
        for u in _log_branches(c, radius ** p):
            if u == 0:
                solutions += [0j] * p
                continue
            modulus = abs(u) ** (1.0 / p)
            angle = cmath.phase(u)
            solutions += [modulus * cmath.exp(1j * (angle + 2 * math.pi * j) / p) for j in range(p)]
        return _inside(solutions, radius)

    raise OracleUnavailable(f"no root oracle for example '{example.label}'")


def expected_zero_count(example: ExampleId, radius: float, c: complex = 0) -> int:
    return len(analytic_solutions(example, c, radius))
