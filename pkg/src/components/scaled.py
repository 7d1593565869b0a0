"""
Scaled Complex Numbers
Complex values stored as a double-precision mantissa plus a binary exponent
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np
from scipy.special import gammaln

from .errors import InvalidParameter, MagnitudeOutOfRange

LN2 = math.log(2.0)

Number = Union[int, float, complex]


def _normalize(re: float, im: float, exp2: int) -> Tuple[float, float, int]:
    """Bring (re + i*im) * 2**exp2 to the canonical form with mantissa modulus in [1, 2)"""
    if re == 0.0 and im == 0.0:
        return 0.0, 0.0, 0
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MagnitudeOutOfRange(f"non-finite mantissa ({re!r}, {im!r})")
    modulus = math.hypot(re, im)
    if math.isinf(modulus):
        re, im, exp2 = re * 0.5, im * 0.5, exp2 + 1
        modulus = math.hypot(re, im)
    _, e = math.frexp(modulus)
    shift = e - 1
    if shift:
        re = math.ldexp(re, -shift)
        im = math.ldexp(im, -shift)
    # hypot may round across a power of two
    modulus = math.hypot(re, im)
    if modulus >= 2.0:
        re, im, shift = re * 0.5, im * 0.5, shift + 1
    elif modulus < 1.0:
        re, im, shift = re * 2.0, im * 2.0, shift - 1
    return re, im, int(exp2) + shift


@dataclass(frozen=True)
class ScaledComplex:
    """
    A complex value (mantissa_re + i*mantissa_im) * 2**exp2

    Canonical values either are the zero (0, 0, 0) or have a mantissa
    modulus in [1, 2). Use the constructors below; the raw constructor
    does not normalize.
    """

    mantissa_re: float
    mantissa_im: float
    exp2: int

    # Constructors

    @classmethod
    def zero(cls) -> "ScaledComplex":
        return cls(0.0, 0.0, 0)

    @classmethod
    def one(cls) -> "ScaledComplex":
        return cls(1.0, 0.0, 0)

    @classmethod
    def from_parts(cls, re: float, im: float = 0.0, exp2: int = 0) -> "ScaledComplex":
        return cls(*_normalize(float(re), float(im), int(exp2)))

    @classmethod
    def from_complex(cls, z: Number) -> "ScaledComplex":
        z = complex(z)
        return cls.from_parts(z.real, z.imag, 0)

    @classmethod
    def from_ratio(cls, num: int, den: int) -> "ScaledComplex":
        """
        Correctly rounded num/den for arbitrarily large integers

        Python integer true division rounds correctly, so the quotient is
        first brought into (1/2, 2) by a power-of-two shift.
        """
        if den == 0:
            raise InvalidParameter("zero denominator")
        if num == 0:
            return cls.zero()
        sign = -1.0 if (num < 0) != (den < 0) else 1.0
        num, den = abs(num), abs(den)
        shift = num.bit_length() - den.bit_length()
        if shift >= 0:
            x = num / (den << shift)
        else:
            x = (num << -shift) / den
        return cls.from_parts(sign * x, 0.0, shift)

    @classmethod
    def from_int(cls, n: int) -> "ScaledComplex":
        return cls.from_ratio(n, 1)

    # Views

    @property
    def mantissa(self) -> complex:
        return complex(self.mantissa_re, self.mantissa_im)

    def is_zero(self) -> bool:
        return self.mantissa_re == 0.0 and self.mantissa_im == 0.0

    def normalize(self) -> "ScaledComplex":
        return ScaledComplex(*_normalize(self.mantissa_re, self.mantissa_im, self.exp2))

    def log_abs(self) -> float:
        """Natural log of the modulus; -inf for zero"""
        if self.is_zero():
            return -math.inf
        return math.log(math.hypot(self.mantissa_re, self.mantissa_im)) + self.exp2 * LN2

    def to_complex(self) -> complex:
        try:
            return complex(
                math.ldexp(self.mantissa_re, self.exp2),
                math.ldexp(self.mantissa_im, self.exp2),
            )
        except OverflowError:
            raise MagnitudeOutOfRange(f"2**{self.exp2} does not fit a double") from None

    def to_triple(self) -> Tuple[float, float, int]:
        return self.mantissa_re, self.mantissa_im, self.exp2

    # Arithmetic

    def __neg__(self) -> "ScaledComplex":
        if self.is_zero():
            return self
        return ScaledComplex(-self.mantissa_re, -self.mantissa_im, self.exp2)

    def __add__(self, other: "ScaledComplex") -> "ScaledComplex":
        other = _coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        big, small = (self, other) if self.exp2 >= other.exp2 else (other, self)
        gap = big.exp2 - small.exp2
        if gap > 1100:
            return big
        re = big.mantissa_re + math.ldexp(small.mantissa_re, -gap)
        im = big.mantissa_im + math.ldexp(small.mantissa_im, -gap)
        return ScaledComplex.from_parts(re, im, big.exp2)

    __radd__ = __add__

    def __sub__(self, other: "ScaledComplex") -> "ScaledComplex":
        return self + (-_coerce(other))

    def __mul__(self, other: Union["ScaledComplex", Number]) -> "ScaledComplex":
        other = _coerce(other)
        if self.is_zero() or other.is_zero():
            return ScaledComplex.zero()
        if other.mantissa_im == 0.0:
            re = self.mantissa_re * other.mantissa_re
            im = self.mantissa_im * other.mantissa_re
        elif self.mantissa_im == 0.0:
            re = other.mantissa_re * self.mantissa_re
            im = other.mantissa_im * self.mantissa_re
        else:
            m = self.mantissa * other.mantissa
            re, im = m.real, m.imag
        return ScaledComplex.from_parts(re, im, self.exp2 + other.exp2)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["ScaledComplex", Number]) -> "ScaledComplex":
        other = _coerce(other)
        if other.is_zero():
            raise InvalidParameter("division by zero")
        if self.is_zero():
            return self
        if other.mantissa_im == 0.0:
            # real divisor: one correctly rounded division per component
            re = self.mantissa_re / other.mantissa_re
            im = self.mantissa_im / other.mantissa_re
        else:
            m = self.mantissa / other.mantissa
            re, im = m.real, m.imag
        return ScaledComplex.from_parts(re, im, self.exp2 - other.exp2)

    def __pow__(self, k: int) -> "ScaledComplex":
        if k < 0:
            return ScaledComplex.one() / (self ** (-k))
        result, base = ScaledComplex.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _coerce(value: Union[ScaledComplex, Number]) -> ScaledComplex:
    if isinstance(value, ScaledComplex):
        return value
    return ScaledComplex.from_complex(value)


def relative_difference(a: ScaledComplex, b: ScaledComplex) -> float:
    """|a - b| / max(|a|, |b|), computed without leaving scaled arithmetic"""
    if a.is_zero() and b.is_zero():
        return 0.0
    diff = a - b
    if diff.is_zero():
        return 0.0
    return math.exp(diff.log_abs() - max(a.log_abs(), b.log_abs()))


@lru_cache(maxsize=None)
def factorial_scaled(k: int) -> ScaledComplex:
    """
    k! as a scaled value

    The binary exponent comes from log-gamma; the mantissa is the exact
    integer factorial divided by that power of two, rounded once.
    """
    if k < 0:
        raise InvalidParameter(f"factorial of negative integer {k}")
    exponent = int(math.floor(gammaln(k + 1) / LN2))
    exponent = max(exponent, 0)
    mantissa = math.factorial(k) / (1 << exponent)
    return ScaledComplex.from_parts(mantissa, 0.0, exponent)


@lru_cache(maxsize=None)
def inverse_factorial(k: int) -> ScaledComplex:
    """1/k! obtained by mantissa division, matching the Borel transform of all-ones"""
    return ScaledComplex.one() / factorial_scaled(k)


# Vectorized helpers over (mantissa array, exponent array) pairs


def ldexp_complex(mantissas: np.ndarray, exps: np.ndarray) -> np.ndarray:
    """Elementwise mantissa * 2**exp for complex mantissas"""
    with np.errstate(over="ignore", under="ignore"):
        re = np.ldexp(np.real(mantissas), exps)
        im = np.ldexp(np.imag(mantissas), exps)
    return re + 1j * im


def rebalance(mantissas: np.ndarray, exps: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Move the magnitude of every mantissa into its exponent (modulus in [1, 2))"""
    modulus = np.abs(mantissas)
    zero = modulus == 0
    _, e = np.frexp(np.where(zero, 1.0, modulus))
    shift = (e - 1).astype(np.int64)
    scaled = ldexp_complex(mantissas, -shift)
    return np.where(zero, 0.0, scaled), np.where(zero, 0, exps + shift)


def sum_scaled(mantissas: np.ndarray, exps: np.ndarray) -> ScaledComplex:
    """Sum of scaled terms, aligned on the largest exponent"""
    mantissas = np.asarray(mantissas, dtype=np.complex128)
    exps = np.asarray(exps, dtype=np.int64)
    nonzero = mantissas != 0
    if not np.any(nonzero):
        return ScaledComplex.zero()
    top = int(np.max(exps[nonzero]))
    shifts = np.maximum(exps - top, -1100)
    total = np.sum(np.where(nonzero, ldexp_complex(mantissas, shifts), 0.0))
    return ScaledComplex.from_parts(total.real, total.imag, top)
