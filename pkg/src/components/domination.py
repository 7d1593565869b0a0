"""
Taylor Domination
Testing and fitting (N, R, S(k)) domination on truncated series, in log-magnitude space
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DegenerateHead, InvalidParameter
from .series import PowerSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstantShape:
    """S(k) = C"""

    C: float

    def __post_init__(self):
        if not self.C >= 0:
            raise InvalidParameter(f"domination constant must be >= 0, got {self.C}")


@dataclass(frozen=True)
class PowerShape:
    """S(k) = A * k^m"""

    A: float
    m: float

    def __post_init__(self):
        if not (self.A >= 0 and self.m >= 0):
            raise InvalidParameter(f"power shape needs A >= 0 and m >= 0, got A={self.A}, m={self.m}")


Shape = Union[ConstantShape, PowerShape]


@dataclass(frozen=True)
class DominationProfile:
    """
    The data (N, R, S(k)) of a Taylor domination property

    include_constant_term selects whether the right-hand maximum runs over
    0 <= i <= N or over 1 <= i <= N.
    """

    N: int
    R: float
    shape: Shape
    include_constant_term: bool = True

    def __post_init__(self):
        if self.N < 0:
            raise InvalidParameter(f"N must be >= 0, got {self.N}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise InvalidParameter(f"R must be a finite R > 0, got {self.R}")
        if not self.include_constant_term and self.N < 1:
            raise InvalidParameter("N must be >= 1 when the constant term is excluded")


@dataclass(frozen=True)
class DominationReport:
    holds: bool
    worst_k: int
    worst_ratio: float
    k_range: Tuple[int, int]


def weighted_log_excess(
    f: PowerSeries,
    N: int,
    R: float,
    m: float,
    k_max: int,
    include_constant_term: bool,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    log(|a_k| R^k / (k^m * max_i |a_i| R^i)) for N+1 <= k <= k_max

    Zero coefficients give -inf. Raises DegenerateHead when the right-hand
    maximum vanishes.
    """
    if N < 0:
        raise InvalidParameter(f"N must be >= 0, got {N}")
    if not include_constant_term and N < 1:
        raise InvalidParameter("N must be >= 1 when the constant term is excluded")
    if k_max > f.order:
        raise InvalidParameter(f"k_max={k_max} exceeds the order {f.order} of '{f.label}'")
    if N >= k_max:
        raise InvalidParameter(f"need N < k_max, got N={N}, k_max={k_max}")
    if not (R > 0 and math.isfinite(R)):
        raise InvalidParameter(f"R must be a finite R > 0, got {R}")

    log_r = math.log(R)
    lo = 0 if include_constant_term else 1
    i = np.arange(lo, N + 1)
    head = float(np.max(f.log_abs[lo : N + 1] + i * log_r))
    if head == -math.inf:
        raise DegenerateHead(N, include_constant_term)

    k = np.arange(N + 1, k_max + 1)
    values = f.log_abs[N + 1 : k_max + 1] + k * log_r - head
    if m:
        values = values - m * np.log(k)
    return k, values


def minimal_power_factor(
    f: PowerSeries,
    N: int,
    R: float,
    m: float,
    k_max: int,
    include_constant_term: bool = True,
) -> float:
    """Smallest A with |a_k| R^k <= A k^m max_i |a_i| R^i for N+1 <= k <= k_max"""
    _, values = weighted_log_excess(f, N, R, m, k_max, include_constant_term)
    return float(np.exp(np.max(values)))


def minimal_constant(
    f: PowerSeries,
    N: int,
    R: float,
    k_max: int,
    include_constant_term: bool = True,
) -> float:
    """Smallest C giving (N, R, C)-Taylor domination over N+1 <= k <= k_max"""
    return minimal_power_factor(f, N, R, 0.0, k_max, include_constant_term)


def fit_biernacki(f: PowerSeries, p: int, k_max: int, R: float = 1.0) -> float:
    """Empirical A(p): the power fit with N = p, m = 2p - 1 and a_0 excluded"""
    if p < 1:
        raise InvalidParameter(f"p must be >= 1, got {p}")
    return minimal_power_factor(f, p, R, 2 * p - 1, k_max, include_constant_term=False)


def check_domination(f: PowerSeries, profile: DominationProfile, k_max: int) -> DominationReport:
    """
    Test the domination inequality for every k in [N+1, k_max]

    Ratios are formed from the same log values the minimal constants use,
    so a fitted constant checks to a worst ratio of exactly 1. Ties go to
    the smallest k.
    """
    if isinstance(profile.shape, ConstantShape):
        m, scale = 0.0, profile.shape.C
    else:
        m, scale = profile.shape.m, profile.shape.A
    k, values = weighted_log_excess(f, profile.N, profile.R, m, k_max, profile.include_constant_term)

    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        if scale > 0:
            ratios = np.exp(values) / scale
        else:
            ratios = np.where(values > -np.inf, np.inf, 0.0)
    worst = int(np.argmax(ratios))
    worst_ratio = float(ratios[worst])
    report = DominationReport(
        holds=bool(worst_ratio <= 1.0),
        worst_k=int(k[worst]),
        worst_ratio=worst_ratio,
        k_range=(profile.N + 1, k_max),
    )
    if not report.holds:
        logger.debug(f"domination fails for '{f.label}': ratio {worst_ratio:.6g} at k={report.worst_k}")
    return report
