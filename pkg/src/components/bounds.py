"""
Valency Bounds
Explicit zero and valency bounds for Taylor-dominated functions and their Borel transforms.

Every quantity is carried in natural-log space so that p up to a few hundred
and R up to a few thousand stay inside double range.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.special import gammaln

from .domination import fit_biernacki
from .errors import InvalidParameter, ScanNotConverged
from .series import PowerSeries

logger = logging.getLogger(__name__)

LOG_BASE_WARNING = "log is taken as the natural logarithm; the zero bound never states its base"
RADIUS_WARNING = (
    "q-valency is stated on D_R' with R' < R, but the zero bound it rests on needs R' < R/4; "
    "valid_radius reports R/4"
)
ZERO_BOUND_NOTE = "zero bound holds on D_R' for R' < R/4"

# eta_scan termination
DESCENT_STEPS = 32
DESCENT_NATS = 50.0
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """All intermediate quantities of the valency bound q for the Borel transform"""

    p: int
    R: float
    A: float
    log_eta: float
    eta_argmax_k: int
    log_eta1_bound: float
    log_eta2_bound: float
    log_nu: float
    log_C: float
    q: float
    valid_radius: float
    warnings: Tuple[str, ...] = field(default=(LOG_BASE_WARNING, RADIUS_WARNING, ZERO_BOUND_NOTE))

    @property
    def C(self) -> float:
        return math.exp(self.log_C) if self.log_C < 709.0 else math.inf

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "R": self.R,
            "A": self.A,
            "log_eta": self.log_eta,
            "eta_argmax_k": self.eta_argmax_k,
            "log_eta1_bound": self.log_eta1_bound,
            "log_eta2_bound": self.log_eta2_bound,
            "log_nu": self.log_nu,
            "log_C": self.log_C,
            "C": self.C,
            "q": self.q,
            "valid_radius": self.valid_radius,
        }


def _check_p_R(p: int, R: float):
    if int(p) != p or p < 1:
        raise InvalidParameter(f"p must be an integer >= 1, got {p!r}")
    if not (math.isfinite(R) and R >= 1):
        raise InvalidParameter(f"R must be a finite R >= 1, got {R!r}; rescale first for R < 1")


def eta_scan(p: int, R: float) -> Tuple[float, int]:
    """
    log of eta = max_{k >= p+1} k^(2p-1) R^k / k! and the maximizing k

    Forward scan; a new maximum must beat the current one by a relative
    1e-12 so that ties resolve to the smallest k. The scan stops once the
    term has decreased 32 times in a row and sits 50 nats below the maximum.
    """
    _check_p_R(p, R)
    p = int(p)
    log_r = math.log(R)
    cap = max(3 * p, 20 * math.ceil(R), 2000)

    best_log, best_k = -math.inf, None
    previous = None
    decreases = 0
    for k in range(p + 1, cap + 1):
        term = (2 * p - 1) * math.log(k) + k * log_r - float(gammaln(k + 1))
        if best_k is None or term > best_log + TIE_TOLERANCE * max(1.0, abs(best_log)):
            best_log, best_k = term, k
        decreases = decreases + 1 if previous is not None and term < previous else 0
        previous = term
        if decreases >= DESCENT_STEPS and term <= best_log - DESCENT_NATS:
            logger.debug(f"eta_scan(p={p}, R={R}) stopped at k={k}, argmax {best_k}")
            return best_log, best_k
    raise ScanNotConverged(p, R, cap)


def eta_closed_bounds(p: int, R: float) -> Tuple[float, float]:
    """
    Closed-form bounds on log eta

    eta1 = (3p)^(2p-1) R^(3p) / (p+1)!  (largest numerator over smallest denominator)
    eta2 = 3^(2p) R^(2p-1) e^R          (Stirling form)
    """
    log_r = math.log(R)
    log_eta1 = (2 * p - 1) * math.log(3 * p) + 3 * p * log_r - float(gammaln(p + 2))
    log_eta2 = 2 * p * math.log(3) + (2 * p - 1) * log_r + R
    return log_eta1, log_eta2


def nu(p: int, R: float) -> float:
    """log of min{R, R^p / p!}"""
    log_r = math.log(R)
    return min(log_r, p * log_r - float(gammaln(p + 1)))


def ry_zero_bound(N: int, C: float) -> float:
    """
    At most 5N + 5 ln(C + 2) zeros of an (N, R, C)-dominated function

    The count is valid in D_R' for R' < R/4 (see ZERO_BOUND_NOTE).
    """
    if int(N) != N or N < 0:
        raise InvalidParameter(f"N must be an integer >= 0, got {N!r}")
    if not C >= 0:
        raise InvalidParameter(f"invalid constant: C must be >= 0, got {C!r}")
    return 5.0 * N + 5.0 * math.log(C + 2.0)


@dataclass(frozen=True)
class ZeroBound:
    """A zero count bound together with the disk it applies on"""

    N: int
    C: float
    count: float
    note: str = ZERO_BOUND_NOTE

    def to_dict(self) -> dict:
        return {"N": self.N, "C": self.C, "count": self.count, "note": self.note}


def zero_bound_report(N: int, C: float) -> ZeroBound:
    return ZeroBound(int(N), float(C), ry_zero_bound(N, C))


def _compose(p: int, R: float, A: float, log_A: float) -> BoundReport:
    log_eta, argmax_k = eta_scan(p, R)
    log_eta1, log_eta2 = eta_closed_bounds(p, R)
    log_nu = nu(p, R)
    log_C = log_A + log_eta - log_nu
    # ln(e^log_C + 2) without overflow
    q = 5.0 * p + 5.0 * float(np.logaddexp(log_C, math.log(2.0)))
    return BoundReport(
        p=int(p),
        R=float(R),
        A=float(A),
        log_eta=log_eta,
        eta_argmax_k=argmax_k,
        log_eta1_bound=log_eta1,
        log_eta2_bound=log_eta2,
        log_nu=log_nu,
        log_C=log_C,
        q=q,
        valid_radius=R / 4.0,
    )


def q_bound(p: int, R: float, A: float = 1.0) -> BoundReport:
    """q = 5p + 5 ln(A eta / nu + 2): valency bound for the Borel transform of the scaled function"""
    _check_p_R(p, R)
    if not (math.isfinite(A) and A > 0):
        raise InvalidParameter(f"A must be a finite A > 0, got {A!r}")
    return _compose(p, R, A, math.log(A))


def borel_valency_bound(f: PowerSeries, p: int, R: float, k_max: int) -> BoundReport:
    """
    The bound pipeline for a concrete series

    A(p) is fitted on f at R = 1 and fed to the q formula. A vanishing fit
    (a pure head) gives log_C = -inf and q = 5p + 5 ln 2.
    """
    _check_p_R(p, R)
    A = fit_biernacki(f, p, k_max)
    with np.errstate(divide="ignore"):
        log_A = float(np.log(A))
    logger.info(f"fitted A({p}) = {A:.6g} on '{f.label}' over k <= {k_max}")
    return _compose(p, R, A, log_A)


def headline_envelope(p: int, R: float) -> float:
    """p (1 + ln p + ln R) + R, the scale the valency bound is compared against"""
    return p * (1.0 + math.log(p) + math.log(R)) + R


def power_shape_constant(N: int, m: float, rho: float, A: float = 1.0) -> float:
    """
    C = A max_{k >= N+1} k^m rho^(k-N)

    Turns (N, 1, A k^m) domination into (N, rho, C) domination on D_rho.
    """
    if int(N) != N or N < 0:
        raise InvalidParameter(f"N must be an integer >= 0, got {N!r}")
    if not 0 < rho < 1:
        raise InvalidParameter(f"rho must lie in (0, 1), got {rho!r}")
    if not (m >= 0 and A > 0):
        raise InvalidParameter(f"need m >= 0 and A > 0, got m={m!r}, A={A!r}")

    log_rho = math.log(rho)
    # k^m rho^k is log-concave in k with its peak at -m / ln(rho)
    peak = -m / log_rho
    candidates = {N + 1, max(N + 1, math.floor(peak)), max(N + 1, math.ceil(peak))}
    best = max(m * math.log(k) + (k - N) * log_rho for k in candidates)
    return A * math.exp(best)


def power_shape_zero_bound(N: int, m: float, rho: float, A: float = 1.0) -> float:
    return ry_zero_bound(N, power_shape_constant(N, m, rho, A))


def transferred_constant_holds(f: PowerSeries, p: int, R: float, A: float, rtol: float = 1e-9) -> bool:
    """
    Check the two steps that move domination to the Borel side for one series

    With |a_k| <= A k^(2p-1) max_{1<=i<=p} |a_i| assumed, verifies

        max_{1<=i<=p} |a_i| R^i / i!  >=  nu max_{1<=i<=p} |a_i|
        |a_k| R^k / k!  <=  (A eta / nu) max_{1<=i<=p} |a_i| R^i / i!   for p < k <= order
    """
    _check_p_R(p, R)
    if p >= f.order:
        raise InvalidParameter(f"series order {f.order} must exceed p={p}")
    log_r = math.log(R)
    k = np.arange(f.order + 1)
    log_borel = f.log_abs + k * log_r - gammaln(k + 1)

    head = float(np.max(f.log_abs[1 : p + 1]))
    borel_head = float(np.max(log_borel[1 : p + 1]))
    log_nu = nu(p, R)
    slack = math.log1p(rtol)

    head_ok = borel_head + slack >= log_nu + head
    log_eta, _ = eta_scan(p, R)
    transferred = math.log(A) + log_eta - log_nu + borel_head
    tail_ok = bool(np.all(log_borel[p + 1 :] <= transferred + slack))
    if not (head_ok and tail_ok):
        logger.warning(f"transfer check failed for '{f.label}' (p={p}, R={R}, A={A})")
    return bool(head_ok and tail_ok)
