"""
Valency Measurement
Argument-principle zero counts on circles and grid lower bounds for the valency of a series
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .errors import (
    InvalidParameter,
    NoCertifiedTarget,
    SeriesNotTrusted,
    TargetNearContour,
)
from .series import PowerSeries, evaluate_many, tail_bound

logger = logging.getLogger(__name__)

INTEGER_TOLERANCE = 1e-6
DEFAULT_MIN_MODULUS_REL = 1e-9
TARGET_OFFSET_REL = 1e-3
DEDUP_REL = 1e-6

# low-discrepancy generators for ring radii and angles of the target grid
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SILVER = math.sqrt(2.0) - 1.0


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ContourSpec:
    """
    Sampling of the circle |z| = radius

    min_modulus is the guard distance between f - c and zero on the samples;
    None means min_modulus_rel (1e-9 by default) times the largest sampled |f - c|.
    """

    radius: float
    initial_samples: int = 1024
    max_samples: int = 1048576
    min_modulus: Optional[float] = None
    max_phase_step: float = math.pi / 2
    min_modulus_rel: float = DEFAULT_MIN_MODULUS_REL

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise InvalidParameter(f"radius must be a finite r > 0, got {self.radius!r}")
        if not (_is_power_of_two(self.initial_samples) and self.initial_samples >= 64):
            raise InvalidParameter(f"initial_samples must be a power of two >= 64, got {self.initial_samples}")
        if not _is_power_of_two(self.max_samples):
            raise InvalidParameter(f"max_samples must be a power of two, got {self.max_samples}")
        if self.initial_samples > self.max_samples:
            raise InvalidParameter("initial_samples exceeds max_samples")
        if not 0 < self.max_phase_step < math.pi:
            raise InvalidParameter(f"max_phase_step must lie in (0, pi), got {self.max_phase_step}")
        if self.min_modulus is not None and not self.min_modulus > 0:
            raise InvalidParameter(f"min_modulus must be > 0, got {self.min_modulus}")
        if not self.min_modulus_rel > 0:
            raise InvalidParameter(f"min_modulus_rel must be > 0, got {self.min_modulus_rel}")


@dataclass(frozen=True)
class WindingResult:
    count: int
    certified: bool
    raw_winding: float
    samples: int
    min_modulus: float
    max_phase_step: float

    def __iter__(self) -> Iterator:
        return iter((self.count, self.certified))


@dataclass(frozen=True)
class TargetCount:
    c: complex
    count: int
    certified: bool


@dataclass(frozen=True)
class ValencyReport:
    radius: float
    targets: Tuple[TargetCount, ...]
    max_count: int
    grid_description: str

    @property
    def certified_targets(self) -> int:
        return sum(1 for t in self.targets if t.certified)


def _contour(radius: float, n: int) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def winding_number(f: PowerSeries, c: complex, spec: ContourSpec) -> WindingResult:
    """
    Number of solutions of f(z) = c in |z| < radius, with multiplicity

    The phase of f - c is tracked through the ratios of consecutive samples;
    the sample count doubles until every phase step is below
    spec.max_phase_step or spec.max_samples is reached.
    """
    c = complex(c)
    tail = tail_bound(f, spec.radius)
    if not math.isfinite(tail):
        raise SeriesNotTrusted(spec.radius, tail)

    n = spec.initial_samples
    while True:
        w = evaluate_many(f, _contour(spec.radius, n)) - c
        modulus = np.abs(w)
        smallest, largest = float(np.min(modulus)), float(np.max(modulus))
        guard = spec.min_modulus if spec.min_modulus is not None else spec.min_modulus_rel * largest
        if largest == 0 or smallest < guard:
            raise TargetNearContour(c, smallest, guard)
        if not tail < guard / 2:
            raise SeriesNotTrusted(spec.radius, tail)

        steps = np.angle(np.roll(w, -1) / w)
        largest_step = float(np.max(np.abs(steps)))
        converged = largest_step < spec.max_phase_step
        if converged or n >= spec.max_samples:
            break
        logger.debug(f"phase step {largest_step:.3g} with {n} samples, refining")
        n *= 2

    raw = float(np.sum(steps)) / (2 * math.pi)
    count = int(round(raw))
    certified = bool(converged and abs(raw - count) <= INTEGER_TOLERANCE)
    if not certified:
        logger.warning(
            f"uncertified winding for '{f.label}' at c={c}: raw {raw:.9g}, "
            f"largest phase step {largest_step:.3g} with {n} samples"
        )
    return WindingResult(count, certified, raw, n, guard, largest_step)


def count_zeros(f: PowerSeries, spec: ContourSpec) -> WindingResult:
    return winding_number(f, 0.0, spec)


def target_grid(f: PowerSeries, radius: float, grid_size: int, seed: int) -> List[complex]:
    """
    Candidate values c, sampled from the image of the disk

    Ring j and angle i come from fixed low-discrepancy sequences and points
    are visited shell by shell (by max(j, i)), so the grid for G is a prefix
    of the grid for G + 1. Each image value gets an offset of relative size
    1e-3 from a generator seeded with (seed, j, i); values within a relative
    1e-6 of an earlier one are dropped.
    """
    if grid_size < 1:
        raise InvalidParameter(f"grid size must be >= 1, got {grid_size}")
    if seed < 0:
        raise InvalidParameter(f"seed must be >= 0, got {seed}")

    order = sorted(
        ((j, i) for j in range(grid_size) for i in range(grid_size)),
        key=lambda ji: (max(ji), ji),
    )
    rings = radius * (0.05 + 0.9 * np.modf((np.arange(grid_size) + 1) * _GOLDEN)[0])
    angles = 2 * np.pi * np.modf((np.arange(grid_size) + 1) * _SILVER)[0]
    points = np.array([rings[j] * np.exp(1j * angles[i]) for j, i in order])
    images = evaluate_many(f, points)

    targets: List[complex] = []
    kept = np.empty(0, dtype=np.complex128)
    for (j, i), w in zip(order, images):
        phase = np.random.default_rng([seed, j, i]).uniform(0.0, 2 * np.pi)
        c = complex(w + TARGET_OFFSET_REL * abs(w) * np.exp(1j * phase))
        if kept.size:
            scale = np.maximum(np.abs(kept), abs(c))
            if np.any(np.abs(kept - c) <= DEDUP_REL * scale):
                continue
        targets.append(c)
        kept = np.append(kept, c)
    return targets


def valency_lower_bound(
    f: PowerSeries,
    spec: ContourSpec,
    grid_size: int,
    seed: int,
    workers: int = 1,
) -> ValencyReport:
    """
    Largest certified count of solutions of f(z) = c over a grid of targets c

    A lower bound for the valency of f on the disk. Targets that fail the
    contour guard or certification are kept with count 0.
    """
    tail = tail_bound(f, spec.radius)
    if not math.isfinite(tail):
        raise SeriesNotTrusted(spec.radius, tail)
    targets = target_grid(f, spec.radius, grid_size, seed)

    def count_target(c: complex) -> TargetCount:
        try:
            result = winding_number(f, c, spec)
        except (TargetNearContour, SeriesNotTrusted) as e:
            logger.debug(f"target {c} skipped: {e}")
            return TargetCount(c, 0, False)
        return TargetCount(c, result.count, result.certified)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            counts = tuple(executor.map(count_target, targets))
    else:
        counts = tuple(count_target(c) for c in targets)

    certified = [t.count for t in counts if t.certified]
    if not certified:
        raise NoCertifiedTarget(len(counts))
    description = (
        f"{grid_size}x{grid_size} image grid on rings in [0.05, 0.95]*{spec.radius:.6g}, "
        f"seed {seed}, {len(counts)} targets after dedup"
    )
    logger.info(f"valency of '{f.label}' on |z| < {spec.radius:.6g}: >= {max(certified)} ({len(certified)} certified)")
    return ValencyReport(spec.radius, counts, max(certified), description)
