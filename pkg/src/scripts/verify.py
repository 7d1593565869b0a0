#!/usr/bin/env python3
"""
Acceptance Suites
Deterministic checks of the bound pipeline, domination fits, zero counts and Borel structure.

Each check yields one row (suite, check, parameters, measured, expected, passed);
rows never carry timings, so two runs with the same seed produce identical tables.
"""

import cmath
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence

import numpy as np
from scipy.special import gammaln

from src.components.borel import QuadratureSpec, borel, inverse_borel_integral
from src.components.bounds import (
    eta_scan,
    headline_envelope,
    nu,
    power_shape_zero_bound,
    q_bound,
    ry_zero_bound,
    transferred_constant_holds,
    zero_bound_report,
)
from src.components.domination import minimal_constant, minimal_power_factor
from src.components.families import (
    ExampleId,
    analytic_solutions,
    borel_counterpart,
    build,
    exponential_series,
)
from src.components.report import format_float, rows_to_csv
from src.components.series import (
    PowerSeries,
    add_constant,
    max_relative_difference,
    polynomial_from_roots,
    scale_var,
)
from src.components.valency import ContourSpec, count_zeros, valency_lower_bound

logger = logging.getLogger(__name__)

COLUMNS = ["suite", "check", "parameters", "measured", "expected", "passed"]
SUITES = ("bounds", "domination", "valency", "borel", "remark")

GRID_P = range(1, 31)
GRID_R = (1, 2, 5, 10, 20, 50, 100)


def _row(suite: str, check: str, parameters: str, measured: float, expected: str, passed: bool) -> Dict:
    return {
        "suite": suite,
        "check": check,
        "parameters": parameters,
        "measured": float(measured),
        "expected": expected,
        "passed": bool(passed),
    }


def _fan_out(func: Callable, items: Sequence, threads: int) -> List:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(func, items))
    return [func(item) for item in items]


def _random_coefficients(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.normal(size=size) + 1j * rng.normal(size=size)


# Bounds


def suite_bounds(seed: int, threads: int) -> List[Dict]:
    rows = []
    q = q_bound(1, 1, 1).q
    expected = 5 + 5 * math.log(3)
    rows.append(_row("bounds", "q_bound", "p=1 R=1 A=1", q, format_float(expected), abs(q - expected) <= 1e-9))

    log_eta, k = eta_scan(1, 4)
    rows.append(_row("bounds", "eta_scan", "p=1 R=4", math.exp(log_eta), "128/3 at k=4",
                     abs(math.exp(log_eta) - 128 / 3) <= 1e-9 * 128 / 3 and k == 4))

    log_nu = nu(3, 2)
    rows.append(_row("bounds", "nu", "p=3 R=2", log_nu, "ln(4/3)", abs(log_nu - math.log(4 / 3)) <= 1e-12))

    zero_bound = zero_bound_report(1, math.e - 2)
    rows.append(_row("bounds", "ry_zero_bound", f"N=1 C=e-2 ({zero_bound.note})", zero_bound.count, "10",
                     abs(zero_bound.count - 10) <= 1e-9))

    # proof chain and envelope over the (p, R) grid
    excess, ratios = [], []
    for p in GRID_P:
        for R in GRID_R:
            report = q_bound(p, R, 1.0)
            excess.append(report.log_eta - max(report.log_eta1_bound, report.log_eta2_bound))
            ratios.append(report.q / headline_envelope(p, R))
    rows.append(_row("bounds", "eta_chain", "p=1..30 R grid", max(excess), "<= 1e-9", max(excess) <= 1e-9))
    rows.append(_row("bounds", "envelope_max", "p=1..30 R grid A=1", max(ratios), "<= 20", max(ratios) <= 20))
    rows.append(_row("bounds", "envelope_min", "p=1..30 R grid A=1", min(ratios), "> 0", min(ratios) > 0))

    # head inequality over random coefficient vectors
    rng = np.random.default_rng([seed, 1])
    head_ok = 0
    for _ in range(1000):
        p = int(rng.integers(1, 31))
        R = float(rng.choice(GRID_R))
        a = np.abs(_random_coefficients(rng, p))
        log_terms = np.log(a) + np.arange(1, p + 1) * math.log(R) - gammaln(np.arange(2, p + 2))
        head_ok += bool(np.max(log_terms) + 1e-12 >= nu(p, R) + math.log(np.max(a)))
    rows.append(_row("bounds", "nu_head", "1000 random vectors", head_ok, "1000", head_ok == 1000))

    # saturated Biernacki shapes transfer to the Borel side with A eta / nu
    transfer_ok = 0
    for _ in range(200):
        p = int(rng.integers(1, 7))
        R = float(rng.choice(GRID_R[:4]))
        A = float(rng.uniform(0.5, 2.0))
        order = 4 * p + 20
        head = _random_coefficients(rng, p)
        scale = float(np.max(np.abs(head)))
        phases = np.exp(2j * np.pi * rng.uniform(size=order - p))
        tail = [A * k ** (2 * p - 1) * scale * w for k, w in zip(range(p + 1, order + 1), phases)]
        f = PowerSeries.from_complex([0j, *head, *tail], "saturated")
        transfer_ok += transferred_constant_holds(f, p, R, A)
    rows.append(_row("bounds", "domination_transfer", "200 saturated constructions", transfer_ok, "200",
                     transfer_ok == 200))

    # polynomials with every root in D_0.2 against the zero bound with N = 0
    def zero_bound_case(roots: np.ndarray) -> bool:
        f = polynomial_from_roots(roots, "roots")
        C = minimal_constant(f, 0, 1.0, f.order, include_constant_term=True)
        return len(roots) <= ry_zero_bound(0, C)

    cases = []
    for _ in range(200):
        d = int(rng.integers(1, 13))
        radii = 0.2 * np.sqrt(rng.uniform(size=d))
        cases.append(radii * np.exp(2j * np.pi * rng.uniform(size=d)))
    held = sum(_fan_out(zero_bound_case, cases, threads))
    rows.append(_row("bounds", "zero_bound_small_roots", "200 polynomials, roots in D_0.2", held, "200", held == 200))
    return rows


# Domination


def suite_domination(seed: int, threads: int) -> List[Dict]:
    rows = []
    for p in range(1, 7):
        f = build(ExampleId("fp_tilde", p, 400))
        A = minimal_power_factor(f, p, 0.999, p, 400, include_constant_term=False)
        rows.append(_row("domination", "fp_tilde_power_fit", f"p={p} R=0.999 m={p} k_max=400", A, "<= 1.1", A <= 1.1))

    koebe = build(ExampleId("koebe", 1, 400))
    A = minimal_power_factor(koebe, 1, 0.99, 1, 400, include_constant_term=False)
    rows.append(_row("domination", "koebe_fit", "N=1 R=0.99 m=1 k_max=400", A, "0.99", abs(A - 0.99) <= 1e-12))

    rng = np.random.default_rng([seed, 2])
    worst = 0.0
    for _ in range(100):
        f = PowerSeries.from_complex(_random_coefficients(rng, 31), "random")
        s = float(rng.uniform(0.5, 2.0))
        R = float(rng.uniform(0.5, 2.0))
        N = int(rng.integers(0, 5))
        direct = minimal_constant(f, N, R * s, 30)
        scaled = minimal_constant(scale_var(f, s), N, R, 30)
        worst = max(worst, abs(direct - scaled) / max(direct, scaled))
    rows.append(_row("domination", "scale_invariance", "100 random series", worst, "<= 1e-12", worst <= 1e-12))
    return rows


# Valency


def _inside_count(roots: np.ndarray) -> int:
    return int(np.sum(np.abs(roots) < 1.0))


def suite_valency(seed: int, threads: int) -> List[Dict]:
    rows = []
    rng = np.random.default_rng([seed, 3])
    cases = []
    for _ in range(500):
        d = int(rng.integers(1, 13))
        roots = []
        while len(roots) < d:
            z = 2.0 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
            if abs(abs(z) - 1.0) > 0.05:
                roots.append(z)
        cases.append(np.array(roots))

    spec = ContourSpec(1.0, min_modulus=1e-14)

    def agrees(roots: np.ndarray) -> bool:
        count, certified = count_zeros(polynomial_from_roots(roots, "roots"), spec)
        return certified and count == _inside_count(roots)

    matched = sum(_fan_out(agrees, cases, threads))
    rows.append(_row("valency", "winding_oracle", "500 polynomials deg<=12, roots in D_2", matched, "500",
                     matched == 500))

    exp_minus_one = add_constant(exponential_series(100), -1)
    for r in (5, 10, 20):
        expected = len(analytic_solutions(ExampleId("geometric"), 1, r))
        count, certified = count_zeros(exp_minus_one, ContourSpec(r))
        rows.append(_row("valency", "exp_minus_one_zeros", f"r={r} order=100", count, str(expected),
                         certified and count == expected))

    f3 = build(ExampleId("fp", 3, 120))
    expected = len(analytic_solutions(ExampleId("fp", 3), 0, 7))
    count, certified = count_zeros(f3, ContourSpec(7))
    rows.append(_row("valency", "fp_zeros", "p=3 r=7 order=120", count, str(expected),
                     certified and count == expected))

    h = add_constant(build(ExampleId("exp_power", 2, 100)), -1)
    expected = len(analytic_solutions(ExampleId("exp_power", 2), 1, 3))
    count, certified = count_zeros(h, ContourSpec(3))
    rows.append(_row("valency", "exp_power_zeros", "p=2 r=3 order=100", count, str(expected),
                     certified and count == expected))

    geometric = build(ExampleId("geometric", 1, 200))
    report = valency_lower_bound(geometric, ContourSpec(0.9, min_modulus=1e-6), 16, seed, workers=threads)
    rows.append(_row("valency", "geometric_univalent", "r=0.9 order=200 grid=16", report.max_count, "1",
                     report.max_count == 1))
    return rows


# Borel


def suite_borel(seed: int, threads: int) -> List[Dict]:
    rows = []
    ones = borel_counterpart(ExampleId("geometric"), 200)
    exact = borel(ones).coeffs == exponential_series(200).coeffs
    rows.append(_row("borel", "borel_of_ones", "order=200", 0.0 if exact else 1.0, "exact", exact))

    for p in range(1, 7):
        diff = max_relative_difference(borel(build(ExampleId("fp_tilde", p, 200))), build(ExampleId("fp", p, 200)))
        rows.append(_row("borel", "borel_fp_tilde", f"p={p} order=200", diff, "<= 1e-14", diff <= 1e-14))

    g = exponential_series(120)
    spec = QuadratureSpec()
    for z in (0j, 0.5 + 0j, -0.5 + 0j, 0.25 + 0.25j):
        result = inverse_borel_integral(g, z, spec)
        error = abs(result.value - 1 / (1 - z))
        rows.append(_row("borel", "inverse_integral", f"z={z.real:g}{z.imag:+g}i", error, "<= 1e-8", error <= 1e-8))
    return rows


# Remark experiment: measured valency of fp_tilde on D_rho against the p log p envelope


def suite_remark(seed: int, threads: int) -> List[Dict]:
    rows = []
    rho, order = 0.5, 200
    for p in range(1, 5):
        f = build(ExampleId("fp_tilde", p, order))
        A = minimal_power_factor(f, p, 1.0, p, order, include_constant_term=False)
        bound = power_shape_zero_bound(p, p, rho, A)
        report = valency_lower_bound(f, ContourSpec(rho), 8, seed, workers=threads)
        rows.append(_row("remark", "fp_tilde_valency", f"p={p} rho={rho} A={A:.6g}", report.max_count,
                         f"<= {bound:.6g}", report.max_count <= bound))
    return rows


_SUITE_FUNCTIONS = {
    "bounds": suite_bounds,
    "domination": suite_domination,
    "valency": suite_valency,
    "borel": suite_borel,
    "remark": suite_remark,
}


def run_suites(suite: str = "all", seed: int = 0, threads: int = 1) -> List[Dict]:
    """Run one suite or all of them, in a fixed order"""
    names = SUITES if suite == "all" else (suite,)
    rows = []
    for name in names:
        started = time.perf_counter()
        suite_rows = _SUITE_FUNCTIONS[name](seed, threads)
        failed = sum(1 for row in suite_rows if not row["passed"])
        logger.info(f"suite {name}: {len(suite_rows)} checks, {failed} failed, {time.perf_counter() - started:.2f}s")
        rows.extend(suite_rows)
    return rows


def rows_csv(rows: List[Dict]) -> str:
    return rows_to_csv(rows, COLUMNS)
