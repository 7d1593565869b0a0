"""
Test the explicit zero and valency bounds
"""
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.components.bounds import (
    LOG_BASE_WARNING,
    RADIUS_WARNING,
    ZERO_BOUND_NOTE,
    borel_valency_bound,
    eta_closed_bounds,
    eta_scan,
    headline_envelope,
    nu,
    power_shape_constant,
    power_shape_zero_bound,
    q_bound,
    ry_zero_bound,
    transferred_constant_holds,
    zero_bound_report,
)
from src.components.errors import InvalidParameter
from src.components.series import PowerSeries, polynomial

GRID_P = range(1, 31)
GRID_R = (1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0)


def test_eta_scan_examples():
    """Test eta against direct enumeration"""
    log_eta, k = eta_scan(1, 1.0)
    assert log_eta == pytest.approx(0.0, abs=1e-14)
    assert k == 2

    log_eta, k = eta_scan(1, 4.0)
    assert math.exp(log_eta) == pytest.approx(128 / 3, rel=1e-12)
    assert k == 4

    log_eta, k = eta_scan(2, 1.0)
    assert math.exp(log_eta) == pytest.approx(4.5, rel=1e-12)
    assert k == 3
    print("PASS: eta scan examples test passed")


def test_eta_scan_rejects_bad_arguments():
    with pytest.raises(InvalidParameter):
        eta_scan(0, 1.0)
    with pytest.raises(InvalidParameter):
        eta_scan(1, 0.5)
    with pytest.raises(InvalidParameter):
        eta_scan(1, math.inf)


def test_nu_examples():
    assert nu(3, 2.0) == pytest.approx(math.log(4 / 3), rel=1e-14)
    assert nu(1, 5.0) == pytest.approx(math.log(5.0))
    assert nu(2, 1.0) == pytest.approx(math.log(0.5))


def test_ry_zero_bound_examples():
    assert ry_zero_bound(1, math.e - 2) == pytest.approx(10.0, abs=1e-9)
    assert ry_zero_bound(0, 0.0) == pytest.approx(5 * math.log(2))
    assert ry_zero_bound(2, 100.0) == pytest.approx(10 + 5 * math.log(102), abs=1e-12)
    with pytest.raises(InvalidParameter):
        ry_zero_bound(1, -0.5)
    with pytest.raises(InvalidParameter):
        ry_zero_bound(-1, 1.0)


def test_zero_bound_report_carries_note():
    zero_bound = zero_bound_report(2, 100.0)
    assert zero_bound.count == ry_zero_bound(2, 100.0)
    assert zero_bound.note == ZERO_BOUND_NOTE
    assert "R/4" in zero_bound.to_dict()["note"]
    assert ZERO_BOUND_NOTE in q_bound(1, 1.0).warnings
    with pytest.raises(InvalidParameter):
        zero_bound_report(1, -1.0)


@given(
    st.integers(min_value=0, max_value=200),
    st.floats(min_value=0, max_value=1e100),
    st.floats(min_value=0, max_value=1e100),
)
def test_ry_zero_bound_is_monotone(N, c1, c2):
    lo, hi = sorted((c1, c2))
    assert ry_zero_bound(N, lo) <= ry_zero_bound(N, hi)
    assert ry_zero_bound(N, lo) <= ry_zero_bound(N + 1, lo)


def test_q_bound_examples():
    """Test the composed valency bound"""
    report = q_bound(1, 1.0, 1.0)
    assert report.C == pytest.approx(1.0, rel=1e-12)
    assert report.q == pytest.approx(5 + 5 * math.log(3), abs=1e-9)
    assert report.valid_radius == 0.25
    assert LOG_BASE_WARNING in report.warnings
    assert RADIUS_WARNING in report.warnings

    report = q_bound(2, 1.0, 1.0)
    assert report.C == pytest.approx(9.0, rel=1e-12)
    assert report.q == pytest.approx(10 + 5 * math.log(11), abs=1e-9)
    assert report.to_dict()["eta_argmax_k"] == 3
    print("PASS: q bound examples test passed")


def test_q_bound_rejects_bad_factor():
    with pytest.raises(InvalidParameter):
        q_bound(1, 1.0, 0.0)
    with pytest.raises(InvalidParameter):
        q_bound(1, 1.0, math.inf)
    with pytest.raises(InvalidParameter):
        q_bound(1, 0.9, 1.0)


def test_q_bound_stays_finite_for_large_inputs():
    report = q_bound(200, 2000.0, 1.0)
    assert math.isfinite(report.q)
    assert report.C == math.inf
    assert report.q == pytest.approx(1000 + 5 * report.log_C, rel=1e-12)


def test_proof_chain_and_envelope_on_grid():
    """Test eta <= max(eta1, eta2) and q against p(1 + ln p + ln R) + R"""
    for p in GRID_P:
        for R in GRID_R:
            report = q_bound(p, R)
            assert report.log_eta <= max(report.log_eta1_bound, report.log_eta2_bound) + 1e-9
            ratio = report.q / headline_envelope(p, R)
            assert 0 < ratio <= 20, (p, R, ratio)


def test_eta_closed_bounds_dominate_scan():
    log_eta, _ = eta_scan(5, 10.0)
    log_eta1, log_eta2 = eta_closed_bounds(5, 10.0)
    assert log_eta <= max(log_eta1, log_eta2)


def test_transfer_on_saturated_constructions():
    """Test the Borel-side inequality on series that saturate the power shape"""
    rng = np.random.default_rng(7)
    for _ in range(50):
        p = int(rng.integers(1, 5))
        R = float(rng.uniform(1.0, 20.0))
        A = float(rng.uniform(0.1, 3.0))
        order = 60
        values = np.zeros(order + 1, dtype=complex)
        values[1 : p + 1] = rng.uniform(0.1, 2.0, p) * np.exp(2j * np.pi * rng.uniform(size=p))
        head = np.max(np.abs(values[1 : p + 1]))
        k = np.arange(p + 1, order + 1)
        values[p + 1 :] = A * k ** (2 * p - 1) * head * np.exp(2j * np.pi * rng.uniform(size=k.size))
        assert transferred_constant_holds(PowerSeries.from_complex(values), p, R, A)


def test_transfer_detects_violation():
    f = polynomial([0, 1, 1000], order=10)
    assert not transferred_constant_holds(f, 1, 1.0, 1.0)


def test_borel_valency_bound_on_pure_head():
    f = polynomial([0, 2], order=8)
    report = borel_valency_bound(f, 1, 1.0, 8)
    assert report.A == 0.0
    assert report.log_C == -math.inf
    assert report.q == pytest.approx(5 + 5 * math.log(2))


def test_borel_valency_bound_uses_fit():
    f = PowerSeries.from_complex([0] + list(range(1, 41)))
    report = borel_valency_bound(f, 1, 1.0, 40)
    assert report.A == pytest.approx(1.0, rel=1e-14)
    assert report.q == pytest.approx(q_bound(1, 1.0, 1.0).q, rel=1e-12)


def test_power_shape_constant():
    assert power_shape_constant(1, 0.0, 0.5) == pytest.approx(0.5)
    assert power_shape_constant(0, 2.0, 0.5) == pytest.approx(1.125)
    assert power_shape_constant(0, 2.0, 0.5, A=2.0) == pytest.approx(2.25)
    assert power_shape_zero_bound(1, 0.0, 0.5) == pytest.approx(5 + 5 * math.log(2.5))
    with pytest.raises(InvalidParameter):
        power_shape_constant(1, 1.0, 1.0)
    with pytest.raises(InvalidParameter):
        power_shape_constant(1, 1.0, 0.5, A=0.0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
