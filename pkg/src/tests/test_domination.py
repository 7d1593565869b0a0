"""
Test domination constants, fits and checks
"""
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.components.domination import (
    ConstantShape,
    DominationProfile,
    PowerShape,
    check_domination,
    fit_biernacki,
    minimal_constant,
    minimal_power_factor,
    weighted_log_excess,
)
from src.components.errors import DegenerateHead, InvalidParameter
from src.components.families import ExampleId, build
from src.components.series import PowerSeries, monomial, polynomial, scale_var


def geometric(order: int = 100) -> PowerSeries:
    return build(ExampleId("geometric", 1, order))


def test_minimal_constant_examples():
    """Test the enumerated minimal constants"""
    assert minimal_constant(geometric(), 0, 0.5, 100) == pytest.approx(0.5, rel=1e-15)
    assert minimal_constant(monomial(1, order=10), 1, 3.0, 10) == 0.0
    print("PASS: Minimal constant examples test passed")


def test_degenerate_head():
    f = polynomial([0, 0, 0, 1])
    with pytest.raises(DegenerateHead):
        minimal_constant(f, 2, 1.0, 10)


def test_argument_checks():
    f = geometric(20)
    with pytest.raises(InvalidParameter):
        minimal_constant(f, 0, 1.0, 21)
    with pytest.raises(InvalidParameter):
        minimal_constant(f, 5, 1.0, 5)
    with pytest.raises(InvalidParameter):
        minimal_constant(f, 0, 1.0, 10, include_constant_term=False)
    with pytest.raises(InvalidParameter):
        DominationProfile(-1, 1.0, ConstantShape(1.0))


def test_check_fails_below_fitted_constant():
    f = geometric()
    C = minimal_constant(f, 0, 0.5, 100)
    report = check_domination(f, DominationProfile(0, 0.5, ConstantShape(0.99 * C)), 100)
    assert not report.holds
    assert report.worst_k == 1
    assert report.k_range == (1, 100)


def test_fitted_constant_checks_to_one():
    f = build(ExampleId("fp_tilde", 3, 200))
    A = minimal_power_factor(f, 3, 0.9, 3.0, 200, include_constant_term=False)
    report = check_domination(f, DominationProfile(3, 0.9, PowerShape(A, 3.0), False), 200)
    assert report.holds
    assert report.worst_ratio == 1.0


def test_ties_resolve_to_smallest_k():
    f = polynomial([1, 0, 2, 2])
    report = check_domination(f, DominationProfile(0, 1.0, ConstantShape(1.0)), 3)
    assert report.worst_k == 2
    assert report.worst_ratio == pytest.approx(2.0)


def test_constant_term_exclusion_with_zero_a0():
    f = build(ExampleId("koebe", 1, 50))
    with_a0 = minimal_power_factor(f, 1, 0.9, 1.0, 50, include_constant_term=True)
    without = minimal_power_factor(f, 1, 0.9, 1.0, 50, include_constant_term=False)
    assert with_a0 == without


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5, 6])
def test_fp_tilde_power_fit(p):
    f = build(ExampleId("fp_tilde", p, 400))
    assert minimal_power_factor(f, p, 0.999, p, 400, include_constant_term=False) <= 1.1


def test_koebe_fit():
    f = build(ExampleId("koebe", 1, 400))
    A = minimal_power_factor(f, 1, 0.99, 1, 400, include_constant_term=False)
    assert abs(A - 0.99) <= 1e-12


def test_biernacki_fit():
    """Test A(p) on a p-valent polynomial-like series"""
    f = build(ExampleId("koebe", 1, 100))
    assert fit_biernacki(f, 1, 100) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(InvalidParameter):
        fit_biernacki(f, 0, 100)


def test_weighted_log_excess_zero_coefficients():
    f = polynomial([1, 0, 3], order=6)
    k, values = weighted_log_excess(f, 0, 1.0, 0.0, 6, True)
    assert list(k) == [1, 2, 3, 4, 5, 6]
    assert values[0] == -np.inf
    assert values[1] == pytest.approx(np.log(3.0))


@given(
    st.lists(st.complex_numbers(min_magnitude=1e-2, max_magnitude=1e2, allow_nan=False, allow_infinity=False),
             min_size=8, max_size=30),
    st.floats(min_value=0.5, max_value=2.0),
    st.floats(min_value=0.5, max_value=2.0),
    st.integers(min_value=0, max_value=4),
)
def test_scale_invariance(values, s, R, N):
    f = PowerSeries.from_complex(values)
    k_max = f.order
    direct = minimal_constant(f, N, R * s, k_max)
    scaled = minimal_constant(scale_var(f, s), N, R, k_max)
    assert abs(direct - scaled) <= 1e-12 * max(direct, scaled)


@given(
    st.lists(st.complex_numbers(min_magnitude=1e-2, max_magnitude=1e2, allow_nan=False, allow_infinity=False),
             min_size=8, max_size=30),
    st.floats(min_value=0.5, max_value=2.0),
    st.integers(min_value=0, max_value=4),
    st.data(),
)
def test_minimal_constant_monotone_in_N_and_k_max(values, R, N, data):
    """Test that C shrinks as N grows and grows with k_max"""
    f = PowerSeries.from_complex(values)
    k_max = data.draw(st.integers(min_value=N + 2, max_value=f.order))
    shorter = data.draw(st.integers(min_value=N + 1, max_value=k_max))
    C = minimal_constant(f, N, R, k_max)
    assert minimal_constant(f, N + 1, R, k_max) <= C
    assert minimal_constant(f, N, R, shorter) <= C


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
