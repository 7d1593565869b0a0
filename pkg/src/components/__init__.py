"""
Taylor Domination Components Package
Truncated power series, Borel transforms, domination fits, valency bounds and zero counting
"""

from .errors import ContractViolation, TdomError, UncertifiedResult
from .scaled import ScaledComplex
from .series import PowerSeries, evaluate, load_series, save_series, tail_bound
from .borel import QuadratureSpec, borel, inverse_borel_coeff, inverse_borel_integral
from .domination import DominationProfile, check_domination, minimal_constant, minimal_power_factor
from .bounds import BoundReport, ZeroBound, eta_scan, q_bound, ry_zero_bound, zero_bound_report
from .valency import ContourSpec, count_zeros, valency_lower_bound, winding_number
from .families import ExampleId, analytic_solutions, borel_counterpart, build
from .report import RunReport

__all__ = [
    'TdomError',
    'ContractViolation',
    'UncertifiedResult',
    'ScaledComplex',
    'PowerSeries',
    'evaluate',
    'load_series',
    'save_series',
    'tail_bound',
    'QuadratureSpec',
    'borel',
    'inverse_borel_coeff',
    'inverse_borel_integral',
    'DominationProfile',
    'check_domination',
    'minimal_constant',
    'minimal_power_factor',
    'BoundReport',
    'eta_scan',
    'q_bound',
    'ry_zero_bound',
    'ZeroBound',
    'zero_bound_report',
    'ContourSpec',
    'count_zeros',
    'valency_lower_bound',
    'winding_number',
    'ExampleId',
    'analytic_solutions',
    'borel_counterpart',
    'build',
    'RunReport',
]

__version__ = "1.0.0"
