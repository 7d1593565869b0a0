"""
Error types for the Taylor domination toolkit
Every error is a ValueError so callers that only know the standard library still catch them
"""


class TdomError(ValueError):
    """Base class for all toolkit errors"""

    exit_code: int = 2


class ContractViolation(TdomError):
    """A precondition or contract of an operation was violated"""

    exit_code = 2


class UncertifiedResult(TdomError):
    """A numerical result could not be certified"""

    exit_code = 3


class InvalidParameter(ContractViolation):
    pass


class MagnitudeOutOfRange(ContractViolation):
    def __init__(self, detail: str = ""):
        super().__init__(f"magnitude out of range{': ' + detail if detail else ''}")


class TrustRadiusExceeded(ContractViolation):
    def __init__(self, needed: float, allowed: float):
        self.needed = needed
        self.allowed = allowed
        super().__init__(f"trust radius exceeded: need {needed:.6g}, allowed {allowed:.6g}")


class SeriesNotTrusted(ContractViolation):
    def __init__(self, radius: float, tail: float, where: str = "at radius"):
        self.radius = radius
        self.tail = tail
        super().__init__(f"series not trusted {where} {radius:.6g} (tail estimate {tail:.3g})")


class DegenerateHead(ContractViolation):
    def __init__(self, N: int, include_constant_term: bool):
        lo = 0 if include_constant_term else 1
        super().__init__(
            f"degenerate head: domination constant undefined (max over {lo} <= i <= {N} is zero)"
        )


class ScanNotConverged(ContractViolation):
    def __init__(self, p: int, R: float, cap: int):
        super().__init__(f"scan not converged for p={p}, R={R:.6g} within k <= {cap}")


class TargetNearContour(ContractViolation):
    def __init__(self, c: complex, min_sampled: float, guard: float):
        self.c = c
        self.min_sampled = min_sampled
        self.guard = guard
        super().__init__(
            f"target value attained near contour: c={c!r}, min |f-c|={min_sampled:.3g} < {guard:.3g}"
        )


class BoundaryAmbiguous(ContractViolation):
    def __init__(self, z: complex, radius: float):
        super().__init__(f"boundary-ambiguous enumeration: solution {z!r} lies on |z| = {radius:.6g}")


class NoCounterpart(ContractViolation):
    def __init__(self, name: str):
        super().__init__(f"no Borel counterpart defined for example '{name}'")


class OracleUnavailable(ContractViolation):
    pass


class NoCertifiedTarget(UncertifiedResult):
    def __init__(self, targets: int):
        super().__init__(f"no certified target among {targets} candidate values")


class UsageError(TdomError):
    """Bad command-line input or unreadable input file"""

    exit_code = 1


class SeriesFileError(UsageError):
    def __init__(self, path: str, detail: str):
        self.path = path
        super().__init__(f"cannot read series file '{path}': {detail}")
