"""Exception types raised across the package."""


class StochordError(Exception):
    """Base class for package errors."""


class EndpointSingularity(StochordError, ValueError):
    """A density or hazard was requested at a support endpoint where it is infinite."""


class ZeroDenominator(StochordError, ZeroDivisionError):
    """A rate ratio was requested where its denominator vanishes."""


class UnknownFamily(StochordError, ValueError):
    """An unrecognised distribution or pmf family name."""


class AllPointsTrimmed(StochordError, ValueError):
    """Trimming removed every adjacent pair of grid points."""


class NonPositiveKernel(StochordError, ValueError):
    """A kernel evaluated to a non-positive value on its working range."""


class NoConvergence(StochordError, ArithmeticError):
    """A series did not meet its tail bound within the allowed number of terms."""


class ScenarioMismatch(StochordError, ValueError):
    """A scenario is inconsistent with the requested theorem or system kind."""


class ScenarioError(StochordError, ValueError):
    """A scenario file failed to load or validate."""
