"""Parametric lifetime distributions with location shifts.

Only the Weibull family ships (the exponential distribution is the
``shape == 1`` special case).  Every function accepts scalars or arrays and
follows numpy broadcasting; scalar input gives a numpy scalar back.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import EndpointSingularity, UnknownFamily, ZeroDenominator

FAMILIES = ("weibull", "exponential")


def _out(values: np.ndarray):
    return values[()] if values.ndim == 0 else values


@dataclass(frozen=True)
class DistSpec:
    """Weibull lifetime with survival ``exp(-rate * (x - shift)**shape)`` on ``[shift, inf)``.

    Parameters
    ----------
    family : {"weibull", "exponential"}
    shape : float
        Weibull shape ``k`` (forced to 1 for the exponential family).
    rate : float
        Multiplier ``c`` of ``(x - shift)**k`` in the cumulative hazard.
    shift : float
        Location of the left support endpoint.
    """

    family: str = "weibull"
    shape: float = 1.0
    rate: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        family = self.family.lower()
        if family not in FAMILIES:
            raise UnknownFamily(f"unknown distribution family {self.family!r}")
        object.__setattr__(self, "family", family)
        if family == "exponential":
            if self.shape != 1.0:
                raise ValueError("exponential family has shape 1")
        if not (self.shape > 0 and np.isfinite(self.shape)):
            raise ValueError(f"shape must be positive, got {self.shape}")
        if not (self.rate > 0 and np.isfinite(self.rate)):
            raise ValueError(f"rate must be positive, got {self.rate}")
        if not np.isfinite(self.shift):
            raise ValueError("shift must be finite")

    @classmethod
    def weibull(cls, shape: float, rate: float, shift: float = 0.0) -> DistSpec:
        return cls("weibull", float(shape), float(rate), float(shift))

    @classmethod
    def exponential(cls, rate: float, shift: float = 0.0) -> DistSpec:
        return cls("exponential", 1.0, float(rate), float(shift))

    # -- elementary pieces -------------------------------------------------

    def _excess(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) - self.shift

    def cum_hazard(self, x):
        """Cumulative hazard ``c * (x - shift)**k``, zero below the support."""
        t = np.maximum(self._excess(x), 0.0)
        return _out(self.rate * t**self.shape)

    def log_sf(self, x):
        return _out(-np.asarray(self.cum_hazard(x)))

    def sf(self, x):
        """Survival function; equals 1 at and below ``shift``."""
        return _out(np.exp(np.asarray(self.log_sf(x))))

    def cdf(self, x):
        """Distribution function, via ``-expm1`` so small values keep relative accuracy."""
        return _out(-np.expm1(np.asarray(self.log_sf(x))))

    def log_cdf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(np.asarray(self.cdf(x))))

    def _check_endpoint(self, t: np.ndarray) -> None:
        if self.shape < 1 and np.any(t == 0):
            raise EndpointSingularity(
                f"density is infinite at the support endpoint x={self.shift} (shape {self.shape} < 1)"
            )

    def hazard(self, x):
        """Hazard ``c k (x - shift)**(k - 1)``; zero below the support.

        Raises
        ------
        EndpointSingularity
            If ``x == shift`` and ``shape < 1``.
        """
        t = self._excess(x)
        self._check_endpoint(t)
        inside = t > 0
        tt = np.where(inside, t, 1.0)
        rate = self.rate * self.shape * tt ** (self.shape - 1.0)
        at_edge = self.rate if self.shape == 1 else 0.0
        return _out(np.where(inside, rate, np.where(t == 0, at_edge, 0.0)))

    def pdf(self, x):
        return _out(np.asarray(self.hazard(x)) * np.asarray(self.sf(x)))

    def rev_hazard(self, x):
        """Reversed hazard ``pdf / cdf``.

        Raises
        ------
        ZeroDenominator
            If the cdf vanishes at any requested point (``x <= shift``).
        """
        F = np.asarray(self.cdf(x))
        if np.any(F <= 0):
            raise ZeroDenominator(f"cdf is zero at or below the support endpoint {self.shift}")
        return _out(np.asarray(self.pdf(x)) / F)

    def isf(self, u):
        """Inverse survival function: the ``x`` with ``sf(x) == u`` for ``u`` in (0, 1]."""
        u = np.asarray(u, dtype=float)
        return _out(self.shift + (-np.log(u) / self.rate) ** (1.0 / self.shape))


def shift_family(base: DistSpec, shifts: Sequence[float]) -> tuple[DistSpec, ...]:
    """Copies of ``base`` moved to each location in ``shifts``."""
    if base.shift != 0:
        raise ValueError("base distribution must be unshifted")
    return tuple(replace(base, shift=float(s)) for s in shifts)
