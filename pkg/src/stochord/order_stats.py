"""Minima and maxima of the first ``n`` components of a family.

Survival of the minimum and distribution of the maximum are products of
component factors; both are accumulated as sums of logs so that long
families do not underflow.  Composite rates are sums of component rates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .dist import DistSpec, _out, shift_family
from .errors import ScenarioMismatch


class Kind(str, Enum):
    MIN = "min"
    MAX = "max"

    @classmethod
    def parse(cls, value) -> Kind:
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ScenarioMismatch(f"kind must be 'min' or 'max', got {value!r}") from None


@dataclass(frozen=True)
class ComponentFamily:
    """Ordered components; a size-``n`` system uses the first ``n`` entries."""

    components: tuple[DistSpec, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @classmethod
    def shifted(cls, base: DistSpec, shifts: Sequence[float], label: str = "") -> ComponentFamily:
        return cls(shift_family(base, shifts), label)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    @property
    def shifts(self) -> tuple[float, ...]:
        return tuple(d.shift for d in self.components)

    def prefix(self, n: int) -> tuple[DistSpec, ...]:
        if not 1 <= n <= len(self):
            raise ValueError(f"system size {n} outside 1..{len(self)} for family {self.label!r}")
        return self.components[:n]


@dataclass(frozen=True)
class SystemSpec:
    family: ComponentFamily
    n: int
    kind: Kind = field(default=Kind.MIN)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        self.family.prefix(self.n)


def _require(sys: SystemSpec, kind: Kind) -> None:
    if sys.kind is not kind:
        raise ScenarioMismatch(f"operation needs a {kind.value} system, got {sys.kind.value}")


def _stack(components: Iterable[DistSpec], method: str, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.stack([np.asarray(getattr(d, method)(x), dtype=float) for d in components])


# -- prefix arrays: row j holds the quantity for the size-(j+1) system -------

def prefix_log_sf(family: ComponentFamily, n_max: int, x) -> np.ndarray:
    return np.cumsum(_stack(family.prefix(n_max), "log_sf", x), axis=0)


def prefix_log_cdf(family: ComponentFamily, n_max: int, x) -> np.ndarray:
    return np.cumsum(_stack(family.prefix(n_max), "log_cdf", x), axis=0)


def prefix_hazard(family: ComponentFamily, n_max: int, x) -> np.ndarray:
    return np.cumsum(_stack(family.prefix(n_max), "hazard", x), axis=0)


def prefix_rev_hazard(family: ComponentFamily, n_max: int, x) -> np.ndarray:
    return np.cumsum(_stack(family.prefix(n_max), "rev_hazard", x), axis=0)


def _prefix_max_pdf(family: ComponentFamily, n_max: int, x) -> np.ndarray:
    """Density of the maximum, zero wherever its cdf vanishes (below the largest shift)."""
    log_cdf = _stack(family.prefix(n_max), "log_cdf", x)
    cdf = np.exp(log_cdf)
    pdf = _stack(family.prefix(n_max), "pdf", x)
    with np.errstate(divide="ignore", invalid="ignore"):
        rh = np.where(cdf > 0, pdf / np.where(cdf > 0, cdf, 1.0), 0.0)
    return np.exp(np.cumsum(log_cdf, axis=0)) * np.cumsum(rh, axis=0)


def system_quantity(family: ComponentFamily, kind, quantity: str, ns: Sequence[int], x) -> np.ndarray:
    """Array of shape ``(len(ns), len(x))`` holding ``quantity`` for each size in ``ns``.

    ``quantity`` is one of ``sf``, ``cdf``, ``pdf``, ``rate`` where ``rate`` is
    the hazard for minima and the reversed hazard for maxima.
    """
    kind = Kind.parse(kind)
    rows = np.asarray(ns, dtype=int) - 1
    n_max = int(rows.max()) + 1
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if kind is Kind.MIN:
        logs = prefix_log_sf(family, n_max, x)[rows]
        if quantity == "sf":
            return np.exp(logs)
        if quantity == "cdf":
            return -np.expm1(logs)
        rate = prefix_hazard(family, n_max, x)[rows]
        if quantity == "rate":
            return rate
        if quantity == "pdf":
            return np.exp(logs) * rate
    else:
        logs = prefix_log_cdf(family, n_max, x)[rows]
        if quantity == "cdf":
            return np.exp(logs)
        if quantity == "sf":
            return -np.expm1(logs)
        if quantity == "rate":
            return prefix_rev_hazard(family, n_max, x)[rows]
        if quantity == "pdf":
            return _prefix_max_pdf(family, n_max, x)[rows]
    raise ValueError(f"unknown quantity {quantity!r}")


# -- single-system operations ------------------------------------------------

def min_sf(sys: SystemSpec, x):
    _require(sys, Kind.MIN)
    return _out(np.exp(prefix_log_sf(sys.family, sys.n, x)[-1]))


def min_sf_naive(sys: SystemSpec, x):
    """Direct product of component survivals (reference path for the log-space one)."""
    _require(sys, Kind.MIN)
    return _out(np.prod(_stack(sys.family.prefix(sys.n), "sf", x), axis=0))


def min_cdf(sys: SystemSpec, x):
    _require(sys, Kind.MIN)
    return _out(-np.expm1(prefix_log_sf(sys.family, sys.n, x)[-1]))


def min_hazard(sys: SystemSpec, x):
    """Hazard of the minimum: the sum of component hazards."""
    _require(sys, Kind.MIN)
    return _out(prefix_hazard(sys.family, sys.n, x)[-1])


def min_pdf(sys: SystemSpec, x):
    return _out(np.asarray(min_sf(sys, x)) * np.asarray(min_hazard(sys, x)))


def max_cdf(sys: SystemSpec, x):
    _require(sys, Kind.MAX)
    return _out(np.exp(prefix_log_cdf(sys.family, sys.n, x)[-1]))


def max_cdf_naive(sys: SystemSpec, x):
    _require(sys, Kind.MAX)
    return _out(np.prod(_stack(sys.family.prefix(sys.n), "cdf", x), axis=0))


def max_sf(sys: SystemSpec, x):
    _require(sys, Kind.MAX)
    return _out(-np.expm1(prefix_log_cdf(sys.family, sys.n, x)[-1]))


def max_rev_hazard(sys: SystemSpec, x):
    """Reversed hazard of the maximum: the sum of component reversed hazards."""
    _require(sys, Kind.MAX)
    return _out(prefix_rev_hazard(sys.family, sys.n, x)[-1])


def max_pdf(sys: SystemSpec, x):
    """``max_cdf * max_rev_hazard``, taken as zero below the largest shift."""
    _require(sys, Kind.MAX)
    return _out(_prefix_max_pdf(sys.family, sys.n, np.asarray(x, dtype=float))[-1])
