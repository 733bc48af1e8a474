"""Extremes over a random number ``N`` of components.

The law of the random minimum (maximum) is the ``p(n)``-mixture of the
fixed-``n`` minimum (maximum) laws.  Infinite-support pmfs are truncated and
the excluded mass is carried along rather than renormalised away.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import numpy as np
from scipy import stats

from .dist import _out
from .errors import ScenarioMismatch, UnknownFamily, ZeroDenominator
from .order_stats import ComponentFamily, Kind, system_quantity

MAX_TAIL = 1e-9
RATE_FLOOR = 1e-300


def compensated_sum(terms: np.ndarray) -> np.ndarray:
    """Neumaier summation along the first axis."""
    terms = np.asarray(terms, dtype=float)
    total = np.zeros(terms.shape[1:])
    comp = np.zeros(terms.shape[1:])
    for t in terms:
        tmp = total + t
        comp += np.where(np.abs(total) >= np.abs(t), (total - tmp) + t, (t - tmp) + total)
        total = tmp
    return total + comp


@dataclass(frozen=True)
class SizePmf:
    """Probability mass function of the component count ``N``.

    ``atoms`` holds ``(n, p)`` pairs sorted by ``n``; ``truncation_tail`` is the
    mass beyond the last atom that was dropped when truncating an
    infinite-support source.
    """

    atoms: tuple[tuple[int, float], ...]
    truncation_tail: float = 0.0
    source: str = "explicit"

    def __post_init__(self):
        atoms = tuple((int(n), float(p)) for n, p in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("pmf needs at least one atom")
        ns = [n for n, _ in atoms]
        if ns != sorted(set(ns)) or ns[0] < 1:
            raise ValueError("pmf atoms must be distinct positive integers in increasing order")
        if any(not p > 0 for _, p in atoms):
            raise ValueError("pmf atoms must carry positive probability")
        if self.truncation_tail < 0:
            raise ValueError("truncation tail cannot be negative")
        total = math.fsum(p for _, p in atoms) + self.truncation_tail
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"pmf mass plus tail is {total!r}, not 1")

    @classmethod
    def degenerate(cls, n: int) -> SizePmf:
        return cls(((n, 1.0),))

    @property
    def ns(self) -> np.ndarray:
        return np.array([n for n, _ in self.atoms], dtype=int)

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for _, p in self.atoms])

    @property
    def max_n(self) -> int:
        return self.atoms[-1][0]

    @property
    def is_preset(self) -> bool:
        """True for geometric/Poisson presets, which are a convenience of this toolkit."""
        return self.source != "explicit"


_CALL = re.compile(r"^\s*([a-z][a-z_-]*)\s*\(\s*([^)]*)\s*\)\s*$", re.I)


def _parse_explicit(text: str) -> dict[int, float]:
    out: dict[int, float] = {}
    body = text.strip().strip("{}")
    for item in filter(None, (s.strip() for s in body.split(","))):
        try:
            n, p = item.split(":")
            out[int(n)] = float(Fraction(p.strip()))
        except ValueError:
            raise UnknownFamily(f"cannot parse pmf atom {item!r}") from None
    return out


def _smallest_cutoff(tail_at, tail_bound: float, guess: int) -> int:
    m = max(1, guess)
    while m > 1 and tail_at(m - 1) < tail_bound:
        m -= 1
    while tail_at(m) >= tail_bound:
        m += 1
    return m


def truncate_pmf(source: Union[str, Mapping[int, float], SizePmf], tail_bound: float = 1e-12) -> SizePmf:
    """Turn a pmf description into a finite ``SizePmf``.

    ``source`` is a mapping ``{n: p}``, or text: ``geometric(q)`` for
    ``p(n) = (1-q) q**(n-1)``, ``poisson-shifted(mu)`` for ``N = 1 + Poisson(mu)``,
    or an explicit list such as ``"3:1/5, 4:2/5, 5:2/5"``.  Infinite supports
    are cut at the smallest ``N_max`` whose remaining mass is below
    ``tail_bound``; the atoms are not renormalised.
    """
    if isinstance(source, SizePmf):
        return source
    if not 0 < tail_bound <= MAX_TAIL:
        raise ValueError(f"tail_bound must lie in (0, {MAX_TAIL}], got {tail_bound}")
    if isinstance(source, Mapping):
        probs = {int(n): float(p) for n, p in source.items()}
        return SizePmf(tuple(sorted(probs.items())))

    text = str(source).strip()
    call = _CALL.match(text)
    if call is None:
        return SizePmf(tuple(sorted(_parse_explicit(text).items())))
    name, arg = call.group(1).lower().replace("_", "-"), call.group(2)
    if name == "explicit":
        return SizePmf(tuple(sorted(_parse_explicit(arg).items())))
    try:
        value = float(Fraction(arg))
    except ValueError:
        raise UnknownFamily(f"bad parameter in pmf description {text!r}") from None

    if name == "geometric":
        q = value
        if not 0 < q < 1:
            raise ValueError("geometric parameter q must lie in (0, 1)")
        tail_at = lambda m: q**m
        m = _smallest_cutoff(tail_at, tail_bound, int(math.log(tail_bound) / math.log(q)))
        n = np.arange(1, m + 1)
        probs = (1 - q) * q ** (n - 1.0)
        tail = tail_at(m)
    elif name == "poisson-shifted":
        mu = value
        if not mu > 0:
            raise ValueError("poisson mean must be positive")
        tail_at = lambda m: float(stats.poisson.sf(m - 1, mu))
        m = _smallest_cutoff(tail_at, tail_bound, int(mu + 10 * math.sqrt(mu) + 10))
        n = np.arange(1, m + 1)
        probs = stats.poisson.pmf(n - 1, mu)
        tail = tail_at(m)
    else:
        raise UnknownFamily(f"unknown pmf family {name!r}")
    keep = probs > 0
    atoms = tuple(zip(n[keep].tolist(), probs[keep].tolist()))
    tail = max(tail, 0.0)
    residue = 1.0 - math.fsum(p for _, p in atoms) - tail
    if abs(residue) > 1e-12:
        raise ArithmeticError(f"pmf mass does not balance ({residue!r})")
    return SizePmf(atoms, tail, source=f"{name}({value:g})")


@dataclass(frozen=True)
class RandomExtremeSpec:
    """Minimum or maximum of the first ``N`` components, ``N ~ pmf`` independent of them."""

    family: ComponentFamily
    pmf: SizePmf
    kind: Kind = Kind.MIN

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.pmf.max_n > len(self.family):
            raise ScenarioMismatch(
                f"pmf reaches n={self.pmf.max_n} but family {self.family.label!r} has {len(self.family)} components"
            )
        if self.pmf.truncation_tail >= MAX_TAIL:
            raise ScenarioMismatch("pmf truncation tail too large for mixture computations")

    def _mix(self, quantity: str, x):
        x = np.asarray(x, dtype=float)
        per_n = system_quantity(self.family, self.kind, quantity, self.pmf.ns, x.ravel())
        return _out(compensated_sum(self.pmf.probs[:, None] * per_n).reshape(x.shape))

    def sf(self, x):
        return self._mix("sf", x)

    def cdf(self, x):
        return self._mix("cdf", x)

    def pdf(self, x):
        return self._mix("pdf", x)

    def hazard(self, x):
        return rand_hazard(self, x)

    def rev_hazard(self, x):
        return rand_rev_hazard(self, x)


def _need(spec: RandomExtremeSpec, kind: Kind) -> None:
    if spec.kind is not kind:
        raise ScenarioMismatch(f"operation needs a random {kind.value}, got {spec.kind.value}")


def rand_min_sf(spec: RandomExtremeSpec, x):
    _need(spec, Kind.MIN)
    return spec.sf(x)


def rand_max_cdf(spec: RandomExtremeSpec, x):
    _need(spec, Kind.MAX)
    return spec.cdf(x)


def rand_min_pdf(spec: RandomExtremeSpec, x):
    _need(spec, Kind.MIN)
    return spec.pdf(x)


def rand_max_pdf(spec: RandomExtremeSpec, x):
    _need(spec, Kind.MAX)
    return spec.pdf(x)


def _ratio(num, den, what: str):
    num, den = np.asarray(num), np.asarray(den)
    if np.any(den <= RATE_FLOOR):
        raise ZeroDenominator(f"{what} vanishes at a requested point")
    return _out(num / den)


def rand_hazard(spec: RandomExtremeSpec, x):
    """``pdf / sf`` of the random extreme."""
    return _ratio(spec.pdf(x), spec.sf(x), "survival")


def rand_rev_hazard(spec: RandomExtremeSpec, x):
    """``pdf / cdf`` of the random extreme."""
    cdf = np.asarray(spec.cdf(x))
    if np.any(cdf <= RATE_FLOOR):
        raise ZeroDenominator("distribution function vanishes at a requested point")
    return _ratio(spec.pdf(x), cdf, "distribution function")
