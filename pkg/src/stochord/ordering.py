"""Grid-based checks of stochastic orders and of monotonicity in ``n``.

Monotonicity on a grid means every adjacent pair of retained points moves
in the stated direction, up to a relative slack ``mono_tol``.  Ties count as
monotone.  Points where a ratio's terms fall below ``trim_floor`` are dropped
and counted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import AllPointsTrimmed
from .order_stats import ComponentFamily, Kind, system_quantity

Evaluable = Callable[[np.ndarray], np.ndarray]

LOW_COVERAGE_POINTS = 10


class Transform(str, Enum):
    DIRECT = "direct"
    NEG_LOG_UNIT = "neglog"


@dataclass(frozen=True, eq=False)
class Grid:
    """Strictly increasing evaluation points plus the check tolerances.

    ``Grid.neg_log_unit`` places points at ``offset - ln y`` for ``y`` equally
    spaced in the open unit interval, which covers ``(offset, inf)``.
    """

    points: np.ndarray
    transform: Transform = Transform.DIRECT
    mono_tol: float = 1e-9
    trim_floor: float = 1e-12
    offset: float = 0.0

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("grid needs at least two points")
        if np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be strictly increasing")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "transform", Transform(self.transform))

    @classmethod
    def neg_log_unit(cls, n_points: int = 2000, offset: float = 0.0, **tolerances) -> Grid:
        y = np.arange(n_points, 0, -1) / (n_points + 1.0)
        return cls(offset - np.log(y), Transform.NEG_LOG_UNIT, offset=offset, **tolerances)

    @classmethod
    def direct(cls, points: Sequence[float], **tolerances) -> Grid:
        return cls(np.asarray(points, dtype=float), Transform.DIRECT, **tolerances)

    @property
    def y(self) -> np.ndarray:
        """Unit-interval coordinate ``exp(-(x - offset))`` of each point."""
        return np.exp(-(self.points - self.offset))

    def __len__(self) -> int:
        return self.points.size


@dataclass(frozen=True)
class OrderingVerdict:
    relation: str
    holds: bool
    worst_violation: float
    violation_at: Optional[object]
    points_checked: int
    trimmed: int
    statement: str = ""
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def direction(self) -> str:
        return "holds_as_stated" if self.holds else "fails"

    @property
    def low_coverage(self) -> bool:
        return self.points_checked < LOW_COVERAGE_POINTS

    def summary(self) -> dict:
        return {
            "relation": self.relation,
            "statement": self.statement,
            "direction": self.direction,
            "worst_violation": float(self.worst_violation),
            "violation_at": _jsonable(self.violation_at),
            "points_checked": int(self.points_checked),
            "trimmed": int(self.trimmed),
            "low_coverage": self.low_coverage,
        }

    def __str__(self) -> str:
        flag = " LOW_COVERAGE" if self.low_coverage else ""
        where = f" at {_jsonable(self.violation_at)}" if self.violation_at is not None else ""
        return (
            f"[{self.relation}] {self.statement}: {self.direction} "
            f"(worst violation {self.worst_violation:.3e}{where}; "
            f"{self.points_checked} points, {self.trimmed} trimmed){flag}"
        )


def _jsonable(v):
    if v is None:
        return None
    if isinstance(v, tuple):
        return [_jsonable(u) for u in v]
    if isinstance(v, (np.integer, int)):
        return int(v)
    return float(v)


def step_violations(values: np.ndarray, increasing: bool) -> np.ndarray:
    """Relative size of each adjacent step against the expected direction (<= 0 when fine).

    Steps run along the last axis.
    """
    a, b = values[..., :-1], values[..., 1:]
    scale = np.maximum(np.abs(a), np.abs(b))
    scale = np.where(scale > 0, scale, 1.0)
    back = (a - b) if increasing else (b - a)
    return back / scale


def _ratio_verdict(relation, statement, num, den, grid: Grid, increasing=True) -> OrderingVerdict:
    x = grid.points
    keep = (num >= grid.trim_floor) & (den >= grid.trim_floor)
    kept = int(keep.sum())
    if kept < 2:
        raise AllPointsTrimmed(f"{statement}: fewer than two grid points survive trimming")
    ratio = num[keep] / den[keep]
    viol = step_violations(ratio, increasing)
    i = int(np.argmax(viol))
    worst = max(float(viol[i]), 0.0)
    at = float(x[keep][i + 1]) if worst > 0 else None
    return OrderingVerdict(
        relation, worst <= grid.mono_tol, worst, at, kept, x.size - kept, statement,
        {"ratio": ratio, "x": x[keep]},
    )


def check_st(sf_a: Evaluable, sf_b: Evaluable, grid: Grid) -> OrderingVerdict:
    """``A <=_st B``: ``sf_A(x) <= sf_B(x)`` at every grid point."""
    x = grid.points
    diff = np.asarray(sf_a(x)) - np.asarray(sf_b(x))
    i = int(np.argmax(diff))
    worst = max(float(diff[i]), 0.0)
    return OrderingVerdict(
        "st", worst <= grid.mono_tol, worst, float(x[i]) if worst > 0 else None, x.size, 0, "A <=_st B"
    )


def check_hr(sf_a: Evaluable, sf_b: Evaluable, grid: Grid) -> OrderingVerdict:
    """``A <=_hr B``: ``sf_B / sf_A`` nondecreasing."""
    x = grid.points
    return _ratio_verdict("hr", "A <=_hr B", np.asarray(sf_b(x)), np.asarray(sf_a(x)), grid)


def check_rh(cdf_a: Evaluable, cdf_b: Evaluable, grid: Grid) -> OrderingVerdict:
    """``A <=_rh B``: ``cdf_B / cdf_A`` nondecreasing."""
    x = grid.points
    return _ratio_verdict("rh", "A <=_rh B", np.asarray(cdf_b(x)), np.asarray(cdf_a(x)), grid)


def check_lr(pdf_a: Evaluable, pdf_b: Evaluable, grid: Grid) -> OrderingVerdict:
    """``A <=_lr B``: ``pdf_B / pdf_A`` nondecreasing."""
    x = grid.points
    return _ratio_verdict("lr", "A <=_lr B", np.asarray(pdf_b(x)), np.asarray(pdf_a(x)), grid)


def check_rate_dominance(rate_a: Evaluable, rate_b: Evaluable, grid: Grid) -> OrderingVerdict:
    """Pointwise ``rate_A >= rate_B``, the rate form of ``A <=_hr B`` (or, with
    reversed hazards, of ``B <=_rh A``)."""
    x = grid.points
    a, b = np.asarray(rate_a(x)), np.asarray(rate_b(x))
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.finfo(float).tiny)
    viol = (b - a) / scale
    i = int(np.argmax(viol))
    worst = max(float(viol[i]), 0.0)
    return OrderingVerdict(
        "rate", worst <= grid.mono_tol, worst, float(x[i]) if worst > 0 else None, x.size, 0,
        "rate_A >= rate_B",
    )


def _in_n_verdict(relation, statement, values: np.ndarray, ns, grid: Grid, keep, increasing: bool):
    """``values`` has shape (len(ns), len(grid)); monotonicity runs down the columns."""
    x = grid.points
    kept = int(keep.sum())
    if kept == 0:
        raise AllPointsTrimmed(f"{statement}: every grid point was trimmed")
    ns = np.asarray(ns)
    if ns.size < 2:
        return OrderingVerdict(relation, True, 0.0, None, kept, x.size - kept, statement)
    viol = step_violations(values[:, keep].T, increasing)  # (points, steps)
    j, s = np.unravel_index(int(np.argmax(viol)), viol.shape)
    worst = max(float(viol[j, s]), 0.0)
    at = (int(ns[s + 1]), float(x[keep][j])) if worst > 0 else None
    return OrderingVerdict(relation, worst <= grid.mono_tol, worst, at, kept, x.size - kept, statement)


def check_ratio_monotone_in_n(
    numerator: ComponentFamily,
    denominator: ComponentFamily,
    kind,
    quantity: str,
    n_range: Sequence[int],
    grid: Grid,
    expected: str = "increasing",
) -> OrderingVerdict:
    """For each grid point, is ``q_num(n, x) / q_den(n, x)`` monotone over ``n_range``?

    ``quantity`` is ``sf``, ``cdf`` or ``pdf`` of the size-``n`` minimum or
    maximum (per ``kind``).
    """
    if expected not in ("increasing", "decreasing"):
        raise ValueError("expected must be 'increasing' or 'decreasing'")
    ns = sorted(n_range)
    num = system_quantity(numerator, kind, quantity, ns, grid.points)
    den = system_quantity(denominator, kind, quantity, ns, grid.points)
    keep = np.all((num >= grid.trim_floor) & (den >= grid.trim_floor), axis=0)
    label = f"{quantity}[{numerator.label}]/{quantity}[{denominator.label}] {expected} in n"
    return _in_n_verdict("ratio-in-n", label, num / np.where(keep, den, 1.0), ns, grid, keep,
                         expected == "increasing")


def check_revhazard_monotone_in_n(family: ComponentFamily, n_range: Sequence[int], grid: Grid) -> OrderingVerdict:
    """Reversed hazard of the size-``n`` maximum nondecreasing in ``n`` at each point."""
    ns = sorted(n_range)
    cdf = system_quantity(family, Kind.MAX, "cdf", ns, grid.points)
    keep = np.all(cdf >= grid.trim_floor, axis=0)
    rates = np.zeros_like(cdf)
    if keep.any():
        rates[:, keep] = system_quantity(family, Kind.MAX, "rate", ns, grid.points[keep])
    label = f"reversed hazard of max[{family.label}] increasing in n"
    return _in_n_verdict("revhazard-in-n", label, rates, ns, grid, keep, True)


def _pairwise(relation, statement, checks) -> OrderingVerdict:
    """Fold per-pair verdicts into one, keeping the worst pair."""
    worst = max(checks, key=lambda pc: pc[1].worst_violation)
    (pair, v) = worst
    return OrderingVerdict(
        relation,
        all(c.holds for _, c in checks),
        v.worst_violation,
        (pair, v.violation_at) if v.violation_at is not None else None,
        min(c.points_checked for _, c in checks),
        max(c.trimmed for _, c in checks),
        statement,
    )


def check_revhazard_dual(family: ComponentFamily, n_range: Sequence[int], grid: Grid) -> OrderingVerdict:
    """``G_{n1:n1} / G_{n2:n2}`` nonincreasing in ``x`` for every ``n1 < n2``.

    Equivalent to the reversed hazard of the maximum growing with ``n``.
    """
    ns = sorted(n_range)
    if len(ns) < 2:
        return OrderingVerdict("revhazard-in-n", True, 0.0, None, len(grid), 0, "vacuous")
    cdf = dict(zip(ns, system_quantity(family, Kind.MAX, "cdf", ns, grid.points)))
    checks = [
        ((a, b), check_rh(lambda _x, a=a: cdf[a], lambda _x, b=b: cdf[b], grid))
        for a, b in combinations(ns, 2)
    ]
    return _pairwise("revhazard-in-n", f"max[{family.label}] cdf ratios n1/n2 decreasing in x", checks)


def check_lr_chain(family: ComponentFamily, kind, n_range: Sequence[int], grid: Grid) -> OrderingVerdict:
    """Extremes ordered in ``lr`` along ``n``.

    For minima: ``X_{1:n1} >=_lr X_{1:n2}`` whenever ``n1 <= n2``.
    For maxima: ``X_{n1:n1} <=_lr X_{n2:n2}`` whenever ``n1 <= n2``.
    """
    kind = Kind.parse(kind)
    ns = sorted(n_range)
    if len(ns) < 2:
        return OrderingVerdict("lr", True, 0.0, None, len(grid), 0, "vacuous")
    pdf = dict(zip(ns, system_quantity(family, kind, "pdf", ns, grid.points)))
    checks = []
    for a, b in combinations(ns, 2):
        lo, hi = (b, a) if kind is Kind.MIN else (a, b)
        checks.append(((a, b), check_lr(lambda _x, lo=lo: pdf[lo], lambda _x, hi=hi: pdf[hi], grid)))
    sym = ">=_lr" if kind is Kind.MIN else "<=_lr"
    return _pairwise("lr", f"{kind.value}[{family.label}] size n1 {sym} size n2 for n1 <= n2", checks)
