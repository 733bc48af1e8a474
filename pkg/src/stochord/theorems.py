"""Drivers that check a preservation theorem's hypotheses and conclusion on a scenario.

Each theorem compares two families ``X`` and ``Y`` through their size-``n``
extremes (over the pmf atoms) and their random extremes.  A report is
CONSISTENT when everything holds, HYPOTHESIS_FAIL when some hypothesis does
not hold (the conclusion is still shown, not judged), and ANOMALY when the
hypotheses hold but the conclusion does not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ScenarioMismatch
from .order_stats import ComponentFamily, Kind, system_quantity
from .ordering import (
    Grid,
    OrderingVerdict,
    _pairwise,
    check_hr,
    check_lr,
    check_lr_chain,
    check_ratio_monotone_in_n,
    check_revhazard_dual,
    check_revhazard_monotone_in_n,
    check_rh,
    check_st,
)
from .random_extremes import RandomExtremeSpec, SizePmf
from .variation import minor_verdict

CONSISTENT = "CONSISTENT"
HYPOTHESIS_FAIL = "HYPOTHESIS_FAIL"
ANOMALY = "ANOMALY"

THEOREM_IDS = ("3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8")
THEOREM_KIND = {t: (Kind.MIN if t in ("3.1", "3.2", "3.5", "3.6") else Kind.MAX) for t in THEOREM_IDS}


@dataclass(frozen=True)
class Scenario:
    """Two component families compared through random extremes under one pmf."""

    name: str
    x: ComponentFamily
    y: ComponentFamily
    pmf: SizePmf
    grid: Grid
    kind: Kind = Kind.MIN
    theorems: tuple[str, ...] = ()
    relations: tuple[str, ...] = ()
    mc: Optional[dict] = None

    def extreme(self, which: str, kind: Optional[Kind] = None) -> RandomExtremeSpec:
        family = self.x if which == "x" else self.y
        return RandomExtremeSpec(family, self.pmf, kind or self.kind)

    @property
    def support_floor(self) -> float:
        return max(self.x.shifts + self.y.shifts)


@dataclass
class TheoremReport:
    theorem: str
    scenario: str
    hypotheses: list[tuple[str, OrderingVerdict]]
    conclusion: tuple[str, OrderingVerdict]
    supporting: list[tuple[str, object]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def classification(self) -> str:
        if not all(v.holds for _, v in self.hypotheses):
            return HYPOTHESIS_FAIL
        if not self.conclusion[1].holds or not all(v.holds for _, v in self.supporting):
            return ANOMALY
        return CONSISTENT

    def summary(self) -> dict:
        return {
            "theorem": self.theorem,
            "scenario": self.scenario,
            "classification": self.classification,
            "hypotheses": [{"label": k, "holds": bool(v.holds)} for k, v in self.hypotheses],
            "supporting": [{"label": k, "holds": bool(v.holds)} for k, v in self.supporting],
            "conclusion": {"label": self.conclusion[0], "holds": bool(self.conclusion[1].holds)},
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        def line(tag, label, v):
            return f"  {tag:<11} {'PASS' if v.holds else 'FAIL'}  {label}\n{'':15}{v}"

        out = [f"Theorem {self.theorem} on scenario {self.scenario!r}"]
        out += [line("hypothesis", k, v) for k, v in self.hypotheses]
        out += [line("supporting", k, v) for k, v in self.supporting]
        judged = "" if self.classification != HYPOTHESIS_FAIL else " (not judged)"
        out.append(line("conclusion", self.conclusion[0] + judged, self.conclusion[1]))
        out += [f"  note: {n}" for n in self.notes]
        out.append(f"classification: {self.classification}")
        out.append("--- summary ---")
        out.append(json.dumps(self.summary(), sort_keys=True))
        return "\n".join(out)


def _rows(family: ComponentFamily, kind: Kind, quantity: str, ns, grid: Grid) -> dict[int, np.ndarray]:
    return dict(zip(ns, system_quantity(family, kind, quantity, ns, grid.points)))


def _per_n(check: Callable, a: dict, b: dict, ns, grid: Grid, statement: str) -> OrderingVerdict:
    verdicts = [(n, check(lambda _x, n=n: a[n], lambda _x, n=n: b[n], grid)) for n in ns]
    return _pairwise(verdicts[0][1].relation, statement, verdicts)


def _kernel_as_verdict(kv, statement: str) -> OrderingVerdict:
    return OrderingVerdict(kv.property, kv.holds, kv.worst_violation, kv.violation_at, kv.minors_checked, 0, statement)


def verify_theorem(theorem_id: str, scenario: Scenario) -> TheoremReport:
    """Run one of the preservation theorems 3.1-3.8 on ``scenario``.

    Hypotheses over ``n`` are checked on the pmf atoms, which is all the
    mixtures depend on.
    """
    t = str(theorem_id)
    if t not in THEOREM_IDS:
        raise ScenarioMismatch(f"unknown theorem id {theorem_id!r}")
    kind = THEOREM_KIND[t]
    if scenario.kind is not kind:
        raise ScenarioMismatch(f"theorem {t} concerns random {kind.value}ima; scenario {scenario.name!r} is {scenario.kind.value}")
    g = scenario.grid
    X, Y = scenario.x, scenario.y
    ns = scenario.pmf.ns.tolist()
    XN, YN = scenario.extreme("x"), scenario.extreme("y")
    hyps: list = []
    support: list = []
    notes: list = []

    if t in ("3.1", "3.2"):
        up = t == "3.1"
        hyps.append((
            f"sf_X(1:n)/sf_Y(1:n) {'increasing' if up else 'decreasing'} in n",
            check_ratio_monotone_in_n(X, Y, Kind.MIN, "sf", ns, g, "increasing" if up else "decreasing"),
        ))
        sx, sy = _rows(X, Kind.MIN, "sf", ns, g), _rows(Y, Kind.MIN, "sf", ns, g)
        if up:
            hyps.append(("X(1:n) <=_hr Y(1:n) for each n", _per_n(check_hr, sx, sy, ns, g, "X(1:n) <=_hr Y(1:n)")))
            concl = ("X(1:N) <=_hr Y(1:N)", check_hr(XN.sf, YN.sf, g))
        else:
            hyps.append(("X(1:n) >=_hr Y(1:n) for each n", _per_n(check_hr, sy, sx, ns, g, "Y(1:n) <=_hr X(1:n)")))
            concl = ("X(1:N) >=_hr Y(1:N)", check_hr(YN.sf, XN.sf, g))
        table = np.array([sy[n] for n in ns])
        keep = np.all(table >= g.trim_floor, axis=0)
        kv = minor_verdict(table[:, keep], ns, g.points[keep], "RR2", g.mono_tol)
        support.append(("sf_Y(1:n) is RR2 in (n, x)", _kernel_as_verdict(kv, "sf_Y(1:n) RR2")))

    elif t in ("3.3", "3.4"):
        down = t == "3.3"
        hyps.append(("reversed hazard of Y(n:n) increasing in n", check_revhazard_monotone_in_n(Y, ns, g)))
        hyps.append((
            f"cdf_X(n:n)/cdf_Y(n:n) {'decreasing' if down else 'increasing'} in n",
            check_ratio_monotone_in_n(X, Y, Kind.MAX, "cdf", ns, g, "decreasing" if down else "increasing"),
        ))
        fx, fy = _rows(X, Kind.MAX, "cdf", ns, g), _rows(Y, Kind.MAX, "cdf", ns, g)
        if down:
            hyps.append(("X(n:n) <=_rh Y(n:n) for each n", _per_n(check_rh, fx, fy, ns, g, "X(n:n) <=_rh Y(n:n)")))
            concl = ("X(N:N) <=_rh Y(N:N)", check_rh(XN.cdf, YN.cdf, g))
        else:
            hyps.append(("X(n:n) >=_rh Y(n:n) for each n", _per_n(check_rh, fy, fx, ns, g, "Y(n:n) <=_rh X(n:n)")))
            concl = ("X(N:N) >=_rh Y(N:N)", check_rh(YN.cdf, XN.cdf, g))
        support.append(("cdf_Y(n1:n1)/cdf_Y(n2:n2) decreasing in x for n1 <= n2", check_revhazard_dual(Y, ns, g)))

    elif t in ("3.5", "3.6"):
        up = t == "3.5"
        hyps.append((
            f"pdf_Y(1:n)/pdf_X(1:n) {'increasing' if up else 'decreasing'} in n",
            check_ratio_monotone_in_n(Y, X, Kind.MIN, "pdf", ns, g, "increasing" if up else "decreasing"),
        ))
        hyps.append(("X(1:n1) >=_lr X(1:n2) for n1 <= n2", check_lr_chain(X, Kind.MIN, ns, g)))
        fx, fy = _rows(X, Kind.MIN, "pdf", ns, g), _rows(Y, Kind.MIN, "pdf", ns, g)
        if up:
            hyps.append(("X(1:n) >=_lr Y(1:n) for each n", _per_n(check_lr, fy, fx, ns, g, "Y(1:n) <=_lr X(1:n)")))
            concl = ("X(1:N) >=_lr Y(1:N)", check_lr(YN.pdf, XN.pdf, g))
        else:
            hyps.append(("X(1:n) <=_lr Y(1:n) for each n", _per_n(check_lr, fx, fy, ns, g, "X(1:n) <=_lr Y(1:n)")))
            concl = ("X(1:N) <=_lr Y(1:N)", check_lr(XN.pdf, YN.pdf, g))

    else:
        up = t == "3.7"
        hyps.append((
            f"pdf_Y(n:n)/pdf_X(n:n) {'increasing' if up else 'decreasing'} in n",
            check_ratio_monotone_in_n(Y, X, Kind.MAX, "pdf", ns, g, "increasing" if up else "decreasing"),
        ))
        hyps.append(("X(n1:n1) <=_lr X(n2:n2) for n1 <= n2", check_lr_chain(X, Kind.MAX, ns, g)))
        fx, fy = _rows(X, Kind.MAX, "pdf", ns, g), _rows(Y, Kind.MAX, "pdf", ns, g)
        if up:
            hyps.append(("X(n:n) <=_lr Y(n:n) for each n", _per_n(check_lr, fx, fy, ns, g, "X(n:n) <=_lr Y(n:n)")))
            concl = ("X(N:N) <=_lr Y(N:N)", check_lr(XN.pdf, YN.pdf, g))
        else:
            hyps.append(("X(n:n) >=_lr Y(n:n) for each n", _per_n(check_lr, fy, fx, ns, g, "Y(n:n) <=_lr X(n:n)")))
            concl = ("X(N:N) >=_lr Y(N:N)", check_lr(YN.pdf, XN.pdf, g))
            notes.append(
                "3.8 as usually written mixes X and Y in its hypotheses; "
                "checked here as the mirror image of 3.7 (kernel chain on X, X(n:n) >=_lr Y(n:n))"
            )

    if scenario.pmf.is_preset:
        notes.append(f"pmf {scenario.pmf.source} is a built-in preset truncated at n={scenario.pmf.max_n} "
                     f"(excluded mass {scenario.pmf.truncation_tail:.2e})")
    if g.transform.value == "neglog" and g.offset > 0:
        notes.append(f"grid starts above the common support floor x={g.offset:g}")
    for label, v in hyps + [concl]:
        if v.low_coverage:
            notes.append(f"LOW_COVERAGE: {label} ({v.points_checked} points)")
    return TheoremReport(t, scenario.name, hyps, concl, support, notes)


def verify_st_preservation(scenario: Scenario) -> TheoremReport:
    """``X <=_st Y`` for every size-``n`` extreme carries over to the random extreme."""
    g, ns = scenario.grid, scenario.pmf.ns.tolist()
    sx = _rows(scenario.x, scenario.kind, "sf", ns, g)
    sy = _rows(scenario.y, scenario.kind, "sf", ns, g)
    hyp = _per_n(check_st, sx, sy, ns, g, "X(n) <=_st Y(n)")
    concl = check_st(scenario.extreme("x").sf, scenario.extreme("y").sf, g)
    return TheoremReport("st", scenario.name, [("X(n) <=_st Y(n) for each n", hyp)], ("X(N) <=_st Y(N)", concl))
