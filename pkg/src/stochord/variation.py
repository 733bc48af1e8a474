"""TP2/RR2 kernels, sign-change counting and the transform ``w(x) = sum_n f_n(x) K_n(x)``.

A strictly positive kernel is TP2 (RR2) when every 2x2 minor
``K(n1,x1) K(n2,x2) - K(n2,x1) K(n1,x2)`` with ``n1 < n2``, ``x1 < x2`` is
nonnegative (nonpositive).  For strictly positive kernels the adjacent
minors decide the sign of all of them, so only those are examined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import NoConvergence, NonPositiveKernel
from .ordering import step_violations
from .random_extremes import SizePmf, compensated_sum

TermFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Kernel:
    """Positive function ``K(n, x)``; ``evaluator`` must broadcast over array ``n`` and ``x``."""

    evaluator: TermFn
    domain: tuple[float, float] = (0.0, math.inf)
    name: str = "K"

    def __call__(self, n, x):
        return np.asarray(self.evaluator(np.asarray(n, dtype=float), np.asarray(x, dtype=float)), dtype=float)


@dataclass(frozen=True)
class SignedSequenceFn:
    """Real-valued ``f(n, x)``, no sign restriction."""

    evaluator: TermFn
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = "f"

    def __call__(self, n, x):
        return np.asarray(self.evaluator(np.asarray(n, dtype=float), np.asarray(x, dtype=float)), dtype=float)


# -- total positivity ---------------------------------------------------------

@dataclass(frozen=True)
class KernelVerdict:
    property: str
    holds: bool
    worst_violation: float
    violation_at: Optional[tuple]
    minors_checked: int

    def __str__(self) -> str:
        state = "holds" if self.holds else "fails"
        where = f" at (n, x) = {self.violation_at}" if self.violation_at else ""
        return f"[{self.property}] {state} (worst relative minor violation {self.worst_violation:.3e}{where}; {self.minors_checked} minors)"


def minor_verdict(values: np.ndarray, n_grid, x_grid, prop: str, tol: float = 1e-9) -> KernelVerdict:
    """Sign test of adjacent 2x2 minors of a positive table ``values[n, x]``.

    Each minor is measured relative to the larger of its two products, computed
    in log space so that tiny kernel values do not underflow.
    """
    prop = prop.upper()
    if prop not in ("TP2", "RR2"):
        raise ValueError("prop must be 'TP2' or 'RR2'")
    values = np.asarray(values, dtype=float)
    if not np.all(values > 0):
        bad = np.argwhere(~(values > 0))[0]
        raise NonPositiveKernel(f"kernel not positive at n={n_grid[bad[0]]}, x={x_grid[bad[1]]}")
    logk = np.log(values)
    main = logk[:-1, :-1] + logk[1:, 1:]
    anti = logk[1:, :-1] + logk[:-1, 1:]
    # minor / max(product) = sign * (1 - exp(-|main - anti|))
    rel = np.sign(main - anti) * -np.expm1(-np.abs(main - anti))
    viol = -rel if prop == "TP2" else rel
    if viol.size == 0:
        return KernelVerdict(prop, True, 0.0, None, 0)
    i, j = np.unravel_index(int(np.argmax(viol)), viol.shape)
    worst = max(float(viol[i, j]), 0.0)
    at = (int(n_grid[i]), float(x_grid[j])) if worst > 0 else None
    return KernelVerdict(prop, worst <= tol, worst, at, viol.size)


def _table(K: Kernel, n_grid, x_grid) -> np.ndarray:
    n = np.asarray(n_grid, dtype=float)[:, None]
    x = np.asarray(x_grid, dtype=float)[None, :]
    return np.broadcast_to(K(n, x), (n.shape[0], x.shape[1]))


def check_tp2(K: Kernel, n_grid: Sequence[int], x_grid: Sequence[float], tol: float = 1e-9) -> KernelVerdict:
    return minor_verdict(_table(K, n_grid, x_grid), list(n_grid), list(x_grid), "TP2", tol)


def check_rr2(K: Kernel, n_grid: Sequence[int], x_grid: Sequence[float], tol: float = 1e-9) -> KernelVerdict:
    return minor_verdict(_table(K, n_grid, x_grid), list(n_grid), list(x_grid), "RR2", tol)


# -- sign changes -------------------------------------------------------------

@dataclass(frozen=True)
class SignChangeReport:
    x: np.ndarray
    values: np.ndarray
    dead_band: float
    count: int
    pattern: str
    change_locations: list = field(default_factory=list)

    def __str__(self) -> str:
        return f"{self.count} sign change(s), pattern {self.pattern or '(none)'}"


def sign_changes(x, values, dead_band: Optional[float] = None) -> SignChangeReport:
    """Count sign alternations of ``values`` sampled at increasing ``x``.

    Values within ``dead_band`` of zero carry no sign.  The default band is
    ``1e-10 * max|values|``.  ``change_locations`` holds, for each change, the
    pair of sample positions that brackets it.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.shape != v.shape:
        raise ValueError("x and values must have the same shape")
    if v.size and np.any(np.diff(x) < 0):
        raise ValueError("samples must be sorted by x")
    if dead_band is None:
        dead_band = 1e-10 * float(np.max(np.abs(v))) if v.size else 0.0
    signs = np.where(v > dead_band, 1, np.where(v < -dead_band, -1, 0))
    idx = np.flatnonzero(signs)
    pattern, locations = [], []
    prev = None
    for i in idx:
        s = signs[i]
        if prev is None or s != signs[prev]:
            if prev is not None:
                locations.append((float(x[prev]), float(x[i])))
            pattern.append("+" if s > 0 else "-")
        prev = i
    return SignChangeReport(x, v, float(dead_band), len(locations), "".join(pattern), locations)


# -- the transform --------------------------------------------------------------

@dataclass(frozen=True)
class Transformed:
    x: np.ndarray
    w: np.ndarray
    tail: np.ndarray
    terms_used: np.ndarray

    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.w.tolist()))


def vd_transform(
    f: SignedSequenceFn,
    K: Kernel,
    x_grid,
    weights: Optional[SizePmf] = None,
    n_max: int = 10000,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    block: int = 256,
) -> Transformed:
    """Evaluate ``w(x) = sum_n f(n, x) K(n, x) weight(n)``.

    With a ``SizePmf`` the sum runs over its atoms and is exact.  With unit
    weights terms ``n = 1, 2, ...`` are added block by block (Neumaier
    compensation across blocks) until the geometric estimate of the remaining
    tail built from the last two terms drops below ``atol``, or ``n_max`` terms
    have been used.

    Raises
    ------
    NoConvergence
        If after ``n_max`` terms the tail estimate still exceeds both
        ``rtol * |w|`` and ``atol``.
    """
    x = np.asarray(x_grid, dtype=float)
    if weights is not None:
        n = weights.ns.astype(float)[:, None]
        terms = f(n, x[None, :]) * K(n, x[None, :]) * weights.probs[:, None]
        w = compensated_sum(terms)
        return Transformed(x, w, np.zeros_like(w), np.full(x.shape, weights.ns.size))

    total = np.zeros_like(x)
    comp = np.zeros_like(x)
    tail = np.full_like(x, np.inf)
    used = np.zeros(x.shape, dtype=int)
    active = np.ones(x.shape, dtype=bool)
    start = 1
    while start <= n_max and active.any():
        stop = min(start + block, n_max + 1)
        n = np.arange(start, stop, dtype=float)[:, None]
        xa = x[active][None, :]
        terms = f(n, xa) * K(n, xa)
        part = np.sum(terms, axis=0)
        s = total[active]
        tmp = s + part
        comp[active] += np.where(np.abs(s) >= np.abs(part), (s - tmp) + part, (part - tmp) + s)
        total[active] = tmp
        used[active] = stop - 1
        last = np.abs(terms[-1])
        if terms.shape[0] >= 2:
            prev = np.abs(terms[-2])
            with np.errstate(divide="ignore", invalid="ignore"):
                rho = np.where(prev > 0, last / prev, np.where(last == 0, 0.0, np.inf))
                est = np.where(last == 0, 0.0, np.where(rho < 1, last * rho / (1 - rho), np.inf))
        else:
            est = np.where(last == 0, 0.0, np.inf)
        tail[active] = est
        idx = np.flatnonzero(active)
        active[idx[est <= atol]] = False
        start = stop
    w = total + comp
    bad = tail > np.maximum(rtol * np.abs(w), atol)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise NoConvergence(
            f"series at x={x[i]:.6g} not converged after {n_max} terms (tail estimate {tail[i]:.3e})"
        )
    return Transformed(x, w, tail, used)


# -- propositions -----------------------------------------------------------------

@dataclass(frozen=True)
class PropositionRule:
    kernel: str
    f_in_n: str
    f_in_x: str
    conclusion: str


PROPOSITIONS = {
    "3.1": PropositionRule("RR2", "-+", "decreasing", "+-"),
    "3.2": PropositionRule("RR2", "+-", "increasing", "-+"),
    "3.3": PropositionRule("TP2", "+-", "decreasing", "+-"),
    "3.4": PropositionRule("TP2", "-+", "increasing", "-+"),
}


def at_most_one_change(pattern: str, direction: str) -> bool:
    """True when a collapsed sign pattern is consistent with one change in ``direction``."""
    return pattern in ("", "+", "-", direction)


@dataclass
class Finding:
    name: str
    holds: bool
    detail: str

    def __str__(self) -> str:
        return f"{'PASS' if self.holds else 'FAIL'}  {self.name}: {self.detail}"


@dataclass
class PropositionReport:
    proposition: str
    hypotheses: list[Finding]
    conclusion: Finding
    transform: Transformed
    signs: SignChangeReport
    classification: str

    def to_text(self) -> str:
        lines = [f"Proposition {self.proposition}: {self.classification}"]
        lines += [f"  hypothesis  {h}" for h in self.hypotheses]
        lines.append(f"  conclusion  {self.conclusion}")
        return "\n".join(lines)


def classify(hypotheses_hold: bool, conclusion_holds: bool) -> str:
    if not hypotheses_hold:
        return "HYPOTHESIS_FAIL"
    return "CONSISTENT" if conclusion_holds else "ANOMALY"


def verify_proposition(
    prop_id: str,
    f: SignedSequenceFn,
    K: Kernel,
    x_grid,
    n_grid: Optional[Sequence[int]] = None,
    weights: Optional[SizePmf] = None,
    n_max: int = 10000,
    tol: float = 1e-9,
) -> PropositionReport:
    """Check a proposition's three hypotheses on a grid, then its sign-change conclusion.

    Hypotheses are sampled on ``n_grid`` (the pmf atoms when ``weights`` is
    given, else ``1..40`` by default) crossed with ``x_grid``.
    """
    rule = PROPOSITIONS[str(prop_id)]
    x = np.asarray(x_grid, dtype=float)
    if weights is not None:
        n_grid = weights.ns.tolist()
    elif n_grid is None:
        n_grid = list(range(1, 41))
    n = np.asarray(n_grid, dtype=float)

    kv = minor_verdict(_table(K, n, x), n_grid, x, rule.kernel, tol)
    hyps = [Finding(f"K_n(x) is {rule.kernel}", kv.holds, str(kv))]

    table = np.broadcast_to(f(n[:, None], x[None, :]), (n.size, x.size))
    viol = step_violations(table, rule.f_in_x == "increasing")
    worst = max(float(viol.max()), 0.0) if viol.size else 0.0
    hyps.append(Finding(f"f_n(x) {rule.f_in_x} in x", worst <= tol, f"worst relative step violation {worst:.3e}"))

    bad_x = []
    for j in range(x.size):
        col = table[:, j]
        rep = sign_changes(n, col, 1e-12 * float(np.max(np.abs(col))))
        if rep.count > 1 or not at_most_one_change(rep.pattern, rule.f_in_n):
            bad_x.append(float(x[j]))
    hyps.append(Finding(
        f"f_n(x) changes sign at most once in n, {rule.f_in_n[0]} to {rule.f_in_n[1]}",
        not bad_x,
        f"{len(bad_x)} grid points violate" + (f" (first x={bad_x[0]:.6g})" if bad_x else ""),
    ))

    tr = vd_transform(f, K, x, weights=weights, n_max=n_max)
    signs = sign_changes(x, tr.w)
    ok = at_most_one_change(signs.pattern, rule.conclusion)
    concl = Finding(
        f"w(x) changes sign at most once, {rule.conclusion[0]} to {rule.conclusion[1]}",
        ok,
        str(signs),
    )
    return PropositionReport(str(prop_id), hyps, concl, tr, signs, classify(all(h.holds for h in hyps), ok))


# -- counterexamples --------------------------------------------------------------

def _inv_power_kernel(n, x):
    return x ** (-n) / n


def _power_kernel(n, x):
    return x**n / n


def _w1(x):
    return x / (x - 1) + 5 * np.log1p(-1 / x)


def _w2(x):
    return x / (1 - x) + 10 * x * np.log1p(-x)


ENDPOINT_GAP = 1e-3
COUNTEREXAMPLE_TERMS = 60000


def canonical_grid(case: str, n_points: int = 2000) -> np.ndarray:
    """Sample points for a counterexample case, kept ``1e-3`` away from singular endpoints."""
    if case in ("I", "II"):
        return 1 + np.geomspace(ENDPOINT_GAP, 49.0, n_points)
    if case in ("III", "IV"):
        return np.linspace(ENDPOINT_GAP, 1 - ENDPOINT_GAP, n_points)
    raise ValueError(f"unknown counterexample case {case!r}")


COUNTEREXAMPLES = {
    "I": (SignedSequenceFn(lambda n, x: n * x - 5, (1, math.inf), "n x - 5"),
          Kernel(_inv_power_kernel, (1, math.inf), "1/(n x^n)"), _w1, "RR2"),
    "II": (SignedSequenceFn(lambda n, x: 5 - n * x, (1, math.inf), "5 - n x"),
           Kernel(_inv_power_kernel, (1, math.inf), "1/(n x^n)"), lambda x: -_w1(x), "RR2"),
    "III": (SignedSequenceFn(lambda n, x: n - 10 * x, (0, 1), "n - 10 x"),
            Kernel(_power_kernel, (0, 1), "x^n/n"), _w2, "TP2"),
    "IV": (SignedSequenceFn(lambda n, x: 10 * x - n, (0, 1), "10 x - n"),
           Kernel(_power_kernel, (0, 1), "x^n/n"), lambda x: -_w2(x), "TP2"),
}


@dataclass
class CounterexampleResult:
    case: str
    x: np.ndarray
    series: np.ndarray
    closed_form: np.ndarray
    signs: SignChangeReport
    max_abs_error: float

    @property
    def ok(self) -> bool:
        return self.signs.count >= 2 and self.max_abs_error <= 1e-8

    def rows(self):
        return zip(self.x, self.series, self.closed_form)


def counterexample(case: str, n_points: int = 2000) -> CounterexampleResult:
    """Evaluate a counterexample case by partial sums and by its closed form.

    The sign report is taken from the partial sums.
    """
    f, K, closed, _ = COUNTEREXAMPLES[case]
    x = canonical_grid(case, n_points)
    tr = vd_transform(f, K, x, n_max=COUNTEREXAMPLE_TERMS)
    exact = closed(x)
    return CounterexampleResult(case, x, tr.w, exact, sign_changes(x, tr.w), float(np.max(np.abs(tr.w - exact))))
