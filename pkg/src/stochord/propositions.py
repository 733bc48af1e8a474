"""Bundled positive scenarios for the four variation-diminishing propositions.

Each scenario satisfies its proposition's hypotheses by construction, so the
only acceptable classification is CONSISTENT.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from .csvio import write_columns
from .order_stats import prefix_log_sf
from .random_extremes import SizePmf
from .variation import Kernel, PropositionReport, SignedSequenceFn, verify_proposition


@dataclass(frozen=True)
class PropositionScenario:
    name: str
    proposition: str
    f: SignedSequenceFn
    K: Kernel
    x_grid: np.ndarray
    weights: Optional[SizePmf] = None
    n_grid: Optional[tuple] = None
    description: str = ""

    def run(self, tol: float = 1e-9) -> PropositionReport:
        return verify_proposition(self.proposition, self.f, self.K, self.x_grid,
                                  n_grid=self.n_grid, weights=self.weights, tol=tol)


exp_kernel = Kernel(lambda n, x: np.exp(-n * x), (0.0, np.inf), "exp(-n x)")
inv_power_kernel = Kernel(lambda n, x: (1.0 + x) ** -n, (0.0, np.inf), "(1+x)^-n")
power_kernel = Kernel(lambda n, x: x**n / n, (0.0, 1.0), "x^n / n")
poisson_kernel = Kernel(lambda n, x: np.exp(n * np.log(x) - gammaln(n + 1)), (0.0, np.inf), "x^n / n!")


def _linear(a: float, b: float, c: float, name: str) -> SignedSequenceFn:
    """``f(n, x) = a n + b x + c``."""
    return SignedSequenceFn(lambda n, x: a * n + b * x + c, name=name)


def _example5_scenario() -> PropositionScenario:
    # f_n = Fbar_{1:n}/Gbar_{1:n} - lam0 against K_n = Gbar_{1:n}: w is Fbar_{1:N} - lam0 Gbar_{1:N}
    from .scenario_files import bundled

    sc = bundled("example5")
    x_fam, y_fam = sc.x, sc.y

    def log_sf(fam, n, x):
        # called as (n column, x row), the layout used by the checkers and the transform
        ns = np.asarray(n).reshape(-1).astype(int)
        return prefix_log_sf(fam, int(ns.max()), np.asarray(x, dtype=float).reshape(-1))[ns - 1]

    grid = sc.grid.points
    ratio = np.asarray(sc.extreme("x").sf(grid)) / np.asarray(sc.extreme("y").sf(grid))
    lam0 = float(np.median(ratio))

    def kern(n, x):
        return np.exp(log_sf(y_fam, n, x))

    def f(n, x):
        return np.exp(log_sf(x_fam, n, x) - log_sf(y_fam, n, x)) - lam0

    return PropositionScenario(
        "3.1b", "3.1",
        SignedSequenceFn(f, name=f"Fbar_1:n/Gbar_1:n - {lam0:.6g}"),
        Kernel(kern, (sc.support_floor, np.inf), "Gbar_1:n (Example 5 Y family)"),
        grid, weights=sc.pmf,
        description="survival ratio of the Example 5 minima minus its grid median",
    )


def _scenarios() -> dict[str, PropositionScenario]:
    wide = np.linspace(0.05, 10.0, 400)
    unit = np.linspace(0.01, 0.95, 400)
    half_line = np.linspace(0.01, 10.0, 400)
    out = [
        PropositionScenario("3.1a", "3.1", _linear(1, -1, -3, "n - 3 - x"), exp_kernel, wide,
                            description="Laplace-type kernel"),
        _example5_scenario(),
        PropositionScenario("3.2a", "3.2", _linear(-1, 1, 3, "3 + x - n"), exp_kernel, wide),
        PropositionScenario("3.2b", "3.2", _linear(-1, 1, 2, "x - n + 2"), inv_power_kernel, wide),
        PropositionScenario("3.3a", "3.3", _linear(-1, -1, 3, "3 - n - x"), power_kernel, unit),
        PropositionScenario("3.3b", "3.3", _linear(-1, -1, 4, "4 - n - x"), poisson_kernel, half_line),
        PropositionScenario("3.4a", "3.4", _linear(1, 1, -3, "n - 3 + x"), power_kernel, unit),
        PropositionScenario("3.4b", "3.4", _linear(1, 1, -4, "n + x - 4"), poisson_kernel, half_line),
    ]
    return {s.name: s for s in out}


_CACHE: dict[str, PropositionScenario] = {}


def proposition_scenarios() -> dict[str, PropositionScenario]:
    """All bundled positive scenarios keyed by name (``"3.1a"``, ``"3.1b"``, ...)."""
    if not _CACHE:
        _CACHE.update(_scenarios())
    return dict(_CACHE)


def write_series_csv(report: PropositionReport, path) -> None:
    """Sample path of ``w(x)``; no closed form is known so that column is empty."""
    tr = report.transform
    write_columns(path, {"x": tr.x, "series_value": tr.w,
                         "closed_form_value": np.full(tr.x.shape, np.nan)})
