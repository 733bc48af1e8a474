"""Monte Carlo check of random-extreme curves.

Lifetimes come from the closed-form inverse survival function.  Samples are
produced in fixed-size blocks; block ``b`` draws from a generator seeded by
``SeedSequence(seed, spawn_key=(b,))``, so the output is the same for any
number of workers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .csvio import write_rows
from .dist import DistSpec
from .order_stats import Kind
from .random_extremes import RandomExtremeSpec

BLOCK_CELLS = 1 << 22


def sample_lifetime(d: DistSpec, u):
    """Lifetime whose survival probability is ``u`` (inverse-sf transform)."""
    return d.isf(u)


@dataclass(frozen=True)
class SimConfig:
    seed: int = 42
    n_samples: int = 1_000_000
    checkpoints: tuple[float, ...] = ()
    confidence_k: float = 3.0

    def __post_init__(self):
        object.__setattr__(self, "checkpoints", tuple(float(c) for c in self.checkpoints))
        if self.n_samples < 10_000:
            raise ValueError("n_samples must be at least 10^4")
        if not self.checkpoints:
            raise ValueError("at least one checkpoint is required")


@dataclass(frozen=True)
class EmpiricalCurve:
    checkpoints: np.ndarray
    estimate: np.ndarray
    se: np.ndarray
    n_samples: int
    quantity: str

    def as_dict(self) -> dict[float, tuple[float, float]]:
        return {float(c): (float(e), float(s)) for c, e, s in zip(self.checkpoints, self.estimate, self.se)}


def _block_size(max_n: int) -> int:
    return max(256, BLOCK_CELLS // max_n)


def _simulate_block(spec: RandomExtremeSpec, seed: int, b: int, size: int, checkpoints: np.ndarray) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(b,))))
    family = spec.family.components[: spec.pmf.max_n]
    cum = np.cumsum(spec.pmf.probs)
    idx = np.minimum(np.searchsorted(cum, rng.random(size), side="right"), cum.size - 1)
    counts = spec.pmf.ns[idx]
    u = 1.0 - rng.random((size, len(family)))  # in (0, 1]
    life = np.column_stack([d.isf(u[:, j]) for j, d in enumerate(family)])
    beyond = np.arange(len(family))[None, :] >= counts[:, None]
    if spec.kind is Kind.MIN:
        ext = np.where(beyond, np.inf, life).min(axis=1)
        return (ext[:, None] > checkpoints[None, :]).sum(axis=0)
    ext = np.where(beyond, -np.inf, life).max(axis=1)
    return (ext[:, None] <= checkpoints[None, :]).sum(axis=0)


def simulate_random_extreme(spec: RandomExtremeSpec, cfg: SimConfig, workers: int = 1) -> EmpiricalCurve:
    """Empirical survival (random minimum) or distribution function (random maximum)
    at ``cfg.checkpoints`` with binomial standard errors."""
    cps = np.asarray(cfg.checkpoints, dtype=float)
    size = _block_size(spec.pmf.max_n)
    sizes = [size] * (cfg.n_samples // size)
    if cfg.n_samples % size:
        sizes.append(cfg.n_samples % size)
    jobs = [(b, s) for b, s in enumerate(sizes)]
    run = lambda job: _simulate_block(spec, cfg.seed, job[0], job[1], cps)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    hits = np.sum(parts, axis=0)
    n = cfg.n_samples
    p = hits / n
    se = np.maximum(np.sqrt(p * (1 - p) / n), 1 / (2 * n))
    return EmpiricalCurve(cps, p, se, n, "sf" if spec.kind is Kind.MIN else "cdf")


@dataclass(frozen=True)
class OracleReport:
    checkpoints: np.ndarray
    analytic: np.ndarray
    empirical: np.ndarray
    se: np.ndarray
    confidence_k: float

    @property
    def z(self) -> np.ndarray:
        return (self.empirical - self.analytic) / self.se

    @property
    def passed_each(self) -> np.ndarray:
        return np.abs(self.z) <= self.confidence_k

    @property
    def passed(self) -> bool:
        return bool(np.all(self.passed_each))

    def to_text(self) -> str:
        lines = [f"{'checkpoint':>12} {'analytic':>14} {'empirical':>14} {'se':>10} {'z':>8}"]
        for c, a, e, s, z, ok in zip(self.checkpoints, self.analytic, self.empirical, self.se, self.z, self.passed_each):
            lines.append(f"{c:12.6g} {a:14.8f} {e:14.8f} {s:10.2e} {z:8.3f}  {'PASS' if ok else 'FAIL'}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)

    def write_csv(self, path) -> None:
        write_rows(path, ["checkpoint", "analytic", "empirical", "se", "z"],
                   zip(self.checkpoints, self.analytic, self.empirical, self.se, self.z))


def oracle_compare(analytic: Callable[[np.ndarray], np.ndarray], curve: EmpiricalCurve, confidence_k: float = 3.0) -> OracleReport:
    """z-score of the empirical estimate against ``analytic`` at each checkpoint."""
    a = np.asarray(analytic(curve.checkpoints), dtype=float)
    return OracleReport(curve.checkpoints, a, curve.estimate, curve.se, confidence_k)


def run_oracle(spec: RandomExtremeSpec, cfg: SimConfig, workers: int = 1) -> OracleReport:
    curve = simulate_random_extreme(spec, cfg, workers)
    analytic = spec.sf if spec.kind is Kind.MIN else spec.cdf
    return oracle_compare(analytic, curve, cfg.confidence_k)
