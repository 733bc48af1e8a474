"""Figure data for the bundled scenarios and one-call reproduction runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from .csvio import write_columns
from .order_stats import Kind, system_quantity
from .scenario_files import bundled
from .theorems import CONSISTENT, Scenario, verify_theorem
from .variation import counterexample

TARGETS = ("example1", "example5", "example6", "counterexamples")

PLOT_STUB = '''"""Plot the CSV files written by `stochord reproduce {name}`."""
import csv
import sys
from pathlib import Path

import matplotlib.pyplot as plt

for path in sorted(Path(sys.argv[1] if len(sys.argv) > 1 else ".").glob("{name}*.csv")):
    with path.open() as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
    xcol = header.index("y") if "y" in header else 0
    fig, ax = plt.subplots()
    for j, label in enumerate(header):
        if label in ("x", "y", "n"):
            continue
        ax.plot([r[xcol] for r in data], [r[j] for r in data], label=label)
    ax.set_xlabel(header[xcol])
    ax.set_title(path.stem)
    ax.legend()
    fig.savefig(path.with_suffix(".png"))
'''


@dataclass
class Reproduction:
    name: str
    ok: bool
    files: list[Path] = field(default_factory=list)
    text: list[str] = field(default_factory=list)


def _base_columns(sc: Scenario) -> dict:
    return {"y": sc.grid.y, "x": sc.grid.points}


def mixture_ratio(sc: Scenario, quantity: str, numerator: str = "x") -> np.ndarray:
    """``quantity`` of the numerator family's random extreme over the other's, on the grid."""
    a, b = sc.extreme(numerator), sc.extreme("y" if numerator == "x" else "x")
    x = sc.grid.points
    return np.asarray(getattr(a, quantity)(x)) / np.asarray(getattr(b, quantity)(x))


def figure1_columns(sc: Scenario) -> dict:
    """Survival ratio of the random minima, X over Y."""
    return {**_base_columns(sc), "ratio": mixture_ratio(sc, "sf")}


def figure3_columns(sc: Scenario) -> dict:
    """Density ratio g_{1:n}/f_{1:n} (Y over X) for each pmf atom."""
    ns = sc.pmf.ns.tolist()
    g = system_quantity(sc.y, sc.kind, "pdf", ns, sc.grid.points)
    f = system_quantity(sc.x, sc.kind, "pdf", ns, sc.grid.points)
    cols = _base_columns(sc)
    cols.update({f"ratio_n{n}": g[i] / f[i] for i, n in enumerate(ns)})
    return cols


def figure4_columns(sc: Scenario) -> dict:
    """Density ratios f_{1:n1}/f_{1:n2} of the X family for n1 < n2."""
    ns = sc.pmf.ns.tolist()
    f = dict(zip(ns, system_quantity(sc.x, sc.kind, "pdf", ns, sc.grid.points)))
    cols = _base_columns(sc)
    cols.update({f"f{a}_over_f{b}": f[a] / f[b] for a, b in combinations(ns, 2)})
    return cols


def figure5_columns(sc: Scenario) -> dict:
    """Density ratio of the random minima, Y over X."""
    return {**_base_columns(sc), "ratio": mixture_ratio(sc, "pdf", numerator="y")}


def hazard_columns(sc: Scenario) -> dict:
    """Hazards r_{1:n} (X) and s_{1:n} (Y) of the fixed-size minima."""
    ns = sc.pmf.ns.tolist()
    r = system_quantity(sc.x, Kind.MIN, "rate", ns, sc.grid.points)
    s = system_quantity(sc.y, Kind.MIN, "rate", ns, sc.grid.points)
    cols = {"x": sc.grid.points}
    for i, n in enumerate(ns):
        cols[f"r_1_{n}"] = r[i]
        cols[f"s_1_{n}"] = s[i]
    return cols


def reproduce(name: str, out_dir, **overrides) -> Reproduction:
    """Run a bundled target, write its CSV files (plus a plotting stub) into ``out_dir``."""
    if name not in TARGETS:
        raise ValueError(f"unknown target {name!r}; choose from {', '.join(TARGETS)}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rep = Reproduction(name, True)

    if name == "counterexamples":
        for case in ("I", "II", "III", "IV"):
            res = counterexample(case)
            path = out / f"counterexamples_case_{case}.csv"
            write_columns(path, {"x": res.x, "series_value": res.series, "closed_form_value": res.closed_form})
            rep.files.append(path)
            rep.ok &= res.ok
            rep.text.append(
                f"case {case}: {res.signs}; max |series - closed form| = {res.max_abs_error:.2e} "
                f"-> {'PASS' if res.ok else 'FAIL'}"
            )
    else:
        sc = bundled(name, **overrides)
        if name == "example5":
            tables = {"figure1": figure1_columns(sc)}
            theorem = "3.1"
        elif name == "example6":
            tables = {"figure3": figure3_columns(sc), "figure4": figure4_columns(sc), "figure5": figure5_columns(sc)}
            theorem = "3.5"
        else:
            tables = {"hazards": hazard_columns(sc), "ratio": figure1_columns(sc)}
            theorem = "3.1"
        for tag, cols in tables.items():
            path = out / f"{name}_{tag}.csv"
            write_columns(path, cols)
            rep.files.append(path)
        report = verify_theorem(theorem, sc)
        rep.ok = report.classification == CONSISTENT
        rep.text.append(report.to_text())

    stub = out / f"plot_{name}.py"
    stub.write_text(PLOT_STUB.format(name=name))
    rep.files.append(stub)
    return rep
