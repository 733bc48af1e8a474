"""Scenario documents (YAML, schema version 1) and the bundled scenarios."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

import jsonschema
import numpy as np
import yaml

from .dist import DistSpec
from .errors import ScenarioError, StochordError
from .order_stats import ComponentFamily, Kind
from .ordering import Grid
from .random_extremes import truncate_pmf
from .theorems import THEOREM_IDS, Scenario

BUNDLED = ("example1", "example5", "example6", "example6_max")

_number = {"type": "number"}
_shifts = {"type": "array", "items": _number, "minItems": 1}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "stochord scenario",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "kind", "base", "x_shifts", "y_shifts", "pmf"],
    "properties": {
        "version": {"const": 1},
        "name": {"type": "string"},
        "kind": {"enum": ["min", "max"]},
        "base": {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "rate"],
            "properties": {
                "family": {"enum": ["weibull", "exponential"]},
                "shape": {"type": "number", "exclusiveMinimum": 0},
                "rate": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "x_shifts": _shifts,
        "y_shifts": _shifts,
        "pmf": {
            "oneOf": [
                {"type": "string"},
                {
                    "type": "object",
                    "minProperties": 1,
                    "additionalProperties": False,
                    "patternProperties": {"^[1-9][0-9]*$": {"type": "number", "exclusiveMinimum": 0}},
                },
            ]
        },
        "pmf_tail": {"type": "number", "exclusiveMinimum": 0, "maximum": 1e-9},
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "transform": {"enum": ["neglog", "direct"]},
                "points": {"type": "integer", "minimum": 2},
                "offset": {"oneOf": [{"const": "auto"}, _number]},
                "start": _number,
                "stop": _number,
                "mono_tol": {"type": "number", "minimum": 0},
                "trim_floor": {"type": "number", "minimum": 0},
            },
        },
        "checks": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "theorems": {"type": "array", "items": {"enum": list(THEOREM_IDS)}},
                "relations": {"type": "array", "items": {"enum": ["st", "hr", "rh", "lr"]}},
            },
        },
        "mc": {
            "type": "object",
            "additionalProperties": False,
            "required": ["checkpoints"],
            "properties": {
                "seed": {"type": "integer", "minimum": 0},
                "samples": {"type": "integer", "minimum": 10000},
                "checkpoints": {"type": "array", "items": _number, "minItems": 1},
                "confidence_k": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    },
}


def _stringify_keys(doc):
    if isinstance(doc, dict):
        return {str(k): _stringify_keys(v) for k, v in doc.items()}
    if isinstance(doc, list):
        return [_stringify_keys(v) for v in doc]
    return doc


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise ScenarioError(f"no bundled scenario named {name!r} (have {', '.join(BUNDLED)})")
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.yaml").read_text()


def parse_scenario(
    doc: dict,
    *,
    grid_points: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
    samples: Optional[int] = None,
) -> Scenario:
    """Validate a scenario document and build the ``Scenario`` it describes.

    Keyword overrides replace the corresponding document settings.
    """
    doc = _stringify_keys(doc)
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ScenarioError(f"scenario invalid at {where}: {exc.message}") from None

    try:
        b = doc["base"]
        base = DistSpec(b["family"], float(b.get("shape", 1.0)), float(b["rate"]))
        x = ComponentFamily.shifted(base, doc["x_shifts"], "X")
        y = ComponentFamily.shifted(base, doc["y_shifts"], "Y")
        pmf = truncate_pmf(doc["pmf"], doc.get("pmf_tail", 1e-12))
        if pmf.max_n > min(len(x), len(y)):
            raise ScenarioError(f"pmf reaches n={pmf.max_n} but the families have {len(x)} and {len(y)} components")

        g = dict(doc.get("grid", {}))
        opts = {"mono_tol": float(tol if tol is not None else g.get("mono_tol", 1e-9)),
                "trim_floor": float(g.get("trim_floor", 1e-12))}
        points = int(grid_points or g.get("points", 2000))
        if g.get("transform", "neglog") == "neglog":
            offset = g.get("offset", "auto")
            if offset == "auto":
                offset = max(x.shifts + y.shifts)
            grid = Grid.neg_log_unit(points, float(offset), **opts)
        else:
            if "start" not in g or "stop" not in g:
                raise ScenarioError("direct grids need 'start' and 'stop'")
            grid = Grid.direct(np.linspace(g["start"], g["stop"], points), **opts)

        mc = None
        if "mc" in doc:
            mc = dict(doc["mc"])
            if seed is not None:
                mc["seed"] = seed
            if samples is not None:
                mc["samples"] = samples
        checks = doc.get("checks", {})
        return Scenario(
            doc.get("name", "scenario"), x, y, pmf, grid, Kind.parse(doc["kind"]),
            tuple(checks.get("theorems", ())), tuple(checks.get("relations", ())), mc,
        )
    except ScenarioError:
        raise
    except (StochordError, ValueError, TypeError, ArithmeticError) as exc:
        raise ScenarioError(f"scenario invalid: {exc}") from None


def load_scenario(source: Union[str, Path], **overrides) -> Scenario:
    """Load a scenario from a YAML file, or ``bundled:<name>`` for a built-in one."""
    src = str(source)
    if src.startswith("bundled:"):
        text = bundled_text(src.split(":", 1)[1])
    else:
        try:
            text = Path(src).read_text()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario {src!r}: {exc.strerror}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"scenario {src!r} is not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"scenario {src!r} must be a mapping")
    return parse_scenario(doc, **overrides)


def bundled(name: str, **overrides) -> Scenario:
    return load_scenario(f"bundled:{name}", **overrides)
