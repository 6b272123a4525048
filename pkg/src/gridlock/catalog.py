"""Shipped grid catalog.

Each entry names the Legendrian knot presented by a grid (the front's knot
type; the grid's own knot type, whose homology is computed, is its mirror)
together with expected values tagged by provenance: ``PAPER`` for values
quoted from the literature, ``DERIVED`` for values produced by the in-repo
brute-force oracle (``tools/build_catalog.py``).

The four knots with paired Legendrian representatives from the literature
ship without grids.  To complete one, transcribe the grid diagram from the
source figure row by row (bottom row first, 1-based column of the X and of
the O in each row), save it with ``"grid": {"n": .., "x": [..], "o": [..]}``
in a copy of the catalog, check ``gridlock validate`` and that
``gridlock invariants`` reports tb = -1, r = 0, and point ``GRIDLOCK_CATALOG``
at the copy.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .grid import GridDiagram, validate


@dataclass(frozen=True)
class Expectation:
    value: Any
    source: str  # "PAPER" or "DERIVED"
    note: str = ""


@dataclass
class CatalogEntry:
    name: str
    grid: GridDiagram | None
    legendrian_type: str
    grid_knot: str = ""
    expected: dict[str, Expectation] = field(default_factory=dict)
    description: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "grid": self.grid.to_dict() if self.grid else None,
            "legendrian_type": self.legendrian_type,
            "grid_knot": self.grid_knot,
            "description": self.description,
            "expected": {k: {"value": e.value, "source": e.source, **({"note": e.note} if e.note else {})}
                         for k, e in self.expected.items()},
        }


def catalog_path() -> Path | None:
    env = os.environ.get("GRIDLOCK_CATALOG")
    return Path(env) if env else None


def _read_default() -> str:
    return resources.files("gridlock").joinpath("data/catalog.json").read_text(encoding="utf-8")


def load_catalog(path: str | os.PathLike | None = None) -> list[CatalogEntry]:
    path = path or catalog_path()
    text = Path(path).read_text(encoding="utf-8") if path else _read_default()
    data = json.loads(text)
    out = []
    for raw in data["entries"]:
        grid = None
        if raw.get("grid"):
            gd = raw["grid"]
            grid = validate(gd["n"], gd["x"], gd["o"], raw["name"])
        expected = {}
        for key, e in raw.get("expected", {}).items():
            if e["source"] not in ("PAPER", "DERIVED"):
                raise ValueError(f"{raw['name']}: expectation {key} has unknown provenance {e['source']!r}")
            expected[key] = Expectation(e["value"], e["source"], e.get("note", ""))
        out.append(CatalogEntry(raw["name"], grid, raw.get("legendrian_type", ""), raw.get("grid_knot", ""),
                                expected, raw.get("description", "")))
    return out


def get_entry(name: str, path=None) -> CatalogEntry:
    for e in load_catalog(path):
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


def knot_grids(path=None) -> list[GridDiagram]:
    return [e.grid for e in load_catalog(path) if e.grid is not None]
