"""Canonical Legendrian invariant cycles and concordance obstructions.

For a grid G, x+ places a point at the upper-right corner of every X and x-
at the lower-left corner.  Both are cycles of the tilde complex.  Their
bigradings satisfy (checked across the catalog)

    x+ : (tb - r + 1, (tb - r + 1) / 2)      x- : (tb + r + 1, (tb + r + 1) / 2)

with tb, r those of the front of G.  The class of x+ is unchanged by
stabilizations of type SW (delta tb = delta r = -1) and dies under type NE;
the roles swap for x-.  The homology containing these classes is that of the
grid's knot, i.e. the mirror of the front's knot type, matching the fact
that the invariant lives over the orientation-reversed three-sphere.

Verdicts use x+ unless told otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .complex import DEFAULT_BUDGET, GridState, enumerate_states, filtered_differential, gradings
from .errors import BudgetExceeded, IncomparableUnknowns, MultiComponent
from .f2 import in_image
from .grid import ClassicalInvariants, GridDiagram, classical_invariants, trace_components

UNKNOWN = "unknown"

Status = bool | None | str  # True/False, None = not defined on that page, "unknown" = budget ran out

# stabilization type -> (delta tb, delta r) of the front; frozen from the front oracle
STABILIZATION_EFFECT = {"NW": (0, 0), "SE": (0, 0), "NE": (-1, 1), "SW": (-1, -1)}
# stabilization type that leaves the class of x+ (resp. x-) unchanged
PRESERVING_STABILIZATION = {"plus": "SW", "minus": "NE"}


def canonical_cycles(g: GridDiagram) -> tuple[GridState, GridState]:
    if trace_components(g) != 1:
        raise MultiComponent("canonical cycles need a single-component grid")
    n = g.n
    plus = [0] * n
    minus = [0] * n
    for r, c in enumerate(g.x0):
        plus[(c + 1) % n] = (r + 1) % n
        minus[c] = r
    out = []
    for perm in (plus, minus):
        m, a = gradings(g, perm)
        out.append(GridState(tuple(perm), m, a))
    return out[0], out[1]


@dataclass
class InvariantClass:
    which: Literal["plus", "minus"]
    cycle: GridState
    bigrading: tuple[int, int]
    vanishing: Status
    delta_vanishing: dict[int, Status]
    grid_ref: str
    window: tuple[int, int] | None = None
    states: int | None = None
    is_cycle: bool | None = None
    note: str = ""

    @property
    def known(self) -> bool:
        return self.vanishing != UNKNOWN

    def to_dict(self) -> dict:
        return {
            "which": self.which,
            "cycle": list(self.cycle.perm),
            "bigrading": {"maslov": self.bigrading[0], "alexander": self.bigrading[1]},
            "vanishing": self.vanishing,
            "delta_vanishing": {str(k): v for k, v in self.delta_vanishing.items()},
            "grid": self.grid_ref,
            "window": list(self.window) if self.window else None,
            "states": self.states,
            "is_cycle": self.is_cycle,
            "note": self.note,
        }


def invariant_window(alexander: int, k_max: int) -> tuple[int, int]:
    """Alexander window centred on the class, radius k_max + 1, plus one level below."""
    return alexander - k_max - 2, alexander + k_max + 1


def invariant_class(g: GridDiagram, which: Literal["plus", "minus"] = "plus", k_max: int = 3,
                    budget: int = DEFAULT_BUDGET, threads: int = 1) -> InvariantClass:
    """Vanishing of the canonical class and of its images under d_1..d_k_max.

    Only states with Alexander grading in :func:`invariant_window` and Maslov
    grading within one of the cycle's are generated; that sub-quotient has
    the same pages as the full complex at the cycle's position.
    """
    plus, minus = canonical_cycles(g)
    cyc = plus if which == "plus" else minus
    m, s = cyc.maslov, cyc.alexander
    window = invariant_window(s, k_max)
    try:
        states = enumerate_states(g, window, budget=budget, maslov_values=(m - 1, m, m + 1))
    except BudgetExceeded as exc:
        return InvariantClass(which, cyc, (m, s), UNKNOWN, {k: UNKNOWN for k in range(1, k_max + 1)},
                              g.digest(), window, None, None, f"budget exceeded: {exc}")
    c = filtered_differential(g, states, threads=threads)
    k = states.index_of(cyc.perm)
    bucket = c.buckets[(m, s)]
    e = np.zeros(len(bucket), dtype=np.uint8)
    e[int(np.flatnonzero(bucket == k)[0])] = 1
    is_cycle = not c.matrix((m, s)).matvec(e).any()
    vanishing = in_image(c.matrix((m + 1, s)), e)
    status = c.reduction().class_status([k], k_max)
    if status["zero_on_e1"] != vanishing:
        raise AssertionError("boundary test and page reduction disagree on the E1 class")
    return InvariantClass(which, cyc, (m, s), bool(vanishing), status["delta"], g.digest(), window,
                          len(states), bool(is_cycle))


# -- verdicts ------------------------------------------------------------------

VerdictKind = Literal["ClassicallyObstructed", "ObstructedRegular", "ObstructedDecomposable", "NoObstructionFound"]


@dataclass
class Endpoint:
    """A Legendrian knot as seen by the obstruction test."""

    name: str
    classical: ClassicalInvariants
    invariant: InvariantClass | None = None


@dataclass
class Verdict:
    kind: VerdictKind
    source: str
    target: str
    k: int | None = None
    evidence: list[str] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.kind}({self.k})" if self.kind == "ObstructedDecomposable" else self.kind

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "direction": {"from": self.source, "to": self.target},
            "evidence": list(self.evidence),
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _status_text(v: Status) -> str:
    return {True: "= 0", False: "!= 0", None: "undefined"}.get(v, "unknown") if not isinstance(v, str) else v


def concordance_obstruction(source: Endpoint, target: Endpoint, k_max: int = 3) -> Verdict:
    """Test for a Lagrangian concordance from ``source`` (bottom) to ``target`` (top).

    A concordance forces equal tb and r.  If the target's invariant vanishes
    and the source's does not, no regular concordance exists.  Failing that,
    the least k with d_k of the target's class zero and of the source's
    nonzero rules out decomposable concordances.  ``NoObstructionFound`` does
    not claim a concordance exists.
    """
    sc, tc = source.classical, target.classical
    ev: list[str] = [f"source {source.name}: tb={sc.tb}, r={sc.r}", f"target {target.name}: tb={tc.tb}, r={tc.r}"]
    if (sc.tb, sc.r) != (tc.tb, tc.r):
        ev.append("a Lagrangian concordance has Euler characteristic 0, forcing equal tb and equal r")
        return Verdict("ClassicallyObstructed", source.name, target.name, None, ev)
    si, ti = source.invariant, target.invariant
    if si is None or ti is None:
        raise ValueError("invariant classes are required once tb and r agree")
    if not si.known or not ti.known:
        raise IncomparableUnknowns("an invariant's vanishing status is unknown (budget exceeded)")
    ev.append(f"theta(target) {_status_text(ti.vanishing)}, theta(source) {_status_text(si.vanishing)}")
    if ti.vanishing is True and si.vanishing is False:
        ev.append("invariant of the top vanishes but not of the bottom: no regular Lagrangian concordance")
        return Verdict("ObstructedRegular", source.name, target.name, None, ev)
    for k in range(1, k_max + 1):
        tv = ti.delta_vanishing.get(k, UNKNOWN)
        sv = si.delta_vanishing.get(k, UNKNOWN)
        if tv == UNKNOWN or sv == UNKNOWN:
            raise IncomparableUnknowns(f"d_{k} status unknown (budget exceeded)")
        ev.append(f"d_{k}(theta(target)) {_status_text(tv)}, d_{k}(theta(source)) {_status_text(sv)}")
        if tv is True and sv is False:
            ev.append(f"d_{k} kills the top class but not the bottom one: no decomposable Lagrangian concordance")
            return Verdict("ObstructedDecomposable", source.name, target.name, k, ev)
    ev.append("no test fired; this is not a claim that a concordance exists")
    return Verdict("NoObstructionFound", source.name, target.name, None, ev)


def endpoint_for_grid(g: GridDiagram, name: str | None = None, which: Literal["plus", "minus"] = "plus",
                      k_max: int = 3, budget: int = DEFAULT_BUDGET, threads: int = 1) -> Endpoint:
    return Endpoint(name or g.name or g.digest(), classical_invariants(g),
                    invariant_class(g, which, k_max, budget, threads))


def obstruct_grids(source: GridDiagram, target: GridDiagram, k_max: int = 3, which: Literal["plus", "minus"] = "plus",
                   budget: int = DEFAULT_BUDGET, threads: int = 1) -> Verdict:
    src = Endpoint(source.name or source.digest(), classical_invariants(source))
    tgt = Endpoint(target.name or target.digest(), classical_invariants(target))
    if (src.classical.tb, src.classical.r) == (tgt.classical.tb, tgt.classical.r):
        src.invariant = invariant_class(source, which, k_max, budget, threads)
        tgt.invariant = invariant_class(target, which, k_max, budget, threads)
    v = concordance_obstruction(src, tgt, k_max)
    v.provenance = {
        "source_grid": source.digest(),
        "target_grid": target.digest(),
        "cycle": which,
        "k_max": k_max,
        "budget": budget,
        "windows": {
            "source": list(src.invariant.window) if src.invariant and src.invariant.window else None,
            "target": list(tgt.invariant.window) if tgt.invariant and tgt.invariant.window else None,
        },
    }
    return v
