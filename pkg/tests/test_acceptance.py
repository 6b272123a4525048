"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line; the lines are printed as they
happen (visible with ``-s``) and collected in the terminal summary.
Criterion 10 is a non-gating stretch goal.
"""

import itertools
import random
import sys
import time

import numpy as np
import pytest

import oracle
from conftest import ACCEPTANCE, random_grids
from test_cobordism import generate
from gridlock.catalog import load_catalog
from gridlock.cobordism import check_concordance, compose, euler_characteristic, format_script, parse_script
from gridlock.complex import enumerate_states, filtered_differential, hat_dims, hat_dims_from_tilde, tilde_differential
from gridlock.errors import IncomparableUnknowns, Interleaved
from gridlock.grid import ClassicalInvariants, commute, stabilize
from gridlock.invariants import (
    PRESERVING_STABILIZATION,
    UNKNOWN,
    Endpoint,
    InvariantClass,
    canonical_cycles,
    concordance_obstruction,
    invariant_class,
)


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[k] = line
    print(line)
    assert ok, line


def catalog_grids():
    return [e.grid for e in load_catalog() if e.grid is not None]


def test_criterion_01_square_zero():
    t0 = time.perf_counter()
    grids = catalog_grids() + random_grids(100, 6, seed=1001)
    bad = [g for g in grids if not filtered_differential(g).square_is_zero()]
    elapsed = time.perf_counter() - t0
    record(1, not bad and elapsed < 30,
           f"d^2 = 0 (tilde and filtered) on {len(grids)} grids, {len(bad)} failures, {elapsed:.1f} s")


def test_criterion_02_oracle_equivalence():
    t0 = time.perf_counter()
    names = ["unknot", "trefoil-right", "trefoil-left", "figure-eight"]
    entries = {e.name: e.grid for e in load_catalog()}
    mismatched = [nm for nm in names
                  if hat_dims(entries[nm]) != oracle.hat_homology(entries[nm].n, entries[nm].x, entries[nm].o)]
    elapsed = time.perf_counter() - t0
    record(2, not mismatched and elapsed < 60,
           f"hat dims equal the brute-force oracle for {', '.join(names)}; mismatches {mismatched}, {elapsed:.1f} s")


def test_criterion_03_rank_law():
    # stated law: total tilde rank = 2^(n-1) for every knot grid with n <= 7
    grids = [g for g in catalog_grids() if g.n <= 7] + random_grids(30, 7, seed=1003)
    violations = []
    for g in grids:
        total = sum(tilde_differential(g).tilde_dims().values())
        if total != 2 ** (g.n - 1):
            violations.append((g.name or f"random n={g.n}", total, 2 ** (g.n - 1)))
    detail = f"{len(grids) - len(violations)}/{len(grids)} grids have tilde rank 2^(n-1)"
    if violations:
        name, got, want = violations[0]
        detail += (f"; e.g. {name}: {got} != {want}. The rank equals rank(hat) * 2^(n-1), which is"
                   " 2^(n-1) only for knots with one-dimensional hat homology")
    record(3, not violations, detail)


def test_criterion_04_symmetry():
    grids = catalog_grids()
    bad = []
    for g in grids:
        hat = hat_dims(g)
        if any(hat.get((d - 2 * s, -s), 0) != v for (d, s), v in hat.items()):
            bad.append(g.name)
    record(4, not bad, f"dim(d, s) = dim(d - 2s, -s) on {len(grids)} catalog knots; failures {bad}")


def _theta(g):
    return invariant_class(g, "plus", 1).vanishing


def test_criterion_05_move_invariance():
    t0 = time.perf_counter()
    checked = 0
    bad = []
    positive = PRESERVING_STABILIZATION["plus"]
    for g in catalog_grids():
        base_hat, base_theta = hat_dims(g), _theta(g)
        variants = []
        for col in range(1, g.n):
            try:
                variants.append((f"commute {col}", commute(g, col)))
            except Interleaved:
                pass
        for row in range(1, g.n + 1, max(1, g.n // 3)):
            variants.append((f"{positive} row {row}", stabilize(g, row, positive)))
        for label, h in variants:
            checked += 1
            if hat_dims(h) != base_hat or _theta(h) != base_theta:
                bad.append((g.name, label))
        # a one-step stabilization is itself stabilized again (kept to n <= 6 for time)
        if g.n > 6:
            continue
        s = stabilize(g, 1, positive)
        s2 = stabilize(s, s.n, positive)
        checked += 1
        if hat_dims(s2) != base_hat or _theta(s2) != base_theta:
            bad.append((g.name, "double"))
    elapsed = time.perf_counter() - t0
    record(5, not bad, f"hat dims and x+ vanishing unchanged across {checked} commutations/positive ({positive}) "
                       f"stabilizations; failures {bad}; {elapsed:.1f} s")


def test_criterion_06_cycles():
    grids = catalog_grids() + random_grids(100, 6, seed=1006)
    bad = 0
    for g in grids:
        c = tilde_differential(g)
        sources = set(c.tilde[0].tolist())
        for cyc in canonical_cycles(g):
            if c.states.index_of(cyc.perm) in sources:
                bad += 1
    record(6, bad == 0, f"x+ and x- are tilde cycles on {len(grids)} grids; {bad} failures")


def test_criterion_07_collapse():
    grids = [g for g in catalog_grids() if g.n <= 6] + random_grids(60, 6, seed=1007)
    bad = []
    for g in grids:
        c = filtered_differential(g)
        e_inf = c.reduction().page(len(c.states) + 1).total_dim()
        if e_inf != 2 ** (g.n - 1):
            bad.append((g.name, e_inf))
    record(7, not bad, f"E_infinity has dimension 2^(n-1) on {len(grids)} knot grids; failures {bad}")


def _expected_verdict(tb_match, r_match, t_theta, s_theta, t_deltas, s_deltas, k_max):
    if not (tb_match and r_match):
        return "ClassicallyObstructed", None
    if t_theta and not s_theta:
        return "ObstructedRegular", None
    for k in range(1, k_max + 1):
        if t_deltas[k] is True and s_deltas[k] is False:
            return "ObstructedDecomposable", k
    return "NoObstructionFound", None


def _delta_patterns(k_max):
    """Every consistent status sequence: True up to a first nonzero page, then undefined."""
    out = [{k: True for k in range(1, k_max + 1)}]
    for hit in range(1, k_max + 1):
        out.append({k: True if k < hit else False if k == hit else None for k in range(1, k_max + 1)})
    return out


def test_criterion_08_verdict_truth_table():
    k_max = 3
    cyc = canonical_cycles(next(g for g in catalog_grids() if g.n == 2))[0]
    cases = 0
    wrong = []
    for tb_match, r_match, t_theta, s_theta in itertools.product([True, False], repeat=4):
        for t_d, s_d in itertools.product(_delta_patterns(k_max), repeat=2):
            src = Endpoint("src", ClassicalInvariants(-1, 0), InvariantClass("plus", cyc, (0, 0), s_theta, s_d, "s"))
            tgt = Endpoint("tgt", ClassicalInvariants(-1 if tb_match else -2, 0 if r_match else 2),
                           InvariantClass("plus", cyc, (0, 0), t_theta, t_d, "t"))
            v = concordance_obstruction(src, tgt, k_max)
            want = _expected_verdict(tb_match, r_match, t_theta, s_theta, t_d, s_d, k_max)
            cases += 1
            if (v.kind, v.k) != want:
                wrong.append((tb_match, r_match, t_theta, s_theta, t_d, s_d, v.kind, v.k))
    # unknown statuses must never produce a verdict once tb and r agree
    for side in ("src", "tgt"):
        s_theta = UNKNOWN if side == "src" else False
        t_theta = UNKNOWN if side == "tgt" else False
        src = Endpoint("src", ClassicalInvariants(-1, 0), InvariantClass("plus", cyc, (0, 0), s_theta, {1: UNKNOWN}, "s"))
        tgt = Endpoint("tgt", ClassicalInvariants(-1, 0), InvariantClass("plus", cyc, (0, 0), t_theta, {1: UNKNOWN}, "t"))
        cases += 1
        try:
            concordance_obstruction(src, tgt, 1)
            wrong.append(("unknown", side))
        except IncomparableUnknowns:
            pass
    record(8, not wrong, f"{cases} verdict cases match the documented table; {len(wrong)} wrong")


def test_criterion_09_dsl():
    t0 = time.perf_counter()
    rng = random.Random(909)
    bad = 0
    for _ in range(1000):
        s = parse_script(generate(rng))
        printed = format_script(s)
        if parse_script(printed) != s or format_script(parse_script(printed)) != printed:
            bad += 1
        s2 = parse_script(generate(rng, start=list(s.end)))
        if euler_characteristic(compose(s, s2)) != euler_characteristic(s) + euler_characteristic(s2):
            bad += 1
        if len(s.start) == 1 and len(s.end) == 1:
            rep = check_concordance(s)
            if rep.passed and euler_characteristic(s) != 0:
                bad += 1
    elapsed = time.perf_counter() - t0
    record(9, bad == 0 and elapsed < 5,
           f"round trip, chi additivity and PASS => chi = 0 on 1000 scripts; {bad} failures; {elapsed:.1f} s")


def test_criterion_10_literature_scale():
    targets = ["m10_132-L1", "P(-4,-3,3)-L1", "P(-4,-3,3)-L2"]
    entries = {e.name: e for e in load_catalog()}
    missing = [t for t in targets if entries[t].grid is None]
    if missing:
        line = (f"criterion 10: SKIP  (stretch, non-gating) statuses unknown: no transcribed grids for "
                f"{', '.join(missing)}")
        ACCEPTANCE[10] = line
        print(line)
        pytest.skip(line)
    results = {}
    for t in targets:
        inv = invariant_class(entries[t].grid, "plus", 1)
        results[t] = (inv.vanishing, inv.delta_vanishing[1])
    if any(UNKNOWN in r for r in results.values()):
        line = f"criterion 10: SKIP  (stretch, non-gating) budget exceeded: {results}"
        ACCEPTANCE[10] = line
        pytest.skip(line)
    ok = (results["m10_132-L1"][0] is True and results["P(-4,-3,3)-L1"][1] is True
          and results["P(-4,-3,3)-L2"][1] is False)
    record(10, ok, f"literature statuses reproduced: {results}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
