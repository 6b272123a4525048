import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from gridlock.catalog import load_catalog
from gridlock.grid import trace_components, validate

sys.path.insert(0, str(Path(__file__).parent))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def random_grid(rng: np.random.Generator, n: int, knot: bool = True):
    while True:
        x = rng.permutation(n) + 1
        o = rng.permutation(n) + 1
        if np.any(x == o):
            continue
        g = validate(n, x.tolist(), o.tolist())
        if not knot or trace_components(g) == 1:
            return g


def random_grids(count: int, n_max: int, seed: int = 0, n_min: int = 2):
    rng = np.random.default_rng(seed)
    return [random_grid(rng, int(rng.integers(n_min, n_max + 1))) for _ in range(count)]


@st.composite
def grids(draw, n_min=2, n_max=7, knot=False):
    n = draw(st.integers(n_min, n_max))
    x = draw(st.permutations(range(1, n + 1)))
    o = draw(st.permutations(range(1, n + 1)))
    shift = draw(st.integers(1, n - 1))
    # make sure no row shares a cell: cyclically re-label O's columns if needed
    if any(a == b for a, b in zip(x, o)):
        o = [((c - 1 + shift) % n) + 1 for c in x]
    g = validate(n, list(x), list(o))
    if knot:
        from hypothesis import assume

        assume(trace_components(g) == 1)
    return g


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def catalog_grids(catalog):
    return [e.grid for e in catalog if e.grid is not None]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
