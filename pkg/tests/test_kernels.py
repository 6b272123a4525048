import numpy as np
import pytest

from conftest import random_grids
from gridlock import kernels
from gridlock._pykernels import rectangles as py_rectangles
from gridlock.complex import enumerate_states, grading_tables

py = kernels.python_backend
cy = kernels.compiled_backend

needs_compiled = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")
    if cy is not None:
        assert kernels.BACKEND == "cython"


@needs_compiled
@pytest.mark.parametrize("g", random_grids(12, 6, seed=3, n_min=3), ids=str)
def test_backends_agree(g):
    t = grading_tables(g)
    w = t.a2_weights
    for lo, hi in ((-(1 << 40), 1 << 40), (0, 2), (-1, -1)):
        p1, s1, o1 = py.enumerate_states(w, lo, hi, 10**6)
        p2, s2, o2 = cy.enumerate_states(w, lo, hi, 10**6)
        assert np.array_equal(p1, p2) and np.array_equal(s1, s2) and o1 == o2
    perms = p1 if len(p1) else py.enumerate_states(w, -(1 << 40), 1 << 40, 10**6)[0]
    assert np.array_equal(py.encode(perms, g.n), cy.encode(perms, g.n))
    assert np.array_equal(py.maslov(perms, t.o_corner, t.o_const), cy.maslov(perms, t.o_corner, t.o_const))
    states = enumerate_states(g)
    xs = np.asarray(g.x0, dtype=np.int64)
    os_ = np.asarray(g.o0, dtype=np.int64)
    for allow_x in (False, True):
        a = py.rectangles(states.perms, states.codes, xs, os_, allow_x, 0, len(states))
        b = cy.rectangles(states.perms, states.codes, xs, os_, allow_x, 0, len(states))
        key_a = sorted(zip(*(v.tolist() for v in a)))
        key_b = sorted(zip(*(v.tolist() for v in b)))
        assert key_a == key_b


@needs_compiled
def test_budget_overflow_same():
    g = random_grids(1, 6, seed=5, n_min=6)[0]
    w = grading_tables(g).a2_weights
    for backend in (py, cy):
        perms, _sums, overflow = backend.enumerate_states(w, -(1 << 40), 1 << 40, 100)
        assert overflow and len(perms) == 101


def test_rectangles_split_ranges_concatenate():
    g = random_grids(1, 5, seed=8, n_min=5)[0]
    states = enumerate_states(g)
    xs = np.asarray(g.x0, dtype=np.int64)
    os_ = np.asarray(g.o0, dtype=np.int64)
    whole = py_rectangles(states.perms, states.codes, xs, os_, True, 0, len(states))
    half = len(states) // 2
    a = py_rectangles(states.perms, states.codes, xs, os_, True, 0, half)
    b = py_rectangles(states.perms, states.codes, xs, os_, True, half, len(states))
    for k in range(3):
        assert np.array_equal(whole[k], np.concatenate([a[k], b[k]]))


def test_encode_order_is_lexicographic():
    perms = np.array([[0, 1, 2], [0, 2, 1], [1, 0, 2], [2, 1, 0]], dtype=np.int8)
    codes = py.encode(perms, 3)
    assert list(codes) == sorted(codes)
