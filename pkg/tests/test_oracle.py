import itertools

import numpy as np
import pytest
from conftest import coverage_matrices
from helpers import small_instance
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from coverlife import (
    CoverageMatrix,
    SensorCover,
    TooManyCovers,
    enumerate_minimal_covers,
    exact_optimum,
    is_cover,
    is_minimal,
    lp_optimal_lifetime,
    upper_bound,
    validate_schedule,
)
from coverlife.oracle import simplex_max


def brute_minimal_covers(M):
    return {
        S
        for r in range(1, M.n + 1)
        for S in itertools.combinations(range(M.n), r)
        if is_minimal(M, S)
    }


def vertex_enumeration_max(A, b):
    """max 1.x s.t. Ax <= b, x >= 0 by trying every basis of the square system."""
    rows, cols = A.shape
    G = np.vstack([A, -np.eye(cols)])
    h = np.concatenate([b, np.zeros(cols)])
    best = 0.0
    for idx in itertools.combinations(range(len(h)), cols):
        sub = G[list(idx)]
        if abs(np.linalg.det(sub)) < 1e-12:
            continue
        x = np.linalg.solve(sub, h[list(idx)])
        if np.all(G @ x <= h + 1e-9):
            best = max(best, x.sum())
    return best


def scipy_optimum(covers, battery):
    C = np.zeros((len(battery), len(covers)))
    for p, c in enumerate(covers):
        C[list(c), p] = 1
    res = linprog(-np.ones(len(covers)), A_ub=C, b_ub=battery, bounds=(0, None), method="highs")
    assert res.status == 0
    return -res.fun


class TestEnumerate:
    def test_triangle(self, triangle):
        covers = enumerate_minimal_covers(triangle)
        assert [c.members for c in covers] == [(0, 1), (0, 2), (1, 2)]
        assert set(c.members for c in covers) == brute_minimal_covers(triangle)

    def test_identity(self):
        M = CoverageMatrix.from_rows([{0}, {1}], 2)
        assert list(enumerate_minimal_covers(M)) == [SensorCover((0, 1))]

    def test_parallel_sensors(self):
        M = CoverageMatrix.from_rows([{0}, {0}], 1)
        assert list(enumerate_minimal_covers(M)) == [SensorCover((0,)), SensorCover((1,))]

    def test_limit(self):
        M = CoverageMatrix.from_rows([{0}] * 10, 1)
        with pytest.raises(TooManyCovers):
            enumerate_minimal_covers(M, limit=9)
        assert len(enumerate_minimal_covers(M, limit=10)) == 10

    @settings(max_examples=200, deadline=None)
    @given(coverage_matrices(max_n=9, max_m=6))
    def test_matches_brute_force(self, M):
        covers = enumerate_minimal_covers(M)
        assert set(c.members for c in covers) == brute_minimal_covers(M)
        for a, b in itertools.permutations(covers, 2):
            assert not set(a) <= set(b)


class TestLp:
    def test_triangle(self, triangle):
        sol = lp_optimal_lifetime(enumerate_minimal_covers(triangle), (1, 1, 1))
        assert sol.objective == pytest.approx(1.5, abs=1e-9)
        assert sol.weights == pytest.approx((0.5, 0.5, 0.5), abs=1e-9)

    def test_triangle_vertex_enumeration(self):
        A = np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=float)
        assert vertex_enumeration_max(A, np.ones(3)) == pytest.approx(1.5)

    def test_single_cover(self):
        assert lp_optimal_lifetime([SensorCover((0,))], (1.0,)).objective == pytest.approx(1.0)

    def test_independent_covers(self):
        assert lp_optimal_lifetime([SensorCover((0,)), SensorCover((1,))], (1.0, 1.0)).objective == pytest.approx(2.0)

    def test_simplex_degenerate_cycling_example(self):
        # Beale's example, which cycles under the largest-coefficient rule; optimum 5/4
        A = np.array([[0.25, -8, -1, 9], [0.5, -12, -0.5, 3], [0, 0, 1, 0]])
        b = np.array([0.0, 0.0, 1.0])
        c = np.array([0.75, -20, 0.5, -6])
        obj, x = simplex_max(A, b, c)
        assert obj == pytest.approx(1.25)
        assert x == pytest.approx([1, 0, 1, 0])
        assert np.all(A @ x <= b + 1e-9)

    @settings(max_examples=150, deadline=None)
    @given(coverage_matrices(max_n=8, max_m=5), st.data())
    def test_matches_scipy(self, M, data):
        b = data.draw(st.lists(st.floats(0.05, 1.0), min_size=M.n, max_size=M.n))
        covers = enumerate_minimal_covers(M)
        sol = lp_optimal_lifetime(covers, b)
        assert sol.objective == pytest.approx(scipy_optimum(list(covers), b), abs=1e-7)
        assert min(sol.weights) >= 0
        assert validate_schedule(M, b, sol.schedule(), tolerance=1e-7).ok
        assert sol.objective <= upper_bound(M, b) + 1e-7

    @pytest.mark.parametrize("seed", range(20))
    def test_non_minimal_columns_change_nothing(self, seed):
        _, M = small_instance(seed)
        n = M.n
        rng = np.random.default_rng(seed)
        b = rng.uniform(0.2, 1.0, n)
        minimal = list(enumerate_minimal_covers(M))
        extra = []
        for c in minimal[:10]:
            more = set(c) | {int(rng.integers(n))}
            if len(more) > len(c):
                extra.append(SensorCover(tuple(more)))
        base = lp_optimal_lifetime(minimal, b).objective
        assert lp_optimal_lifetime(minimal + extra, b).objective == pytest.approx(base, abs=1e-7)


def test_exact_optimum_triangle(triangle):
    assert exact_optimum(triangle, (1, 1, 1)).objective == pytest.approx(1.5)
