import math

import numpy as np
import pytest

from blaschke import (
    FeasibleTriple,
    ParameterError,
    ZeroPaths,
    classify_circle_maps,
    construct,
    extrema,
    extremal_product,
    feasibility,
    solve_lambda,
    solve_t,
)


class TestFeasibility:
    def test_boundary_triple(self):
        rep = feasibility(2, 1.0, 3.0)
        assert rep.feasible
        assert rep.left_slack == pytest.approx(0.0, abs=1e-15)

    def test_infeasible_cites_right_bound(self):
        rep = feasibility(3, 2.9, 4.0)
        assert not rep.feasible
        assert rep.upper_bound == pytest.approx(2.75)
        assert "2.75" in rep.violation()

    def test_strict_interior(self):
        rep = feasibility(3, 1.6, 4.0)
        assert rep.feasible
        assert rep.lower_bound == pytest.approx(1.5)
        assert rep.upper_bound == pytest.approx(2.75)
        assert rep.left_slack > 0 and rep.right_slack > 0

    def test_trivial_chain(self):
        assert not feasibility(3, 3.5, 4.0).feasible
        assert not feasibility(3, 1.0, 2.5).feasible

    def test_validated_triple_type(self):
        FeasibleTriple(2, 1.0, 3.0)
        with pytest.raises(ParameterError):
            FeasibleTriple(3, 2.9, 4.0)

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            feasibility(0, 1.0, 2.0)
        with pytest.raises(ParameterError):
            feasibility(2, -1.0, 3.0)


class TestZeroPaths:
    def test_endpoints(self):
        start = (0.5 + 0j, 0.2j)
        end = (0.3 + 0.1j, -0.4j)
        paths = ZeroPaths(start, end)
        for a in start:
            assert min(abs(w - a) for w in paths(0.0)) < 1e-12
        for b in end:
            assert min(abs(w - b) for w in paths(1.0)) < 1e-12

    def test_avoids_origin_and_stays_inside(self):
        B2, _ = extremal_product(3, 1.5)
        B3, _ = extremal_product(3, 3 / 4.0 - 1)
        paths = ZeroPaths(B2.zeros, B3.zeros)
        for t in np.linspace(0, 1, 101):
            for w in paths(t):
                assert 0 < abs(w) < 1

    def test_rejects_origin(self):
        with pytest.raises(ParameterError):
            ZeroPaths((0j,), (0.5 + 0j,))


class TestSolveLambda:
    def test_single_zero_closed_form(self):
        # M of a single zero at r is (1+r)/(1-r); target 3 needs r = 1/2
        paths = ZeroPaths((0.5 + 0j,), (0.5 + 0j,))
        lam = solve_lambda(0.3, paths, 3.0)
        assert lam == pytest.approx(1.0, abs=1e-6)

    def test_extremal_start_gives_unit_scale(self):
        B2, _ = extremal_product(3, 1.0)
        B3, _ = extremal_product(3, 3 / 4.0 - 1)
        paths = ZeroPaths(B2.zeros, B3.zeros)
        assert solve_lambda(0.0, paths, 4.0) == pytest.approx(1.0, abs=1e-6)
        assert solve_lambda(1.0, paths, 4.0) == pytest.approx(1.0, abs=1e-6)

    def test_target_near_degree_gives_small_scale(self):
        paths = ZeroPaths((0.5 + 0j,), (0.5 + 0j,))
        lam = solve_lambda(0.0, paths, 1.001)
        assert 0 < lam < 0.01

    def test_rejects_target_at_degree(self):
        paths = ZeroPaths((0.5 + 0j,), (0.5 + 0j,))
        with pytest.raises(ParameterError):
            solve_lambda(0.0, paths, 1.0)


class TestSolveT:
    def test_endpoint_acceptance(self):
        B2, _ = extremal_product(3, 1.0)
        B3, _ = extremal_product(3, -0.25)
        paths = ZeroPaths(B2.zeros, B3.zeros)
        t, B = solve_t(paths, 3 / (4 - 3 + 1), 4.0)
        assert t == 0.0

    def test_interior_crossing(self):
        B2, _ = extremal_product(3, 1.0)
        B3, _ = extremal_product(3, 3 / 4.0 - 1)
        paths = ZeroPaths(B2.zeros, B3.zeros)
        t, B = solve_t(paths, 1.6, 4.0)
        assert 0 < t < 1
        rep = extrema(B)
        assert rep.min_deriv == pytest.approx(1.6, abs=1e-6)
        assert rep.max_deriv == pytest.approx(4.0, abs=1e-6)


class TestConstruct:
    def test_monomial_case(self):
        B = construct(3, 3.0, 3.0)
        assert B.zeros == (0j,) * 3

    def test_left_equality_reproduces_example(self):
        B = construct(2, 1.0, 3.0)
        want, _ = extremal_product(2, 1)
        for a in B.zeros:
            assert min(abs(a - b) for b in want.zeros) < 1e-10

    def test_first_kind_15(self):
        B = construct(15, 2.5, 20.0)
        want, _ = extremal_product(15, 5)
        for a in B.zeros:
            assert min(abs(a - b) for b in want.zeros) < 1e-9

    def test_right_equality(self):
        n, M = 4, 6.0
        m = n - 1 + n / M
        B = construct(n, m, M)
        want, _ = extremal_product(4, 4 / 6.0 - 1)
        for a in B.zeros:
            assert min(abs(a - b) for b in want.zeros) < 1e-9

    def test_interior_triple(self):
        B = construct(3, 1.6, 4.0)
        rep = extrema(B)
        assert rep.max_deriv == pytest.approx(4.0, abs=1e-4)
        assert rep.min_deriv == pytest.approx(1.6, abs=1e-4)

    def test_interior_triple_breaks_lower_homeo(self):
        # M <= n+1 does not force m >= n-1 once n > 2
        B = construct(3, 1.6, 4.0)
        resolved = classify_circle_maps(B).resolve()
        assert resolved["upper_homeo"]
        assert not resolved["lower_homeo"]

    def test_infeasible_rejected(self):
        with pytest.raises(ParameterError):
            construct(3, 2.9, 4.0)

    def test_round_trips(self):
        rng = np.random.default_rng(20250810)
        for k in range(8):
            n = int(rng.integers(2, 5))
            M = n + float(rng.uniform(0.3, 1.2))
            lo = n / (M - n + 1)
            hi = n - 1 + n / M
            if k < 4:
                m = lo if k % 2 else hi
            else:
                m = float(rng.uniform(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo)))
            B = construct(n, m, M)
            rep = extrema(B)
            assert rep.max_deriv == pytest.approx(M, abs=1e-4)
            assert rep.min_deriv == pytest.approx(m, abs=1e-4)
