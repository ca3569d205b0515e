import math
from fractions import Fraction

import pytest

from blaschke import (
    BlaschkeProduct,
    ParameterError,
    classify_extremal,
    deriv_modulus,
    extrema,
    extremal_numerator,
    extremal_product,
    extremal_set,
    kappa_exact,
    kappa_from_pochhammer,
    predicted_extrema,
    symmetric_product,
    verify_uniqueness_structure,
)

NU_GRID = [Fraction(-1, 2), Fraction(-1, 4), Fraction(1, 4), Fraction(1, 2),
           Fraction(1), Fraction(2), Fraction(5)]


class TestExtremalProduct:
    def test_degree_two_example(self):
        B, spec = extremal_product(2, 1)
        assert list(extremal_numerator(2, 1).coeffs) == [1, 3, 6]
        want = (-3 + 1j * math.sqrt(15)) / 12
        assert min(abs(z - want) for z in B.zeros) < 1e-10
        assert spec.kind == "first"
        assert spec.kappa == Fraction(1, 6)
        assert abs(B(1.0) - 1.0) < 1e-12

    def test_degree_one_moebius(self):
        for nu in (Fraction(1, 2), Fraction(2), Fraction(5)):
            B, spec = extremal_product(1, nu)
            want = -float(nu / (nu + 2))
            assert abs(B.zeros[0] - want) < 1e-12
            rep = extrema(B)
            assert rep.max_deriv == pytest.approx(float(1 + nu), abs=1e-10)
            assert rep.min_deriv == pytest.approx(float(1 / (1 + nu)), abs=1e-10)

    def test_monomial_case(self):
        B, spec = extremal_product(4, 0)
        assert B.zeros == (0j,) * 4
        assert spec.kind == "monomial"
        assert spec.predicted_max == spec.predicted_min == 4

    def test_rejects_nu_at_minus_one(self):
        with pytest.raises(ParameterError):
            extremal_product(3, -1)

    def test_numerator_signs(self):
        # positive rational coefficients, except the leading one for -1 < nu < 0
        for n in (3, 8):
            pos = extremal_numerator(n, Fraction(1, 2)).coeffs
            assert all(c > 0 for c in pos)
            neg = extremal_numerator(n, Fraction(-1, 4)).coeffs
            assert all(c > 0 for c in neg[:-1]) and neg[-1] < 0


class TestPredictedExtrema:
    def test_first_kind_example(self):
        assert predicted_extrema(15, 5) == (20, Fraction(5, 2))

    def test_second_kind_example(self):
        assert predicted_extrema(15, Fraction(-1, 4)) == (20, Fraction(59, 4))

    def test_monomial(self):
        assert predicted_extrema(2, 0) == (2, 2)

    def test_matches_scan_on_grid(self):
        for n in range(1, 13):
            for nu in NU_GRID:
                B, spec = extremal_product(n, nu)
                rep = extrema(B)
                assert rep.max_deriv == pytest.approx(float(spec.predicted_max), abs=1e-8)
                assert rep.min_deriv == pytest.approx(float(spec.predicted_min), abs=1e-8)

    def test_equalities_by_kind(self):
        for n in (2, 5, 9):
            for nu in NU_GRID:
                big, small = (float(x) for x in predicted_extrema(n, nu))
                if nu > 0:
                    assert small == pytest.approx(n / (big - n + 1), abs=1e-9)
                else:
                    assert small == pytest.approx(n - 1 + n / big, abs=1e-9)


class TestKappa:
    def test_value(self):
        assert kappa_exact(2, 1) == Fraction(1, 6)

    def test_two_forms_agree(self):
        for n in range(1, 13):
            for nu in NU_GRID:
                assert kappa_exact(n, nu) == kappa_from_pochhammer(n, nu)

    def test_lifted_residue_sum_is_exactly_one(self):
        for n in range(1, 13):
            for nu in NU_GRID:
                total = (Fraction(n) / (n + nu + 1)
                         + 1 / (Fraction(n) / (nu + 1) + 1))
                assert total == 1


class TestExtremalSet:
    def test_degree_two_points(self):
        B, spec = extremal_product(2, 1)
        es = extremal_set(B, spec)
        want = [1.0, (-2 + 1j * math.sqrt(5)) / 3, (-2 - 1j * math.sqrt(5)) / 3]
        assert len(es.points) == 3
        for w in want:
            assert min(abs(p - w) for p in es.points) < 1e-9

    def test_degree_two_derivative_values(self):
        B, spec = extremal_product(2, 1)
        es = extremal_set(B, spec)
        values = sorted(deriv_modulus(B, p) for p in es.points)
        assert values == pytest.approx([1.0, 3.0, 3.0], abs=1e-9)

    def test_moebius_case(self):
        B, spec = extremal_product(1, 1)
        es = extremal_set(B, spec)
        assert len(es.points) == 2
        at_one = min(es.points, key=lambda p: abs(p - 1.0))
        other = max(es.points, key=lambda p: abs(p - 1.0))
        assert deriv_modulus(B, at_one) == pytest.approx(0.5, abs=1e-9)
        assert deriv_modulus(B, other) == pytest.approx(2.0, abs=1e-9)

    def test_grid(self):
        for n in (1, 4, 9):
            for nu in NU_GRID:
                B, spec = extremal_product(n, nu)
                es = extremal_set(B, spec)
                assert len(es.points) == n + 1


class TestClassifyExtremal:
    def test_example_first_kind(self):
        B, _ = extremal_product(2, 1)
        got = classify_extremal(B)
        assert got.extremal and got.kind == "first"
        assert got.nu == pytest.approx(1.0, abs=1e-9)

    def test_second_kind(self):
        B, _ = extremal_product(5, Fraction(-1, 4))
        got = classify_extremal(B)
        assert got.extremal and got.kind == "second"
        assert got.nu == pytest.approx(-0.25, abs=1e-8)

    def test_symmetric_not_extremal(self):
        B, _ = symmetric_product(2, 0.5)
        got = classify_extremal(B)
        assert not got.extremal and got.verdict == "no"

    def test_monomial(self):
        got = classify_extremal(BlaschkeProduct((0j,) * 3))
        assert got.extremal and got.kind == "monomial" and got.nu == 0.0


class TestUniquenessStructure:
    def test_degree_two(self):
        B, spec = extremal_product(2, 1)
        rep = verify_uniqueness_structure(B, spec)
        assert rep.ode_exact and rep.key_identity_exact and rep.psi_checked
        assert rep.psi_residual < 1e-7
        assert rep.max_circle_deviation < 1e-7
        # psi = 2 (3 z^2 + 4 z + 3)^2 has leading coefficient 18
        assert rep.leading_constant == pytest.approx(18.0)

    def test_psi_matches_square_of_extremal_factor(self):
        from blaschke import psi_polynomial
        psi = psi_polynomial(2, 1)
        assert [int(c) for c in psi.coeffs] == [18, 48, 68, 48, 18]

    def test_grid(self):
        for n in (1, 3, 7, 12):
            for nu in NU_GRID:
                B, spec = extremal_product(n, nu)
                rep = verify_uniqueness_structure(B, spec)
                assert rep.ode_exact and rep.key_identity_exact

    def test_monomial_skips_psi(self):
        B, spec = extremal_product(3, 0)
        rep = verify_uniqueness_structure(B, spec)
        assert rep.ode_exact and rep.key_identity_exact and not rep.psi_checked


class TestSymmetricProduct:
    def test_closed_form(self):
        B, (big, small) = symmetric_product(2, 0.5)
        assert big == pytest.approx(10 / 3)
        assert small == pytest.approx(6 / 5)
        assert big * small == pytest.approx(4.0)

    def test_scan_agreement(self):
        for n, a in ((2, 0.5), (5, 0.6), (3, 0.9)):
            B, (big, small) = symmetric_product(n, a)
            rep = extrema(B)
            assert rep.max_deriv == pytest.approx(big, abs=1e-8)
            assert rep.min_deriv == pytest.approx(small, abs=1e-8)

    def test_small_radius_limit(self):
        B, (big, small) = symmetric_product(3, 1e-4)
        assert big == pytest.approx(3.0, abs=1e-10)
        assert small == pytest.approx(3.0, abs=1e-10)

    def test_maximum_attained_n_times(self):
        n = 5
        B, (big, _) = symmetric_product(n, 0.6)
        import numpy as np
        from blaschke import deriv_profile
        t = np.linspace(-math.pi, math.pi, 1 << 14, endpoint=False)
        vals = deriv_profile(B, t)
        near_max = vals > big - 1e-6
        # count circular runs of near-maximal samples
        runs = int(np.sum(near_max & ~np.roll(near_max, 1)))
        assert runs == n

    def test_domain(self):
        with pytest.raises(ParameterError):
            symmetric_product(3, 1.0)
