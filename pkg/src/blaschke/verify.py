"""Named invariant suites driven by the CLI verify command.

Each suite bundles the identity, inequality and construction checks of one
area into a list of pass/fail results.  Random inputs always come from a
seeded generator so reruns are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NumericFailure, ParameterError, VerificationFailure
from . import hypergeo
from . import products
from . import extremal
from . import prescribe

SUITES = ("identities", "inequalities", "extremal", "prescribe", "all")

NU_GRID = (
    Fraction(-1, 2), Fraction(-1, 4), Fraction(1, 4),
    Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def random_product(rng, degree: int, radius: float = 0.95,
                   zero_at_origin: bool = False) -> products.BlaschkeProduct:
    """Product with zeros uniform in the disk of the given radius and a
    uniform unimodular constant."""
    count = degree - 1 if zero_at_origin else degree
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    th = rng.uniform(-math.pi, math.pi, count)
    zeros = tuple(r * np.exp(1j * th))
    if zero_at_origin:
        zeros += (0j,)
    alpha = complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
    return products.BlaschkeProduct(zeros, alpha)


def _family(name: str, cases) -> CheckResult:
    """Collapse many parameterized checks into one table row."""
    total = 0
    for label, fn in cases:
        total += 1
        try:
            fn()
        except (VerificationFailure, NumericFailure, ParameterError) as exc:
            return CheckResult(name, False, f"{label}: {exc}")
    return CheckResult(name, True, f"{total} cases")


def suite_identities(seed: int = 0, max_n: int = 12) -> list:
    grid = [(n, nu) for n in range(1, max_n + 1) for nu in NU_GRID]
    results = [
        _family("wronskian identity", [
            (f"n={n} nu={nu}",
             lambda n=n, nu=nu: hypergeo.check_wronskian_identity(-n, nu + 1))
            for n, nu in grid
        ]),
        _family("contiguous relations", [
            (f"n={n} nu={nu}",
             lambda n=n, nu=nu: hypergeo.check_contiguous(
                 -n, nu + 1, -n - nu, sample_points=(1, Fraction(1, 3))))
            for n, nu in grid
        ]),
        _family("value at one", [
            (f"n={n} nu={nu}", lambda n=n, nu=nu: _check_value_at_one(n, nu))
            for n, nu in grid
        ]),
        _family("reciprocal transform and leading constant", [
            (f"n={n} nu={nu}", lambda n=n, nu=nu: _check_reciprocal(n, nu))
            for n, nu in grid
        ]),
        _family("differential equation and key identity", [
            (f"n={n} nu={nu}", lambda n=n, nu=nu: _check_structure(n, nu))
            for n, nu in grid
        ]),
        _family("ultraspherical circle form", [
            (f"n={n} lam={lam}",
             lambda n=n, lam=lam: hypergeo.check_gegenbauer_relation(n, lam))
            for n, lam in ((3, Fraction(1, 2)), (1, 1), (6, 2), (5, Fraction(-2, 5)))
        ]),
        _family("roots on the circle", [
            (f"n={n} lam={lam}",
             lambda n=n, lam=lam: hypergeo.check_roots_on_circle(n, lam))
            for n in range(1, 21)
            for lam in (Fraction(-2, 5), Fraction(1, 2), Fraction(1), Fraction(3))
        ]),
        _family("roots in the disk", [
            (f"n={n} nu={nu}",
             lambda n=n, nu=nu: hypergeo.check_roots_in_disk(n, nu))
            for n in range(1, 21) for nu in NU_GRID
        ]),
    ]
    return results


def _check_value_at_one(n, nu):
    closed = hypergeo.hyper_at_one(n, nu)
    poly = hypergeo.hyper_poly(n, nu + 2, 1 - n - nu).poly
    if sum(poly.coeffs, Fraction(0)) != closed:
        raise VerificationFailure("coefficient sum disagrees with the closed form")
    if -1 < nu < 0 and closed >= 0:
        raise VerificationFailure("value at one should be negative")


def _check_reciprocal(n, nu):
    hypergeo.check_reciprocal_transform(n, nu + 2, 1 - n - nu)
    if extremal.kappa_exact(n, nu) != extremal.kappa_from_pochhammer(n, nu):
        raise VerificationFailure("the two forms of the leading constant disagree")


def _check_structure(n, nu):
    B, spec = extremal.extremal_product(n, nu)
    extremal.verify_uniqueness_structure(B, spec)


def suite_inequalities(seed: int = 0, count: int = 200) -> list:
    rng = np.random.default_rng(seed)
    results = []

    def main_inequality():
        for _ in range(count):
            B = random_product(rng, int(rng.integers(1, 9)))
            products.check_main_inequality(B)
            rep = products.extrema(B)
            if abs(rep.mean - B.degree) > 1e-8:
                raise VerificationFailure(f"mean {rep.mean} vs degree {B.degree}")
    results.append(_family("derivative-range inequality and mean value",
                           [("random sweep", main_inequality)]))

    def residue_sum():
        for _ in range(100):
            B = random_product(rng, int(rng.integers(1, 7)))
            lam = complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
            pre = products.preimages(B, lam, lifted=True)
            total = sum(1.0 / (products.deriv_modulus(B, w) + 1.0) for w in pre.points)
            if abs(total - 1.0) > 1e-9:
                raise VerificationFailure(f"lifted residue sum {total}")
    results.append(_family("lifted residue sum", [("random sweep", residue_sum)]))

    def residue_partial_fractions():
        for _ in range(30):
            B = random_product(rng, int(rng.integers(2, 6)), zero_at_origin=True)
            lam = complex(np.exp(1j * rng.uniform(-math.pi, math.pi)))
            products.residue_weights(B, lam)
    results.append(_family("residue weights of vanishing products",
                           [("random sweep", residue_partial_fractions)]))

    def monotone_scaling():
        for _ in range(50):
            B = random_product(rng, int(rng.integers(1, 7)))
            small = products.extrema(products.scale_zeros(B, 0.5))
            large = products.extrema(products.scale_zeros(B, 0.9))
            if not (small.max_deriv < large.max_deriv - 1e-9
                    and small.min_deriv > large.min_deriv + 1e-9):
                raise VerificationFailure("scaling monotonicity failed")
    results.append(_family("monotone zero scaling", [("random sweep", monotone_scaling)]))

    def semigroup():
        for _ in range(10):
            B = random_product(rng, int(rng.integers(1, 6)), radius=0.8)
            products.check_semigroup_average(B, 0.5)
    results.append(_family("kernel averaging", [("random sweep", semigroup)]))
    return results


def suite_extremal(seed: int = 0, max_n: int = 10) -> list:
    results = []

    def example_degree2():
        B, spec = extremal.extremal_product(2, 1)
        p = extremal.extremal_numerator(2, 1)
        if [c for c in p.coeffs] != [1, 3, 6]:
            raise VerificationFailure(f"numerator {p.coeffs}")
        rep = products.extrema(B)
        if abs(rep.max_deriv - 3.0) > 1e-9 or abs(rep.min_deriv - 1.0) > 1e-9:
            raise VerificationFailure(f"extrema ({rep.max_deriv}, {rep.min_deriv})")
        extremal.extremal_set(B, spec)
        extremal.verify_uniqueness_structure(B, spec)
    results.append(_family("degree-2 boundary example", [("n=2 nu=1", example_degree2)]))

    def example_degree15():
        for nu, want_min in ((Fraction(5), 2.5), (Fraction(-1, 4), 14.75)):
            B, spec = extremal.extremal_product(15, nu)
            rep = products.extrema(B, samples=8192)
            if abs(rep.max_deriv - 20.0) > 1e-6 or abs(rep.min_deriv - want_min) > 1e-6:
                raise VerificationFailure(
                    f"nu={nu}: got ({rep.max_deriv}, {rep.min_deriv})"
                )
    results.append(_family("degree-15 contrast pair", [("n=15", example_degree15)]))

    def predicted_grid():
        for n in range(1, max_n + 1):
            for nu in NU_GRID:
                B, spec = extremal.extremal_product(n, nu)
                rep = products.extrema(B)
                if (abs(rep.max_deriv - float(spec.predicted_max)) > 1e-8
                        or abs(rep.min_deriv - float(spec.predicted_min)) > 1e-8):
                    raise VerificationFailure(f"n={n} nu={nu}")
    results.append(_family("predicted extrema grid", [("sweep", predicted_grid)]))

    def not_extremal_contrast():
        B, (big, small) = extremal.symmetric_product(2, 0.5)
        rep = products.extrema(B)
        if abs(rep.max_deriv - big) > 1e-8 or abs(rep.min_deriv - small) > 1e-8:
            raise VerificationFailure("closed form disagreed with the scan")
        verdict = extremal.classify_extremal(B)
        if verdict.extremal:
            raise VerificationFailure("symmetric product misclassified as extremal")
    results.append(_family("symmetric contrast case", [("n=2 a=1/2", not_extremal_contrast)]))

    def boundary_classification():
        B, _ = extremal.extremal_product(2, 1)
        cls = products.classify_circle_maps(B)
        resolved = cls.resolve()
        if not (resolved["lower_homeo"] and resolved["upper_homeo"]):
            raise VerificationFailure("boundary case lost the homeomorphisms")
        if resolved["lower_diffeo"] or resolved["upper_diffeo"]:
            raise VerificationFailure("boundary case gained a diffeomorphism")
    results.append(_family("circle-map boundary case", [("n=2 nu=1", boundary_classification)]))
    return results


def suite_prescribe(seed: int = 0) -> list:
    results = []

    def feasibility_cases():
        good = prescribe.feasibility(2, 1.0, 3.0)
        if not good.feasible or abs(good.left_slack) > 1e-15:
            raise VerificationFailure("boundary triple misjudged")
        bad = prescribe.feasibility(3, 2.9, 4.0)
        if bad.feasible or "2.75" not in (bad.violation() or ""):
            raise VerificationFailure("infeasible triple misjudged")
        strict = prescribe.feasibility(3, 1.6, 4.0)
        if not strict.feasible or strict.left_slack <= 0 or strict.right_slack <= 0:
            raise VerificationFailure("interior triple misjudged")
    results.append(_family("feasibility slacks", [("cases", feasibility_cases)]))

    def boundary_routes():
        B = prescribe.construct(2, 1.0, 3.0)
        want, _ = extremal.extremal_product(2, 1)
        gaps = [min(abs(a - b) for b in want.zeros) for a in B.zeros]
        if max(gaps) > 1e-10:
            raise VerificationFailure("left-equality route missed the witness")
        B15 = prescribe.construct(15, 2.5, 20.0)
        want15, _ = extremal.extremal_product(15, 5)
        gaps = [min(abs(a - b) for b in want15.zeros) for a in B15.zeros]
        if max(gaps) > 1e-9:
            raise VerificationFailure("first-kind witness mismatch at n=15")
    results.append(_family("equality-case dispatch", [("cases", boundary_routes)]))

    def interior_triple():
        B = prescribe.construct(3, 1.6, 4.0)
        rep = products.extrema(B)
        if abs(rep.max_deriv - 4.0) > 1e-4 or abs(rep.min_deriv - 1.6) > 1e-4:
            raise VerificationFailure(
                f"achieved ({rep.max_deriv}, {rep.min_deriv})"
            )
        resolved = products.classify_circle_maps(B).resolve()
        if not resolved["upper_homeo"] or resolved["lower_homeo"]:
            raise VerificationFailure("classification contradicts the interior witness")
    results.append(_family("interior triple (3, 1.6, 4)", [("homotopy", interior_triple)]))

    def random_round_trips():
        rng = np.random.default_rng(seed)
        for k in range(6):
            n = int(rng.integers(2, 5))
            M = n + float(rng.uniform(0.2, 1.5))
            lo = n / (M - n + 1.0)
            hi = n - 1.0 + n / M
            if k < 4:
                m = lo if k % 2 == 0 else hi
            else:
                m = float(rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo)))
            B = prescribe.construct(n, m, M)
            rep = products.extrema(B)
            if abs(rep.max_deriv - M) > 1e-4 or abs(rep.min_deriv - m) > 1e-4:
                raise VerificationFailure(f"triple ({n}, {m}, {M}) missed")
    results.append(_family("round trips", [("random sweep", random_round_trips)]))
    return results


def run_suite(name: str, seed: int = 0) -> list:
    if name not in SUITES:
        raise ParameterError(f"unknown suite {name!r}; choose from {SUITES}")
    out = []
    if name in ("identities", "all"):
        out += suite_identities(seed)
    if name in ("inequalities", "all"):
        out += suite_inequalities(seed)
    if name in ("extremal", "all"):
        out += suite_extremal(seed)
    if name in ("prescribe", "all"):
        out += suite_prescribe(seed)
    return out
