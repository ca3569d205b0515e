"""Products whose boundary derivative attains an extreme admissible range.

A product of degree n is extremal when it attains equality in one side of
the derivative-range inequality: either m = n/(M-n+1) (first kind, widest
possible range) or m = n-1+n/M (second kind, flattest possible range).
Both kinds are quotients p/q of a terminating hypergeometric polynomial
p(z) = F(-n, nu+2; -n-nu+1; z) and its conjugate-reciprocal q, where the
offset nu is M-n for the first kind, m-n for the second, and nu = 0 gives
the plain monomial z^n.

``nu`` is handled as an exact rational throughout, so the structural checks
(differential equation, key identity, squared factorization of psi) run in
exact arithmetic; note that every float is itself a rational, so float
inputs convert losslessly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Tolerances, default_tolerances
from .errors import NumericFailure, ParameterError, VerificationFailure
from .hypergeo import as_fraction, hyper_poly, pochhammer, terminating_2f1
from .polynomial import RationalPoly, conj_reciprocal, roots, wronskian_combo
from .products import (
    BlaschkeProduct,
    PreimageSet,
    deriv_modulus,
    extrema,
    preimages,
)

FIRST = "first"
SECOND = "second"
MONOMIAL = "monomial"


@dataclass(frozen=True)
class ExtremalSpec:
    """Exact data of an extremal product: offset, kind, leading constant,
    and the predicted derivative extrema."""

    degree: int
    nu: Fraction
    kind: str
    kappa: Fraction
    predicted_max: Fraction
    predicted_min: Fraction

    def to_json_dict(self) -> dict:
        return {
            "n": self.degree,
            "nu": str(self.nu),
            "kind": self.kind,
            "kappa": str(self.kappa),
            "M": float(self.predicted_max),
            "m": float(self.predicted_min),
        }


def kind_of(nu) -> str:
    nu = as_fraction(nu)
    if nu == 0:
        return MONOMIAL
    return FIRST if nu > 0 else SECOND


def kappa_exact(n: int, nu) -> Fraction:
    """Leading constant nu(nu+1) / ((n+nu)(n+nu+1)) of the quotient form."""
    nu = as_fraction(nu)
    return nu * (nu + 1) / ((n + nu) * (n + nu + 1))


def kappa_from_pochhammer(n: int, nu) -> Fraction:
    """Same constant as (-1)^n (-n-nu+1)_n / (nu+2)_n; cross-check route."""
    nu = as_fraction(nu)
    sign = Fraction(-1 if n % 2 else 1)
    return sign * pochhammer(-n - nu + 1, n) / pochhammer(nu + 2, n)


def predicted_extrema(n: int, nu):
    """Exact (max, min) of |B'| for the extremal product of offset nu."""
    nu = as_fraction(nu)
    if nu <= -1:
        raise ParameterError("nu must exceed -1")
    if nu == 0:
        return Fraction(n), Fraction(n)
    wide = Fraction(n) + nu
    flat = Fraction(n) / (nu + 1)
    return (wide, flat) if nu > 0 else (flat, wide)


def extremal_numerator(n: int, nu) -> RationalPoly:
    """Exact numerator polynomial: F(-n, nu+2; -n-nu+1; .), or z^n at nu=0."""
    nu = as_fraction(nu)
    if nu == 0:
        return RationalPoly([0] * n + [1])
    return hyper_poly(n, nu + 2, 1 - n - nu).poly


def extremal_product(n: int, nu, tol: Tolerances | None = None):
    """Build the extremal product of degree n and offset nu, normalized so
    that B(1) = 1; returns the product together with its exact spec."""
    tol = tol or default_tolerances()
    if n < 1:
        raise ParameterError("degree must be at least 1")
    nu = as_fraction(nu)
    if nu <= -1:
        raise ParameterError("nu must exceed -1")
    if nu == 0:
        product = BlaschkeProduct((0j,) * n, 1.0 + 0j)
    else:
        numerator = extremal_numerator(n, nu).to_complex()
        located = roots(numerator)
        worst = max(abs(r) for r in located.roots)
        if worst >= 1.0 - tol.disk_margin:
            raise NumericFailure(
                f"a numerator zero reached modulus {worst!r}", residual=worst
            )
        base = BlaschkeProduct(tuple(located.roots), 1.0 + 0j)
        alpha = 1.0 / base(1.0)
        alpha /= abs(alpha)
        product = BlaschkeProduct(base.zeros, alpha)
    spec = ExtremalSpec(
        n, nu, kind_of(nu), kappa_exact(n, nu), *predicted_extrema(n, nu)
    )
    return product, spec


def extremal_set(B: BlaschkeProduct, spec: ExtremalSpec,
                 tol: Tolerances | None = None) -> PreimageSet:
    """The boundary set where z B(z) = 1, computed two independent ways.

    Route one solves the lifted preimage equation; route two takes the roots
    of h = F(-n, nu+1; -n-nu; .) plus the point 1.  Both must agree, and the
    derivative modulus must equal n+nu away from 1 and n/(nu+1) at 1.
    """
    tol = tol or default_tolerances()
    n, nu = spec.degree, spec.nu
    lifted = preimages(B, 1.0, lifted=True, tol=tol)
    h = terminating_2f1(-n, nu + 1, -n - nu)
    expected = list(roots(h.to_complex()).roots) + [1.0 + 0j]
    for w in expected:
        gap = min(abs(w - v) for v in lifted.points)
        if gap > tol.circle_membership:
            raise VerificationFailure(
                f"extremal-set routes disagree at {w} (gap {gap:.3e})", lifted
            )
    away = float(n + nu)
    at_one = float(Fraction(n) / (nu + 1))
    for w in lifted.points:
        value = deriv_modulus(B, w, tol)
        target = at_one if abs(w - 1.0) < tol.point_separation else away
        if abs(value - target) > tol.circle_membership:
            raise VerificationFailure(
                f"|B'| at {w} is {value!r}, expected {target!r}", lifted
            )
    return lifted


@dataclass(frozen=True)
class ExtremalClassification:
    """Result of testing a product for extremality from its scanned extrema.

    ``verdict`` is "yes" when an equality holds within tol, "boundary" when
    it holds within 10*tol, "no" otherwise; ``nu`` is the recovered offset.
    """

    extremal: bool
    verdict: str
    kind: str | None
    nu: float | None
    deviation_first: float
    deviation_second: float
    max_deriv: float
    min_deriv: float


def classify_extremal(B: BlaschkeProduct, tol: float = 1e-9,
                      samples: int | None = None) -> ExtremalClassification:
    """Decide from a certified scan whether B attains either equality."""
    rep = extrema(B, samples)
    n = B.degree
    big, small = rep.max_deriv, rep.min_deriv
    dev_first = abs(small - n / (big - n + 1.0))
    dev_second = abs(small - (n - 1.0 + n / big))
    if abs(big - n) <= tol and abs(small - n) <= tol:
        return ExtremalClassification(
            True, "yes", MONOMIAL, 0.0, dev_first, dev_second, big, small
        )
    best = min(dev_first, dev_second)
    if dev_first <= dev_second:
        kind, nu = FIRST, big - n
    else:
        kind, nu = SECOND, small - n
    if best <= tol:
        return ExtremalClassification(True, "yes", kind, nu,
                                      dev_first, dev_second, big, small)
    if best <= 10.0 * tol:
        return ExtremalClassification(False, "boundary", kind, nu,
                                      dev_first, dev_second, big, small)
    return ExtremalClassification(False, "no", None, None,
                                  dev_first, dev_second, big, small)


@dataclass(frozen=True)
class UniquenessReport:
    """Structural facts behind uniqueness, checked on the exact numerator.

    The numerator must satisfy the hypergeometric differential equation and
    the key first-order identity exactly; the degree-2n polynomial
    psi = (n+nu) p q - z (p' q - q' p) must numerically be a constant times
    the square of the monic polynomial vanishing on the extremal set, which
    is certified by psi and psi' both vanishing at the n unimodular points
    of that set (n double roots of a degree-2n polynomial force the square).
    """

    ode_exact: bool
    key_identity_exact: bool
    psi_checked: bool
    psi_residual: float
    max_circle_deviation: float
    leading_constant: complex


def ode_residual(n: int, nu) -> RationalPoly:
    """Exact residual of the numerator in its hypergeometric differential
    equation z(1-z)p'' - (n+nu-1)p' - (nu-n+3)zp' + n(nu+2)p; must be zero."""
    nu = as_fraction(nu)
    p = extremal_numerator(n, nu)
    z = RationalPoly([0, 1])
    dp = p.derivative()
    return (
        (z - z * z) * dp.derivative()
        - (n + nu - 1) * dp
        - (nu - n + 3) * dp.times_z()
        + n * (nu + 2) * p
    )


def key_identity_residual(n: int, nu) -> RationalPoly:
    """Exact residual of nu(zp - q) = (z-1)[(n+nu)p - zp' + q']; must be zero."""
    nu = as_fraction(nu)
    p = extremal_numerator(n, nu)
    q = conj_reciprocal(p, n)
    z = RationalPoly([0, 1])
    one = RationalPoly([1])
    dp = p.derivative()
    return nu * (p.times_z() - q) - (z - one) * (
        (n + nu) * p - dp.times_z() + q.derivative()
    )


def psi_polynomial(n: int, nu) -> RationalPoly:
    """The degree-2n combination (n+nu)pq - z(p'q - q'p) whose roots are the
    extremal set away from 1, each doubled."""
    nu = as_fraction(nu)
    p = extremal_numerator(n, nu)
    q = conj_reciprocal(p, n)
    return (n + nu) * (p * q) - wronskian_combo(q, p)


def verify_uniqueness_structure(B: BlaschkeProduct, spec: ExtremalSpec,
                                tol: Tolerances | None = None) -> UniquenessReport:
    """Run the exact differential and algebraic checks for an extremal spec."""
    tol = tol or default_tolerances()
    n, nu = spec.degree, spec.nu
    ode_ok = ode_residual(n, nu).is_zero
    key_ok = key_identity_residual(n, nu).is_zero
    if not ode_ok:
        raise VerificationFailure("numerator fails its differential equation")
    if not key_ok:
        raise VerificationFailure("numerator fails the first-order key identity")

    psi = psi_polynomial(n, nu)
    if nu == 0:
        # psi degenerates to the zero polynomial for the monomial
        return UniquenessReport(ode_ok, key_ok, False, 0.0, 0.0, 0j)
    psi_c = psi.to_complex()
    dpsi_c = psi_c.derivative()
    scale = max(abs(c) for c in psi_c.coeffs)
    # the double roots of psi sit at the simple roots of h; those are well
    # conditioned where direct extraction of a double root loses half the
    # working precision
    h = terminating_2f1(-n, nu + 1, -n - nu)
    anchors = roots(h.to_complex()).roots
    circle_dev = max(abs(abs(w) - 1.0) for w in anchors)
    residual = max(
        max(abs(psi_c(w)), abs(dpsi_c(w))) / scale for w in anchors
    )
    if residual > tol.double_root or circle_dev > tol.double_root:
        raise VerificationFailure(
            f"psi does not vanish doubly on the extremal set "
            f"(residual {residual:.3e}, circle deviation {circle_dev:.3e})"
        )
    return UniquenessReport(
        ode_ok, key_ok, True, residual, circle_dev, psi_c.coeffs[-1]
    )


def symmetric_product(n: int, a: float):
    """Product with zeros at the n-th roots of -a^n, plus its closed-form
    extrema (M, m) = (n (1+a^n)/(1-a^n), n (1-a^n)/(1+a^n)).

    Satisfies m M = n^2, so it is never extremal; useful as a contrast case.
    """
    if not 0.0 < a < 1.0:
        raise ParameterError("radius must lie in (0, 1)")
    if n < 1:
        raise ParameterError("degree must be at least 1")
    zeros = tuple(
        a * complex(math.cos(math.pi * (2 * k + 1) / n),
                    math.sin(math.pi * (2 * k + 1) / n))
        for k in range(n)
    )
    product = BlaschkeProduct(zeros, 1.0 + 0j)
    an = a ** n
    return product, (n * (1.0 + an) / (1.0 - an), n * (1.0 - an) / (1.0 + an))
