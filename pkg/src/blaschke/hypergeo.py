"""Terminating Gauss hypergeometric polynomials and their exact identities.

Everything here works in rational arithmetic: a terminating series
F(-n, b; c; z) is a degree-n polynomial whose coefficients follow the ratio
recursion  coeff(k+1)/coeff(k) = (k-n)(k+b) / ((k+1)(k+c)), starting from 1.
The check_* functions confirm the contiguous, derivative, Wronskian,
reciprocal and Gegenbauer relations that the rest of the package relies on;
the polynomial checks must come out exactly zero, the grid-sampled ones
within a stated tolerance.

Rising factorials use the empty-product convention poch(x, 0) = 1, which is
what makes the constant coefficient of every series equal 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import Tolerances, default_tolerances
from .errors import ParameterError, VerificationFailure
from .polynomial import RationalPoly, conj_reciprocal, roots, wronskian_combo


def as_fraction(value) -> Fraction:
    """Exact rational from int, Fraction, string or float.

    Strings follow decimal semantics ("0.2" is exactly 1/5, "p/q" is the
    stated quotient).  Floats convert from their binary value exactly; every
    float is a rational, so this loses nothing.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterError(f"cannot use {value!r} as a rational")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse {value!r} as a rational") from exc
    raise ParameterError(f"cannot interpret {value!r} as an exact rational")


def pochhammer(x, k: int) -> Fraction:
    """Rising factorial x(x+1)...(x+k-1), with the empty product equal 1."""
    if k < 0:
        raise ParameterError("pochhammer needs a nonnegative index")
    x = as_fraction(x)
    out = Fraction(1)
    for j in range(k):
        out *= x + j
    return out


def admissible_c(c, n: int) -> bool:
    """Whether (c)_k stays nonzero for k = 0..n, i.e. c avoids 0, -1, ..., 1-n."""
    c = as_fraction(c)
    return not (c.denominator == 1 and 1 - n <= c <= 0)


@dataclass(frozen=True)
class HypergeoParams:
    """Parameter triple (a, b, c) of a terminating series, a = -n."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a = as_fraction(self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", as_fraction(self.b))
        object.__setattr__(self, "c", as_fraction(self.c))
        if a.denominator != 1 or a > 0:
            raise ParameterError(f"first parameter {a} must be a nonpositive integer")
        if not admissible_c(self.c, self.terminates_at):
            raise ParameterError(
                f"lower parameter {self.c} hits a pole before the series terminates"
            )

    @property
    def terminates_at(self) -> int:
        return -int(self.a)


@dataclass(frozen=True)
class HypergeoPoly:
    """A terminating series together with its exact polynomial."""

    params: HypergeoParams
    poly: RationalPoly


def terminating_2f1(a, b, c) -> RationalPoly:
    """Exact polynomial of the terminating series with upper parameters a, b."""
    params = HypergeoParams(as_fraction(a), as_fraction(b), as_fraction(c))
    n = params.terminates_at
    coeffs = [Fraction(1)]
    for k in range(n):
        coeffs.append(
            coeffs[-1]
            * (params.a + k)
            * (params.b + k)
            / ((params.c + k) * (k + 1))
        )
    return RationalPoly(coeffs)


def hyper_poly(n: int, b, c) -> HypergeoPoly:
    """Degree-n terminating polynomial F(-n, b; c; .) with exact coefficients."""
    if n < 1:
        raise ParameterError("hyper_poly needs n >= 1")
    params = HypergeoParams(Fraction(-n), as_fraction(b), as_fraction(c))
    return HypergeoPoly(params, terminating_2f1(params.a, params.b, params.c))


def hyper_at_one(n: int, nu) -> Fraction:
    """Closed form (2*nu+2)_n / (nu)_n for the coefficient sum of the
    extremal numerator; negative exactly when -1 < nu < 0."""
    nu = as_fraction(nu)
    if nu <= -1 or nu == 0:
        raise ParameterError("nu must exceed -1 and be nonzero")
    return pochhammer(2 * nu + 2, n) / pochhammer(nu, n)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an exact polynomial identity check.

    ``deviations`` maps each relation name to the full deviation polynomial,
    so a failure shows exactly which coefficients refused to cancel.
    """

    name: str
    ok: bool
    deviations: dict

    @property
    def max_deviation(self) -> Fraction:
        worst = Fraction(0)
        for dev in self.deviations.values():
            for coeff in dev.coeffs:
                worst = max(worst, abs(coeff))
        return worst


def check_contiguous(a, b, c, sample_points=()) -> IdentityReport:
    """Verify the two three-term contiguous relations and the two derivative
    relations at (a, b, c), exactly, for a terminating series."""
    a = as_fraction(a)
    b = as_fraction(b)
    c = as_fraction(c)
    if a.denominator != 1 or a > -1:
        raise ParameterError("contiguous check needs a negative integer first parameter")
    n = -int(a)
    for cc, kmax, tag in (
        (c, n, "(a,b;c)"),
        (c - 1, n, "(a,b;c-1)"),
        (c + 1, n, "(a,b;c+1)"),
        (c, n + 1, "(a-1,b;c)"),
    ):
        if not admissible_c(cc, kmax):
            raise ParameterError(f"shifted triple {tag} is inadmissible at c={cc}")
    F = terminating_2f1
    z = RationalPoly([0, 1])
    one = RationalPoly([1])
    base = F(a, b, c)
    devs = {
        "three-term c-shift": (c - a - 1) * base + a * F(a + 1, b, c)
        - (c - 1) * F(a, b, c - 1),
        "three-term a-shift": c * ((one - z) * base) - c * F(a - 1, b, c)
        + (c - b) * F(a, b, c + 1).times_z(),
        "derivative b-shift": base.derivative().times_z() - b * (F(a, b + 1, c) - base),
        "derivative c-shift": base.derivative().times_z()
        - (c - 1) * (F(a, b, c - 1) - base),
    }
    ok = all(d.is_zero for d in devs.values())
    report = IdentityReport(f"contiguous a={a} b={b} c={c}", ok, devs)
    if not ok:
        bad = [k for k, d in devs.items() if not d.is_zero]
        raise VerificationFailure(f"contiguous relations failed: {bad}", report)
    for point in sample_points:
        pt = as_fraction(point)
        for name, dev in devs.items():
            if dev(pt) != 0:
                raise VerificationFailure(
                    f"contiguous relation {name} nonzero at z={pt}", report
                )
    return report


@dataclass(frozen=True)
class WronskianReport:
    """The f, g, h triple of the Wronskian identity and its deviation."""

    a: Fraction
    b: Fraction
    c: Fraction
    f: RationalPoly
    g: RationalPoly
    h: RationalPoly
    deviation: RationalPoly

    @property
    def ok(self) -> bool:
        return self.deviation.is_zero


def check_wronskian_identity(a, b) -> WronskianReport:
    """Verify z(fg' - f'g) = c(fg - h^2) exactly, where c = a - b + 1 and
    f, g, h are the contiguous triple built from (a, b)."""
    a = as_fraction(a)
    b = as_fraction(b)
    if a.denominator != 1 or a > -1:
        raise ParameterError("the identity check needs a negative integer first parameter")
    c = a - b + 1
    if c.denominator == 1 and a <= c <= 1:
        raise ParameterError(f"excluded parameter c={c} (integer between a and 1)")
    f = terminating_2f1(a, b + 1, c + 1)
    g = terminating_2f1(a, b - 1, c - 1)
    h = terminating_2f1(a, b, c)
    deviation = wronskian_combo(f, g) - c * (f * g - h * h)
    report = WronskianReport(a, b, c, f, g, h, deviation)
    if not report.ok:
        raise VerificationFailure(
            f"Wronskian identity failed at a={a}, b={b}", report
        )
    return report


def gegenbauer(n: int, lam, x):
    """Ultraspherical polynomial value by the three-term recurrence.

    Accepts a float or a numpy array for x; used purely as the independent
    oracle for check_gegenbauer_relation.
    """
    lamf = float(as_fraction(lam))
    if lamf == 0:
        raise ParameterError("the recurrence needs a nonzero weight parameter")
    if n < 0:
        raise ParameterError("negative degree")
    prev = x * 0 + 1.0
    if n == 0:
        return prev
    cur = 2.0 * lamf * x
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + lamf - 1.0) * x * cur - (k + 2.0 * lamf - 2.0) * prev) / k
    return cur


@dataclass(frozen=True)
class GridReport:
    """Worst-case deviation of a sampled identity over a grid."""

    name: str
    max_deviation: float
    worst_point: float
    points: int

    @property
    def ok(self) -> bool:
        return True  # construction raises before an offending report exists


def check_gegenbauer_relation(n: int, lam, theta_grid=None,
                              tol: Tolerances | None = None) -> GridReport:
    """Compare the ultraspherical recurrence against the circle form
    e^{i n theta} * (lam)_n / n! * h(e^{-2 i theta}) on a theta grid."""
    tol = tol or default_tolerances()
    lam = as_fraction(lam)
    if lam <= Fraction(-1, 2) or lam == 0:
        raise ParameterError("weight parameter must exceed -1/2 and be nonzero")
    if theta_grid is None:
        theta_grid = np.linspace(0.0, math.pi, 1000)
    theta = np.asarray(theta_grid, dtype=float)
    h = terminating_2f1(-n, lam, -n + 1 - lam)
    hc = np.asarray(h.to_complex().coeffs, dtype=complex)[::-1]
    const = float(pochhammer(lam, n) / math.factorial(n))
    lhs = gegenbauer(n, lam, np.cos(theta))
    rhs = np.exp(1j * n * theta) * const * np.polyval(hc, np.exp(-2j * theta))
    dev = np.abs(rhs - lhs)
    worst = int(np.argmax(dev))
    report = GridReport(
        f"gegenbauer n={n} lam={lam}", float(dev[worst]), float(theta[worst]), theta.size
    )
    if report.max_deviation > tol.identity_numeric:
        raise VerificationFailure(
            f"circle form of the ultraspherical polynomial deviates by "
            f"{report.max_deviation:.3e} at theta={report.worst_point:.6f}",
            report,
        )
    return report


@dataclass(frozen=True)
class RootLocationReport:
    """Roots of a hypergeometric polynomial with their location statistics."""

    name: str
    roots: tuple
    max_modulus_error: float
    min_separation: float


def check_roots_on_circle(n: int, lam, tol: Tolerances | None = None) -> RootLocationReport:
    """All n roots of F(-n, lam; -n+1-lam; .) must be simple and unimodular."""
    tol = tol or default_tolerances()
    lam = as_fraction(lam)
    if lam <= Fraction(-1, 2) or lam == 0:
        raise ParameterError("weight parameter must exceed -1/2 and be nonzero")
    h = terminating_2f1(-n, lam, -n + 1 - lam)
    rs = roots(h.to_complex())
    mod_err = max(abs(abs(r) - 1.0) for r in rs.roots)
    sep = min(
        (abs(r - s) for i, r in enumerate(rs.roots) for s in rs.roots[i + 1:]),
        default=math.inf,
    )
    report = RootLocationReport(f"circle roots n={n} lam={lam}", rs.roots, mod_err, sep)
    if mod_err > tol.circle_membership:
        offenders = [r for r in rs.roots if abs(abs(r) - 1.0) > tol.circle_membership]
        raise VerificationFailure(f"roots left the unit circle: {offenders}", report)
    if sep <= tol.point_separation:
        raise VerificationFailure(f"roots are not simple (separation {sep:.3e})", report)
    return report


def check_roots_in_disk(n: int, nu, tol: Tolerances | None = None) -> RootLocationReport:
    """All roots of F(-n, nu+2; -n+1-nu; .) must lie strictly inside the disk."""
    tol = tol or default_tolerances()
    nu = as_fraction(nu)
    if nu <= -1 or nu == 0:
        raise ParameterError("nu must exceed -1 and be nonzero")
    p = terminating_2f1(-n, nu + 2, -n + 1 - nu)
    rs = roots(p.to_complex())
    worst = max(abs(r) for r in rs.roots)
    sep = min(
        (abs(r - s) for i, r in enumerate(rs.roots) for s in rs.roots[i + 1:]),
        default=math.inf,
    )
    report = RootLocationReport(f"disk roots n={n} nu={nu}", rs.roots, worst, sep)
    if worst > 1.0 - tol.disk_margin:
        offenders = [r for r in rs.roots if abs(r) > 1.0 - tol.disk_margin]
        raise VerificationFailure(f"roots reached the unit circle: {offenders}", report)
    return report


def check_reciprocal_transform(n: int, b, c) -> IdentityReport:
    """Verify z^n F(-n, b; c; 1/z) = (-1)^n (b)_n/(c)_n F(-n, 1-c-n; 1-b-n; z)
    as an exact polynomial identity."""
    b = as_fraction(b)
    c = as_fraction(c)
    if not admissible_c(c, n):
        raise ParameterError(f"lower parameter {c} is inadmissible")
    if not admissible_c(1 - b - n, n):
        raise ParameterError(f"transformed lower parameter {1 - b - n} is inadmissible")
    if pochhammer(b, n) == 0:
        raise ParameterError("upper parameter truncates the degree; the constant vanishes")
    p = terminating_2f1(-n, b, c)
    lhs = conj_reciprocal(p, n)
    const = Fraction(-1 if n % 2 else 1) * pochhammer(b, n) / pochhammer(c, n)
    rhs = const * terminating_2f1(-n, 1 - c - n, 1 - b - n)
    deviation = lhs - rhs
    report = IdentityReport(
        f"reciprocal transform n={n} b={b} c={c}",
        deviation.is_zero,
        {"reciprocal": deviation},
    )
    if not report.ok:
        raise VerificationFailure("reciprocal transformation failed", report)
    return report
