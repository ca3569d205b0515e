"""Finite Blaschke products on the unit circle.

A product is a rational map  alpha * prod (z - a_k)/(1 - conj(a_k) z)  with
all zeros a_k strictly inside the unit disk and |alpha| = 1.  Restricted to
the circle it is a degree-n covering map; the modulus of its derivative at
a boundary point is the sum of Poisson kernels of the zeros, which is what
every scan here evaluates.  Products are immutable and every operation is a
pure function, so values can move freely between threads.

Degree-0 products (unimodular constants) can be constructed and evaluated
but are rejected by every other operation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import Tolerances, default_tolerances
from .errors import NumericFailure, ParameterError, VerificationFailure
from .polynomial import ComplexPoly, conj_reciprocal, roots

_TWO_PI = 2.0 * math.pi


def _wrap_angle(t: float) -> float:
    """Reduce to the fundamental interval [-pi, pi)."""
    return (t + math.pi) % _TWO_PI - math.pi


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product given by its zeros and unimodular factor."""

    zeros: tuple
    alpha: complex = 1.0 + 0j

    def __post_init__(self):
        tol = default_tolerances()
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "alpha", complex(self.alpha))
        for a in zs:
            if abs(a) >= 1.0:
                raise ParameterError(f"zero {a} is not inside the open unit disk")
        if abs(abs(self.alpha) - 1.0) > tol.unimodular:
            raise ParameterError(f"constant factor {self.alpha} is not unimodular")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z) -> complex:
        w = self.alpha
        zc = complex(z)
        for a in self.zeros:
            w *= (zc - a) / (1.0 - a.conjugate() * zc)
        return w

    def times_z(self, k: int = 1) -> "BlaschkeProduct":
        """Raise the degree by k extra zeros at the origin (multiply by z^k)."""
        return BlaschkeProduct(self.zeros + (0j,) * k, self.alpha)


def from_zeros(zeros, alpha=1.0 + 0j) -> BlaschkeProduct:
    """Construct a product, rejecting zeros on or outside the circle."""
    return BlaschkeProduct(tuple(zeros), alpha)


@dataclass(frozen=True)
class ExtremaReport:
    """Certified extrema of |B'| on the circle.

    argmax and argmin are angles in [-pi, pi); ties resolve to the smallest
    angle.  ``mean`` is the uniform quadrature mean, which must equal the
    degree.
    """

    max_deriv: float
    min_deriv: float
    argmax: float
    argmin: float
    mean: float
    samples: int


@dataclass(frozen=True)
class PreimageSet:
    """Boundary solutions of B(z) = lambda or z B(z) = lambda.

    ``weights`` carries the residues 1/|B'(z_j)| when they were requested;
    the weights of a product vanishing at the origin sum to 1.
    """

    lam: complex
    points: tuple
    weights: tuple | None = None


def _require_degree(B: BlaschkeProduct, minimum: int, what: str):
    if B.degree < minimum:
        raise ParameterError(f"{what} needs a product of degree >= {minimum}")


def boundary_values(B: BlaschkeProduct, t) -> np.ndarray:
    """Values B(e^{it}) for an array of angles."""
    z = np.exp(1j * np.asarray(t, dtype=float))
    out = np.full(z.shape, B.alpha, dtype=complex)
    for a in B.zeros:
        out *= (z - a) / (1.0 - a.conjugate() * z)
    return out


def to_rational(B: BlaschkeProduct):
    """Write B = p/q with q the conjugate-reciprocal polynomial of p.

    p carries half the phase of alpha so that the quotient reproduces the
    product exactly; its roots are the zeros of B.
    """
    _require_degree(B, 1, "to_rational")
    u = np.array([1.0 + 0j])
    for a in B.zeros:
        u = np.convolve(u, np.array([-a, 1.0 + 0j]))
    half = cmath.sqrt(B.alpha)
    half /= abs(half)
    p = ComplexPoly(half * u)
    return p, conj_reciprocal(p, B.degree)


def poisson_kernel(a, z, tol: Tolerances | None = None) -> float:
    """Kernel (1 - |a|^2) / |z - a|^2 for a in the disk and z on the circle."""
    tol = tol or default_tolerances()
    a = complex(a)
    z = complex(z)
    if abs(a) >= 1.0:
        raise ParameterError(f"pole parameter {a} must lie inside the disk")
    if abs(abs(z) - 1.0) > tol.circle_membership:
        raise ParameterError(f"evaluation point {z} must lie on the unit circle")
    return (1.0 - abs(a) ** 2) / abs(z - a) ** 2


def deriv_modulus(B: BlaschkeProduct, z, tol: Tolerances | None = None) -> float:
    """|B'(z)| on the circle as the sum of Poisson kernels of the zeros."""
    tol = tol or default_tolerances()
    _require_degree(B, 1, "deriv_modulus")
    z = complex(z)
    if abs(abs(z) - 1.0) > tol.circle_membership:
        raise ParameterError(f"evaluation point {z} must lie on the unit circle")
    return float(sum((1.0 - abs(a) ** 2) / abs(z - a) ** 2 for a in B.zeros))


def deriv_modulus_direct(B: BlaschkeProduct, z) -> float:
    """|B'(z)| by differentiating the rational form p/q; cross-check route."""
    p, q = to_rational(B)
    zc = complex(z)
    qv = q(zc)
    return abs((p.derivative()(zc) * qv - q.derivative()(zc) * p(zc)) / (qv * qv))


def deriv_profile(B: BlaschkeProduct, t) -> np.ndarray:
    """|B'(e^{it})| for an array of angles, vectorized."""
    t = np.asarray(t, dtype=float)
    z = np.exp(1j * t)
    out = np.zeros(t.shape)
    for a in B.zeros:
        out += (1.0 - abs(a) ** 2) / np.abs(z - a) ** 2
    return out


def _profile_scalar(B: BlaschkeProduct, t: float) -> float:
    total = 0.0
    for a in B.zeros:
        r = abs(a)
        phi = cmath.phase(a) if r > 0 else 0.0
        total += (1.0 - r * r) / (1.0 + r * r - 2.0 * r * math.cos(t - phi))
    return total


def _profile_deriv(B: BlaschkeProduct, t: float) -> float:
    total = 0.0
    for a in B.zeros:
        r = abs(a)
        if r == 0.0:
            continue
        phi = cmath.phase(a)
        denom = 1.0 + r * r - 2.0 * r * math.cos(t - phi)
        total += -2.0 * r * (1.0 - r * r) * math.sin(t - phi) / (denom * denom)
    return total


def _auto_samples(B: BlaschkeProduct) -> int:
    floor = max(4096, 64 * B.degree)
    spread = max((abs(a) for a in B.zeros), default=0.0)
    if spread >= 0.9:
        # the Poisson spike of a zero at radius r has width ~ (1 - r)
        floor = max(floor, int(32.0 / (1.0 - spread)) + 1)
    return min(floor, 1 << 20)


def _refine_extremum(B, t_center, step, tol_t, maximize):
    a, b = t_center - step, t_center + step
    ga, gb = _profile_deriv(B, a), _profile_deriv(B, b)
    want_a, want_b = (1.0, -1.0) if maximize else (-1.0, 1.0)
    if ga == 0.0:
        return a, _profile_scalar(B, a)
    if gb == 0.0:
        return b, _profile_scalar(B, b)
    if not (ga * want_a > 0.0 and gb * want_b > 0.0):
        # no clean derivative bracket; keep the sampled candidate
        return t_center, _profile_scalar(B, t_center)
    for _ in range(200):
        if b - a <= tol_t:
            break
        mid = 0.5 * (a + b)
        gm = _profile_deriv(B, mid)
        if gm == 0.0:
            a = b = mid
            break
        if gm * want_a > 0.0:
            a = mid
        else:
            b = mid
    t_star = 0.5 * (a + b)
    return t_star, _profile_scalar(B, t_star)


def extrema(B: BlaschkeProduct, samples: int | None = None,
            tol: Tolerances | None = None) -> ExtremaReport:
    """Certified maximum and minimum of |B'| on the circle.

    A dense uniform scan brackets every critical point (64 samples per
    degree, minimum 4096), then derivative-sign bisection tightens each
    candidate to ``tol.extrema_t`` in the angle.  The scan mean doubles as a
    health check: it must reproduce the degree, and it drifts only when
    zeros sit too close to the circle for the grid to resolve.
    """
    tol = tol or default_tolerances()
    _require_degree(B, 1, "extrema")
    n = B.degree
    floor = max(4096, 64 * n)
    if samples is None:
        samples = _auto_samples(B)
    elif samples < floor:
        raise ParameterError(f"need at least {floor} samples for degree {n}")
    t = np.linspace(-math.pi, math.pi, samples, endpoint=False)
    vals = deriv_profile(B, t)
    mean = float(vals.mean())
    if abs(mean - n) > tol.mean_value:
        raise NumericFailure(
            "circle mean of |B'| drifted from the degree; "
            "zeros are too close to the unit circle for this scan",
            residual=abs(mean - n),
        )
    vmax = float(vals.max())
    vmin = float(vals.min())
    if vmax - vmin <= 1e-13 * max(1.0, vmax):
        t0 = float(t[0])
        return ExtremaReport(vmax, vmin, t0, t0, mean, samples)

    step = _TWO_PI / samples
    cap = 8 * n + 16
    up = vals >= np.roll(vals, 1)
    down = vals >= np.roll(vals, -1)
    max_idx = np.nonzero(up & down)[0]
    min_idx = np.nonzero((vals <= np.roll(vals, 1)) & (vals <= np.roll(vals, -1)))[0]
    if max_idx.size > cap:
        max_idx = max_idx[np.argsort(vals[max_idx])[-cap:]]
    if min_idx.size > cap:
        min_idx = min_idx[np.argsort(vals[min_idx])[:cap]]

    max_cands = [_refine_extremum(B, float(t[i]), step, tol.extrema_t, True)
                 for i in max_idx]
    min_cands = [_refine_extremum(B, float(t[i]), step, tol.extrema_t, False)
                 for i in min_idx]

    best_max = max(v for _, v in max_cands)
    best_min = min(v for _, v in min_cands)
    band_max = 1e-11 * max(1.0, abs(best_max))
    band_min = 1e-11 * max(1.0, abs(best_min))
    argmax = min(_wrap_angle(tt) for tt, v in max_cands if v >= best_max - band_max)
    argmin = min(_wrap_angle(tt) for tt, v in min_cands if v <= best_min + band_min)
    return ExtremaReport(best_max, best_min, argmax, argmin, mean, samples)


def preimages(B: BlaschkeProduct, lam, lifted: bool = False,
              tol: Tolerances | None = None) -> PreimageSet:
    """Boundary solutions of B(z) = lambda, or of z B(z) = lambda when lifted.

    The solutions are the roots of p - lambda*q (resp. z*p - lambda*q); all
    of them lie on the unit circle and are returned sorted by angle.
    """
    tol = tol or default_tolerances()
    _require_degree(B, 1, "preimages")
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > tol.preimage_residual:
        raise ParameterError(f"target value {lam} must be unimodular")
    lam /= abs(lam)
    p, q = to_rational(B)
    target_poly = (p.times_z() if lifted else p) - lam * q
    rs = roots(target_poly)
    pts = tuple(sorted(rs.roots, key=lambda w: math.atan2(w.imag, w.real)))
    for w in pts:
        if abs(abs(w) - 1.0) > tol.circle_membership:
            raise NumericFailure(f"preimage {w} strayed from the unit circle",
                                 residual=abs(abs(w) - 1.0))
        value = (w * B(w) if lifted else B(w)) - lam
        if abs(value) > tol.preimage_residual:
            raise NumericFailure(f"preimage {w} misses the target by {abs(value):.3e}",
                                 residual=abs(value))
    for i, w in enumerate(pts):
        for v in pts[i + 1:]:
            if abs(w - v) <= tol.point_separation:
                raise NumericFailure(f"preimages {w} and {v} collided")
    return PreimageSet(lam, pts, None)


_SPOT_CHECK_SEED = 716253


def residue_weights(B: BlaschkeProduct, lam,
                    tol: Tolerances | None = None) -> PreimageSet:
    """Residues m_j = 1/|B'(z_j)| at the solutions of B(z) = lambda.

    Requires a product of degree >= 2 vanishing at the origin; then the
    weights sum to 1 and give the partial fraction expansion of
    B(z) / (z (B(z) - lambda)), which is spot-checked at 16 interior points.
    """
    tol = tol or default_tolerances()
    _require_degree(B, 2, "residue_weights")
    if min(abs(a) for a in B.zeros) > 1e-14:
        raise ParameterError("residue weights need a product with B(0) = 0")
    pre = preimages(B, lam, lifted=False, tol=tol)
    weights = tuple(1.0 / deriv_modulus(B, w, tol) for w in pre.points)
    total = sum(weights)
    if abs(total - 1.0) > tol.preimage_residual:
        raise VerificationFailure(
            f"residues sum to {total!r} instead of 1", report=pre
        )
    rng = np.random.default_rng(_SPOT_CHECK_SEED)
    for _ in range(16):
        z = rng.uniform(0.25, 0.6) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        lhs = B(z) / (z * (B(z) - pre.lam))
        rhs = sum(m / (z - w) for m, w in zip(weights, pre.points))
        if abs(lhs - rhs) > tol.partial_fraction:
            raise VerificationFailure(
                f"partial fraction expansion off by {abs(lhs - rhs):.3e} at z={z}"
            )
    return PreimageSet(pre.lam, pre.points, weights)


@dataclass(frozen=True)
class MainInequalityReport:
    """Slack of the derivative-range inequalities for one product."""

    degree: int
    max_deriv: float
    min_deriv: float
    left_slack: float    # m - n/(M - n + 1)
    right_slack: float   # (n - 1 + n/M) - m
    chain_slacks: tuple  # (m, n - m, M - n), each >= 0

    @property
    def worst_slack(self) -> float:
        return min(self.left_slack, self.right_slack, *self.chain_slacks)

    @property
    def ok(self) -> bool:
        # equality cases round to slacks a few ulps below zero
        return self.worst_slack >= -1e-9


def check_main_inequality(B: BlaschkeProduct, samples: int | None = None,
                          tol: Tolerances | None = None) -> MainInequalityReport:
    """Verify n/(M-n+1) <= m <= n-1+n/M and 0 < m <= n <= M for B."""
    tol = tol or default_tolerances()
    rep = extrema(B, samples, tol)
    n = B.degree
    big, small = rep.max_deriv, rep.min_deriv
    report = MainInequalityReport(
        n, big, small,
        small - n / (big - n + 1.0),
        (n - 1.0 + n / big) - small,
        (small, n - small, big - n),
    )
    if report.worst_slack < -tol.identity:
        raise VerificationFailure(
            f"derivative-range inequality violated with slack "
            f"{report.worst_slack:.3e}", report
        )
    return report


def scale_zeros(B: BlaschkeProduct, lam: float) -> BlaschkeProduct:
    """Product with every zero scaled by lam, same unimodular factor."""
    _require_degree(B, 1, "scale_zeros")
    if lam <= 0.0:
        raise ParameterError("scale factor must be positive")
    biggest = max(abs(a) for a in B.zeros)
    if lam * biggest >= 1.0:
        raise ParameterError("scaling would push a zero onto the unit circle")
    return BlaschkeProduct(tuple(lam * a for a in B.zeros), B.alpha)


@dataclass(frozen=True)
class SemigroupReport:
    """Agreement of kernel averaging with direct zero scaling."""

    delta: float
    max_deviation: float
    test_points: int
    quadrature_points: int


def check_semigroup_average(B: BlaschkeProduct, delta: float,
                            quad_points: int | None = None, test_points: int = 32,
                            tol: Tolerances | None = None) -> SemigroupReport:
    """Averaging |B'| against the Poisson kernel of delta must reproduce the
    derivative profile of the product with zeros scaled by delta."""
    tol = tol or default_tolerances()
    _require_degree(B, 1, "check_semigroup_average")
    if not any(a != 0 for a in B.zeros):
        raise ParameterError("averaging check needs at least one nonzero zero")
    if not 0.0 < delta < 1.0:
        raise ParameterError("delta must lie in (0, 1)")
    if quad_points is None:
        # the kernel spike narrows like 1 - delta; keep the aliasing tail
        # of the trapezoid rule below the agreement tolerance
        quad_points = min(max(4096, int(24.0 / (1.0 - delta))), 1 << 21)
    scaled = scale_zeros(B, delta)
    s = np.linspace(-math.pi, math.pi, quad_points, endpoint=False)
    zeta = np.exp(1j * s)
    profile = deriv_profile(B, s)
    # uniform trapezoid on the circle: spectrally accurate for these kernels
    offsets = -math.pi + _TWO_PI * (np.arange(test_points) + 0.37) / test_points
    worst = 0.0
    for theta in offsets:
        z = cmath.exp(1j * theta)
        kernel = (1.0 - delta * delta) / np.abs(np.conj(zeta) * z - delta) ** 2
        rhs = float((profile * kernel).mean())
        lhs = deriv_modulus(scaled, z, tol)
        worst = max(worst, abs(lhs - rhs))
    if worst > tol.quadrature:
        raise NumericFailure(
            f"kernel averaging deviates by {worst:.3e}", residual=worst
        )
    return SemigroupReport(delta, worst, test_points, quad_points)


@dataclass(frozen=True)
class CircleMapClassification:
    """Three-valued answers for the two circle-map quotients.

    ``lower_*`` concerns B(z)/z^(n-1) (a homeomorphism iff m >= n-1, a
    diffeomorphism iff m > n-1); ``upper_*`` concerns z^(n+1)/B(z)
    (homeomorphism iff M <= n+1, diffeomorphism iff M < n+1).  Values are
    "yes", "no" or "boundary"; resolve() collapses a boundary to the
    non-strict answer (true for the homeomorphism tests, false for the
    diffeomorphism tests).
    """

    degree: int
    max_deriv: float
    min_deriv: float
    lower_homeo: str
    lower_diffeo: str
    upper_homeo: str
    upper_diffeo: str

    def resolve(self) -> dict:
        return {
            "lower_homeo": self.lower_homeo != "no",
            "lower_diffeo": self.lower_diffeo == "yes",
            "upper_homeo": self.upper_homeo != "no",
            "upper_diffeo": self.upper_diffeo == "yes",
        }


def _band(value: float, threshold: float, width: float) -> int:
    if value > threshold + width:
        return 1
    if value < threshold - width:
        return -1
    return 0


def classify_circle_maps(B: BlaschkeProduct, samples: int | None = None,
                         tol: Tolerances | None = None) -> CircleMapClassification:
    """Classify B/z^(n-1) and z^(n+1)/B as circle homeo/diffeomorphisms."""
    tol = tol or default_tolerances()
    rep = extrema(B, samples, tol)
    n = B.degree
    lo = _band(rep.min_deriv, n - 1.0, tol.classify_band)
    hi = _band(rep.max_deriv, n + 1.0, tol.classify_band)
    pick = {1: "yes", 0: "boundary", -1: "no"}
    return CircleMapClassification(
        n, rep.max_deriv, rep.min_deriv,
        lower_homeo=pick[lo],
        lower_diffeo=pick[lo],
        upper_homeo=pick[-hi],
        upper_diffeo=pick[-hi],
    )
