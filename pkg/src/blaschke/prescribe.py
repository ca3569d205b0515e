"""Construct a product with prescribed degree and derivative extrema.

Any triple (n, m, M) satisfying n/(M-n+1) <= m <= n-1+n/M and
0 < m <= n <= M is realizable.  The equality cases are the extremal
products; a strictly interior triple is reached by moving the zeros of the
first-kind witness continuously to the zeros of the second-kind witness
while rescaling them at every step so the maximum stays pinned at M.  The
minimum then sweeps from one equality bound to the other, and bisection in
the path parameter lands it on m.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import Tolerances, default_tolerances
from .errors import NumericFailure, ParameterError, VerificationFailure
from .products import BlaschkeProduct, extrema
from .extremal import extremal_product

_MAX_BISECT = 200


@dataclass(frozen=True)
class FeasibilityReport:
    """Bounds and slacks of the derivative-range inequalities for a triple."""

    degree: int
    min_target: float
    max_target: float
    lower_bound: float   # n/(M - n + 1)
    upper_bound: float   # n - 1 + n/M
    left_slack: float    # m - lower_bound
    right_slack: float   # upper_bound - m
    trivial_ok: bool     # 0 < m <= n <= M

    @property
    def feasible(self) -> bool:
        return self.trivial_ok and self.left_slack >= 0.0 and self.right_slack >= 0.0

    def violation(self) -> str | None:
        if not self.trivial_ok:
            return (
                f"need 0 < m <= n <= M, got m={self.min_target!r}, "
                f"n={self.degree}, M={self.max_target!r}"
            )
        if self.left_slack < 0.0:
            return (
                f"m={self.min_target!r} is below the left bound "
                f"n/(M-n+1)={self.lower_bound!r}"
            )
        if self.right_slack < 0.0:
            return (
                f"m={self.min_target!r} exceeds the right bound "
                f"n-1+n/M={self.upper_bound!r}"
            )
        return None


def feasibility(n: int, m: float, M: float) -> FeasibilityReport:
    """Slack report for the two inequality chains a realizable triple obeys."""
    if not isinstance(n, int) or n < 1:
        raise ParameterError("degree must be a positive integer")
    m = float(m)
    M = float(M)
    if not (math.isfinite(m) and math.isfinite(M)) or m <= 0.0 or M <= 0.0:
        raise ParameterError("targets must be finite and positive")
    lower = n / (M - n + 1.0) if M - n + 1.0 > 0.0 else math.inf
    upper = n - 1.0 + n / M
    return FeasibilityReport(
        n, m, M, lower, upper, m - lower, upper - m,
        trivial_ok=(0.0 < m <= n <= M),
    )


@dataclass(frozen=True)
class FeasibleTriple:
    """A validated (n, m, M) triple; construction rejects infeasible ones."""

    degree: int
    min_target: float
    max_target: float

    def __post_init__(self):
        report = feasibility(self.degree, self.min_target, self.max_target)
        bad = report.violation()
        if bad:
            raise ParameterError(f"infeasible triple: {bad}")


class ZeroPaths:
    """Continuous zero curves joining two zero sets of equal size.

    Endpoints are paired by sorted argument and each pair is interpolated in
    polar coordinates, linearly in log-modulus and in argument.  Both
    endpoint sets must avoid the origin, so the curves do too, and the
    moduli never exceed the larger endpoint modulus.
    """

    def __init__(self, start, end):
        start = tuple(complex(a) for a in start)
        end = tuple(complex(b) for b in end)
        if not start or len(start) != len(end):
            raise ParameterError("paths need two zero sets of the same positive size")
        if any(a == 0 for a in start + end):
            raise ParameterError("paths must avoid the origin")
        by_arg = lambda w: (cmath.phase(w), abs(w))
        a_sorted = sorted(start, key=by_arg)
        b_sorted = sorted(end, key=by_arg)
        self._log_r0 = [math.log(abs(a)) for a in a_sorted]
        self._log_r1 = [math.log(abs(b)) for b in b_sorted]
        self._theta0 = [cmath.phase(a) for a in a_sorted]
        self._dtheta = [
            (cmath.phase(b) - t0 + math.pi) % (2.0 * math.pi) - math.pi
            for b, t0 in zip(b_sorted, self._theta0)
        ]

    @property
    def degree(self) -> int:
        return len(self._theta0)

    def __call__(self, t: float) -> tuple:
        if not 0.0 <= t <= 1.0:
            raise ParameterError("path parameter must lie in [0, 1]")
        out = []
        for lr0, lr1, th0, dth in zip(self._log_r0, self._log_r1,
                                      self._theta0, self._dtheta):
            r = math.exp((1.0 - t) * lr0 + t * lr1)
            out.append(r * cmath.exp(1j * (th0 + t * dth)))
        return tuple(out)

    def capacity(self, t: float) -> float:
        """Largest admissible zero scale at time t, 1/max|gamma_k(t)|."""
        return 1.0 / max(abs(w) for w in self(t))


def _scaled_max(zeros, lam: float, samples, tol) -> float:
    B = BlaschkeProduct(tuple(lam * w for w in zeros), 1.0 + 0j)
    return extrema(B, samples, tol).max_deriv


def solve_lambda(t: float, paths: ZeroPaths, M_target: float,
                 samples: int | None = None, tol: Tolerances | None = None,
                 bracket: tuple | None = None) -> float:
    """The unique zero scale at which the path product attains maximum M.

    M grows strictly with the scale, from the degree at scale 0 toward
    infinity as a zero approaches the circle, so sign bisection on
    M(scale) - M_target converges; ``bracket`` is an optional warm-start
    interval that falls back to (0, capacity) when it does not straddle.
    """
    tol = tol or default_tolerances()
    zeros = paths(t)
    n = len(zeros)
    if M_target <= n:
        raise ParameterError("target maximum must exceed the degree")
    cap = paths.capacity(t)

    def overshoot(lam: float) -> float:
        try:
            return _scaled_max(zeros, lam, samples, tol) - M_target
        except NumericFailure:
            # the scan only degrades with zeros pinned to the circle,
            # where the maximum has long passed any finite target
            return math.inf

    lo, hi = 0.0, None
    if bracket is not None:
        b_lo = max(0.0, bracket[0])
        b_hi = min(bracket[1], cap * (1.0 - 1e-12))
        if b_lo < b_hi and overshoot(b_hi) > 0.0 and overshoot(b_lo) < 0.0:
            lo, hi = b_lo, b_hi
    if hi is None:
        hi = cap * (1.0 - 2.0 ** -10)
        for _ in range(80):
            if overshoot(hi) > 0.0:
                break
            hi = cap - (cap - hi) / 8.0
        else:
            raise NumericFailure(
                "could not bracket the target maximum; a zero path touches the circle",
                state={"t": t, "capacity": cap},
            )
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        gap = overshoot(mid)
        if abs(gap) <= tol.lambda_target:
            return mid
        if gap > 0.0:
            hi = mid
        else:
            lo = mid
    raise NumericFailure(
        f"scale bisection stalled at |M - target| > {tol.lambda_target}",
        state={"t": t, "lo": lo, "hi": hi},
    )


@dataclass(frozen=True)
class HomotopyState:
    """Snapshot of one accepted point on the interpolation."""

    t: float
    zeros: tuple
    lam: float
    capacity: float
    achieved_max: float
    achieved_min: float


def _state_at(t, paths, M_target, samples, tol, bracket=None):
    lam = solve_lambda(t, paths, M_target, samples, tol, bracket)
    zeros = paths(t)
    B = BlaschkeProduct(tuple(lam * w for w in zeros), 1.0 + 0j)
    rep = extrema(B, samples, tol)
    state = HomotopyState(t, zeros, lam, paths.capacity(t),
                          rep.max_deriv, rep.min_deriv)
    return state, B


def solve_t(paths: ZeroPaths, m_target: float, M_target: float,
            samples: int | None = None, tol: Tolerances | None = None,
            prescan: int = 64):
    """Find t with the path product pinned at maximum M and minimum m.

    The minimum need not vary monotonically along the path, so a uniform
    prescan locates the first sign change of min(t) - m_target and bisection
    follows it down.  Requires the targets to be bracketed by the endpoint
    minima.
    """
    tol = tol or default_tolerances()

    def probe(t, hint):
        state, B = _state_at(t, paths, M_target, samples, tol, hint)
        return state.achieved_min - m_target, state, B

    hint = None
    f_prev, state, B = probe(0.0, hint)
    if abs(f_prev) <= tol.m_target:
        return 0.0, B
    hint = (0.75 * state.lam, 1.3 * state.lam)
    t_prev = 0.0
    bracket_found = False
    for j in range(1, prescan + 1):
        t_cur = j / prescan
        f_cur, state, B = probe(t_cur, hint)
        if abs(f_cur) <= tol.m_target:
            return t_cur, B
        hint = (0.75 * state.lam, 1.3 * state.lam)
        if f_prev * f_cur < 0.0:
            bracket_found = True
            break
        t_prev, f_prev = t_cur, f_cur
    if not bracket_found:
        raise VerificationFailure(
            "endpoint minima do not bracket the target; "
            "the triple should have routed to an equality case"
        )
    a, fa = t_prev, f_prev
    b = t_cur
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (a + b)
        f_mid, state, B = probe(mid, hint)
        if abs(f_mid) <= tol.m_target:
            return mid, B
        hint = (0.75 * state.lam, 1.3 * state.lam)
        if fa * f_mid < 0.0:
            b = mid
        else:
            a, fa = mid, f_mid
    raise NumericFailure("path bisection stalled before reaching the minimum target",
                         state=state)


def construct(n: int, m: float, M: float, samples: int | None = None,
              tol: Tolerances | None = None) -> BlaschkeProduct:
    """A degree-n product whose derivative extrema are (M, m).

    Dispatch: M = n gives the monomial; equality in the left or right bound
    gives the corresponding extremal product (offsets M-n and n/M-1); a
    strictly interior triple runs the interpolation between those two
    witnesses.  Equality is recognized within a 1e-12 band so boundary
    triples route deterministically.
    """
    tol = tol or default_tolerances()
    triple = FeasibleTriple(n, float(m), float(M))
    m, M = triple.min_target, triple.max_target

    if abs(M - n) <= tol.case_boundary:
        return BlaschkeProduct((0j,) * n, 1.0 + 0j)
    if abs(m - n / (M - n + 1.0)) <= tol.case_boundary:
        return extremal_product(n, Fraction(M) - n, tol)[0]
    if abs(m - (n - 1.0 + n / M)) <= tol.case_boundary:
        return extremal_product(n, Fraction(n) / Fraction(M) - 1, tol)[0]

    wide, _ = extremal_product(n, Fraction(M) - n, tol)
    flat, _ = extremal_product(n, Fraction(n) / Fraction(M) - 1, tol)
    paths = ZeroPaths(wide.zeros, flat.zeros)
    t_star, _ = solve_t(paths, m, M, samples, tol)
    # joint polish: re-solve the scale at the accepted t with a tighter goal
    tight = dataclasses.replace(tol, lambda_target=tol.lambda_target / 100.0)
    state, B = _state_at(t_star, paths, M, samples, tight)
    if abs(state.achieved_max - M) > tol.achieved or abs(state.achieved_min - m) > tol.achieved:
        raise NumericFailure(
            "constructed product missed its targets "
            f"(got M={state.achieved_max!r}, m={state.achieved_min!r})",
            state=state,
        )
    return B
