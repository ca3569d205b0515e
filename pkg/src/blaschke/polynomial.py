"""Polynomial arithmetic on coefficient lists, exact and floating.

Coefficients are stored lowest degree first: index ``k`` holds the
coefficient of ``z**k``.  ``RationalPoly`` keeps exact ``Fraction`` entries
and backs every identity that must come out exactly zero; ``ComplexPoly``
is the double-precision counterpart used for root finding and circle scans.
The zero polynomial is the empty coefficient tuple (degree -1); trailing
zero coefficients are trimmed on construction so the leading coefficient of
a nonzero polynomial is always nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import default_tolerances
from .errors import NumericFailure, ParameterError

_EXACT_SCALARS = (int, Fraction)


class RationalPoly:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        out = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while out and out[-1] == 0:
            out.pop()
        self.coeffs = tuple(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return RationalPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        if not isinstance(other, RationalPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __mul__(self, other):
        if isinstance(other, _EXACT_SCALARS):
            return RationalPoly([c * other for c in self.coeffs])
        if isinstance(other, RationalPoly):
            if self.is_zero or other.is_zero:
                return RationalPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPoly(out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _EXACT_SCALARS):
            return self * other
        return NotImplemented

    def derivative(self) -> "RationalPoly":
        return RationalPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def times_z(self, k: int = 1) -> "RationalPoly":
        """Multiply by z**k."""
        if self.is_zero:
            return self
        return RationalPoly((Fraction(0),) * k + self.coeffs)

    def __call__(self, z):
        if isinstance(z, _EXACT_SCALARS):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        zc = complex(z)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * zc + complex(c)
        return acc

    def to_complex(self) -> "ComplexPoly":
        return ComplexPoly([complex(c) for c in self.coeffs])

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


class ComplexPoly:
    """Univariate polynomial with complex double coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        out = [complex(c) for c in coeffs]
        while out and out[-1] == 0:
            out.pop()
        self.coeffs = tuple(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> complex:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    def __eq__(self, other):
        if isinstance(other, ComplexPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return ComplexPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ComplexPoly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            w = complex(other)
            return ComplexPoly([c * w for c in self.coeffs])
        if isinstance(other, ComplexPoly):
            if self.is_zero or other.is_zero:
                return ComplexPoly()
            return ComplexPoly(np.convolve(self.coeffs, other.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, Fraction)):
            return self * other
        return NotImplemented

    def derivative(self) -> "ComplexPoly":
        return ComplexPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def times_z(self, k: int = 1) -> "ComplexPoly":
        if self.is_zero:
            return self
        return ComplexPoly((0j,) * k + self.coeffs)

    def __call__(self, z):
        zc = complex(z)
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * zc + c
        return acc

    def __repr__(self):
        return f"ComplexPoly({list(self.coeffs)})"


@dataclass(frozen=True)
class RootSet:
    """All roots of a polynomial with the scaled residual they achieve.

    The residual is max over roots of |p(root)| divided by
    max|coeff| * max(1, |root|)**degree, a backward-error style scale that
    stays meaningful for roots on and off the unit circle.
    """

    roots: tuple
    residual: float


def eval_poly(p, z):
    """Horner-scheme value of a polynomial at a point."""
    return p(z)


def conj_reciprocal(p, n: int):
    """Reverse and conjugate the coefficients of ``p`` padded to degree n.

    Coefficient k of the result is the conjugate of coefficient n - k of p,
    so applying the map twice with the same n gives back p.
    """
    if n < p.degree:
        raise ParameterError(
            f"cannot form the conjugate-reciprocal at degree {n} of a degree "
            f"{p.degree} polynomial"
        )
    if isinstance(p, RationalPoly):
        return RationalPoly([p.coeff(n - k) for k in range(n + 1)])
    return ComplexPoly([p.coeff(n - k).conjugate() for k in range(n + 1)])


def wronskian_combo(f, g):
    """The polynomial z*(f*g' - f'*g), exact when f and g are rational."""
    return (f * g.derivative() - f.derivative() * g).times_z()


def _scaled_residual(coeffs_high, x):
    deg = len(coeffs_high) - 1
    scale = max(abs(c) for c in coeffs_high)
    vals = np.abs(np.polyval(coeffs_high, x))
    return vals / (scale * np.maximum(1.0, np.abs(x)) ** deg)


def roots(p: ComplexPoly, tol: float | None = None, max_iter: int = 100) -> RootSet:
    """All complex roots of ``p`` with multiplicity.

    Companion-matrix eigenvalues give the initial estimates, which are then
    polished by simultaneous Aberth-Ehrlich iteration until the scaled
    residual drops below ``tol``.
    """
    if tol is None:
        tol = default_tolerances().root_residual
    if p.degree < 1:
        raise ParameterError("root finding needs degree at least 1")
    c_high = np.asarray(p.coeffs, dtype=complex)[::-1]
    dc_high = c_high[:-1] * np.arange(len(c_high) - 1, 0, -1)
    x = np.roots(c_high)
    best = x
    best_res = float(np.max(_scaled_residual(c_high, x)))
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for _ in range(max_iter):
            res = _scaled_residual(c_high, x)
            worst = float(res.max())
            if worst < best_res:
                best, best_res = x, worst
            if worst <= tol:
                break
            pv = np.polyval(c_high, x)
            dpv = np.polyval(dc_high, x)
            w = np.where(dpv != 0, pv / np.where(dpv == 0, 1.0, dpv), 0.0)
            diff = x[:, None] - x[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            denom = 1.0 - w * s
            step = np.where(np.abs(denom) > 1e-30, w / np.where(denom == 0, 1.0, denom), w)
            step = np.where(np.isfinite(step), step, 0.0)
            # converged roots stay put so clusters cannot destabilize them
            x = x - np.where(res > 0.1 * tol, step, 0.0)
    if best_res > tol:
        raise NumericFailure(
            f"root refinement stalled at scaled residual {best_res:.3e} (target {tol:.1e})",
            residual=best_res,
        )
    return RootSet(tuple(complex(v) for v in best), best_res)
