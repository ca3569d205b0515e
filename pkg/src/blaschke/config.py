"""Tolerance settings shared by the numeric routines.

Every comparison threshold lives in one record so that the library, the CLI
and the test suites agree on what "equal" means.  The environment variable
``BLAS_EXT_TOL`` overrides the record: a bare number replaces every field
uniformly, a JSON object (e.g. ``{"circle_membership": 1e-7}``) replaces the
named fields only.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass
from functools import lru_cache

ENV_VAR = "BLAS_EXT_TOL"


@dataclass(frozen=True)
class Tolerances:
    unimodular: float = 1e-12        # | |alpha| - 1 | at construction
    boundary_modulus: float = 1e-10  # | |B(z)| - 1 | for z on the circle
    circle_membership: float = 1e-8  # | |z| - 1 | for returned boundary points
    preimage_residual: float = 1e-9  # |target(z) - lambda| at preimage points
    point_separation: float = 1e-8   # distinctness of preimage points
    root_residual: float = 1e-10     # scaled polynomial residual
    identity: float = 1e-9           # floating identity and slack checks
    identity_numeric: float = 1e-10  # grid-sampled identity checks
    partial_fraction: float = 1e-8   # residue partial-fraction spot checks
    mean_value: float = 1e-8         # circle mean of |B'| vs the degree
    extrema_t: float = 1e-12         # bisection width in the angle variable
    quadrature: float = 1e-7         # semigroup averaging agreement
    classify_band: float = 1e-9      # band around homeomorphism thresholds
    double_root: float = 1e-7        # paired double roots of the psi polynomial
    case_boundary: float = 1e-12     # equality-case dispatch in construct()
    lambda_target: float = 1e-9      # |M(B_lambda) - M| stopping rule
    m_target: float = 1e-6           # |m(t) - m| stopping rule
    achieved: float = 1e-4           # final (M, m) agreement for construct()
    disk_margin: float = 1e-10       # distance roots must keep inside the disk


def default_tolerances() -> Tolerances:
    """The tolerance record, with ``BLAS_EXT_TOL`` applied when set."""
    return _with_env(os.environ.get(ENV_VAR))


@lru_cache(maxsize=16)
def _with_env(raw: str | None) -> Tolerances:
    base = Tolerances()
    if not raw:
        return base
    try:
        value = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"cannot parse {ENV_VAR}={raw!r}: {exc}") from None
    if isinstance(value, (int, float)):
        fields = {f.name: float(value) for f in dataclasses.fields(base)}
        return Tolerances(**fields)
    if isinstance(value, dict):
        known = {f.name for f in dataclasses.fields(base)}
        unknown = set(value) - known
        if unknown:
            raise ValueError(f"{ENV_VAR} names unknown tolerances: {sorted(unknown)}")
        return dataclasses.replace(base, **{k: float(v) for k, v in value.items()})
    raise ValueError(f"{ENV_VAR} must be a number or a JSON object")
