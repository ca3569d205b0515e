"""Command-line front end.

Commands: extremal, prescribe, scan, verify, preimages, classify.  Outputs
are JSON and CSV files written atomically into the --out directory, with a
short summary on stdout.  Exit codes: 0 ok, 1 bad or infeasible input,
2 numeric failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
import tempfile

import numpy as np

from .config import default_tolerances
from .errors import NumericFailure, ParameterError, VerificationFailure
from .hypergeo import as_fraction
from . import extremal as extremal_mod
from . import prescribe as prescribe_mod
from . import products
from . import verify as verify_mod

DEFAULT_SAMPLES = 8192


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Resolved run settings shared by the file-emitting commands."""

    samples: int = DEFAULT_SAMPLES
    tolerances: object = None
    format: str = "json"
    out: str = "."
    seed: int = 0

    def __post_init__(self):
        if self.samples < 4096:
            raise ParameterError("samples must be at least 4096")
        if self.tolerances is None:
            object.__setattr__(self, "tolerances", default_tolerances())


def _config(args, degree: int) -> RunConfig:
    requested = args.samples if args.samples is not None else DEFAULT_SAMPLES
    cfg = RunConfig(
        samples=requested,
        format=getattr(args, "format", "json"),
        out=getattr(args, "out", ".") or ".",
        seed=getattr(args, "seed", 0),
    )
    if cfg.samples < 64 * degree:
        cfg = dataclasses.replace(cfg, samples=64 * degree)
    return cfg


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors, which this CLI reserves
    # for numeric failures; funnel them through the bad-input path instead
    def error(self, message):
        raise ParameterError(message)


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _complex_dict(w: complex) -> dict:
    return {"re": w.real, "im": w.imag}


def product_to_json(B: products.BlaschkeProduct) -> str:
    doc = {
        "degree": B.degree,
        "alpha": _complex_dict(B.alpha),
        "zeros": [_complex_dict(a) for a in B.zeros],
    }
    return json.dumps(doc, indent=2) + "\n"


def product_from_json(text: str) -> products.BlaschkeProduct:
    try:
        doc = json.loads(text)
        zeros = tuple(complex(z["re"], z["im"]) for z in doc["zeros"])
        alpha = complex(doc["alpha"]["re"], doc["alpha"]["im"])
        degree = int(doc["degree"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParameterError(f"malformed product JSON: {exc}") from None
    if degree != len(zeros):
        raise ParameterError("product JSON degree disagrees with the zero count")
    return products.BlaschkeProduct(zeros, alpha)


def _load_product(path: str) -> products.BlaschkeProduct:
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc}") from None
    return product_from_json(text)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise ParameterError(f"cannot parse {text!r} as a complex number") from None


def _profile_csv(B: products.BlaschkeProduct, samples: int) -> str:
    t = np.linspace(-math.pi, math.pi, samples, endpoint=False)
    vals = products.deriv_profile(B, t)
    lines = ["t,deriv_modulus"]
    lines += [f"{float(a)!r},{float(v)!r}" for a, v in zip(t, vals)]
    return "\n".join(lines) + "\n"


def _zeros_csv(B: products.BlaschkeProduct) -> str:
    lines = ["re,im"]
    lines += [f"{a.real!r},{a.imag!r}" for a in B.zeros]
    return "\n".join(lines) + "\n"


def _emit_report(doc: dict, path: str | None, fmt: str):
    if fmt == "csv":
        header = ",".join(doc)
        row = ",".join(_csv_cell(v) for v in doc.values())
        text = f"{header}\n{row}\n"
    else:
        text = json.dumps(doc, indent=2) + "\n"
    if path:
        _atomic_write(path, text)
    else:
        sys.stdout.write(text)


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _resolve_samples(args, degree: int) -> int:
    requested = args.samples if args.samples is not None else DEFAULT_SAMPLES
    if requested < 4096:
        raise ParameterError("samples must be at least 4096")
    return max(requested, 64 * degree)


def cmd_extremal(args) -> int:
    nu = as_fraction(args.nu)
    B, spec = extremal_mod.extremal_product(args.n, nu)
    samples = _resolve_samples(args, B.degree)
    out = args.out
    _atomic_write(os.path.join(out, "product.json"), product_to_json(B))
    _atomic_write(os.path.join(out, "extremal.json"),
                  json.dumps(spec.to_json_dict(), indent=2) + "\n")
    _atomic_write(os.path.join(out, "zeros.csv"), _zeros_csv(B))
    _atomic_write(os.path.join(out, "profile.csv"), _profile_csv(B, samples))
    rep = products.extrema(B, samples)
    print(f"degree {B.degree}, nu {nu}: M={rep.max_deriv!r} m={rep.min_deriv!r} "
          f"mean={rep.mean!r} -> {out}")
    return 0


def cmd_prescribe(args) -> int:
    report = prescribe_mod.feasibility(args.n, args.m, args.M)
    if not report.feasible:
        print(f"infeasible: {report.violation()}", file=sys.stderr)
        return 1
    B = prescribe_mod.construct(args.n, args.m, args.M)
    rep = products.extrema(B, _resolve_samples(args, B.degree))
    out = args.out
    _atomic_write(os.path.join(out, "product.json"), product_to_json(B))
    doc = {
        "n": args.n,
        "target_M": float(args.M),
        "target_m": float(args.m),
        "achieved_M": rep.max_deriv,
        "achieved_m": rep.min_deriv,
        "mean": rep.mean,
    }
    _emit_report(doc, os.path.join(out, "achieved." + args.format), args.format)
    print(f"achieved M={rep.max_deriv!r} m={rep.min_deriv!r} -> {out}")
    return 0


def cmd_scan(args) -> int:
    B = _load_product(args.product)
    samples = _resolve_samples(args, B.degree)
    _atomic_write(os.path.join(args.out, "profile.csv"), _profile_csv(B, samples))
    rep = products.extrema(B, samples)
    print("M,m,mean")
    print(f"{rep.max_deriv!r},{rep.min_deriv!r},{rep.mean!r}")
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run_suite(args.suite, args.seed)
    width = max(len(r.name) for r in results)
    failures = [r for r in results if not r.ok]
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        print(f"[{mark}] {r.name:<{width}}  {r.detail}")
    if failures:
        print(f"result: FAIL ({len(failures)} of {len(results)}): "
              f"{failures[0].name}", file=sys.stderr)
        return 3
    print(f"result: PASS ({len(results)} checks)")
    return 0


def cmd_preimages(args) -> int:
    B = _load_product(args.product)
    lam = _parse_complex(args.lam)
    if args.weights:
        pre = products.residue_weights(B, lam)
    else:
        pre = products.preimages(B, lam, lifted=args.lifted)
    doc = {
        "lambda": _complex_dict(pre.lam),
        "lifted": bool(args.lifted),
        "points": [_complex_dict(w) for w in pre.points],
        "weights": list(pre.weights) if pre.weights is not None else None,
    }
    path = os.path.join(args.out, "preimages.json") if args.out else None
    _emit_report(doc, path, "json")
    return 0


def cmd_classify(args) -> int:
    B = _load_product(args.product)
    cls = products.classify_circle_maps(B, _resolve_samples(args, B.degree))
    kind = extremal_mod.classify_extremal(B)
    doc = {
        "degree": cls.degree,
        "M": cls.max_deriv,
        "m": cls.min_deriv,
        "lower_homeo": cls.lower_homeo,
        "lower_diffeo": cls.lower_diffeo,
        "upper_homeo": cls.upper_homeo,
        "upper_diffeo": cls.upper_diffeo,
        "resolved": cls.resolve(),
        "extremal": {
            "verdict": kind.verdict,
            "kind": kind.kind,
            "nu": kind.nu,
        },
    }
    path = os.path.join(args.out, "classify.json") if args.out else None
    _emit_report(doc, path, "json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blaschke",
                     description="finite Blaschke products with extreme "
                                 "boundary derivatives")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_default="."):
        p.add_argument("--samples", type=int, default=None,
                       help=f"circle scan density (default {DEFAULT_SAMPLES})")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=out_default, help="output directory")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("extremal", help="build an extremal product from (n, nu)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nu", required=True, help="rational offset, e.g. 5, -1/4, 0.25")
    common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("prescribe", help="build a product with extrema (M, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_prescribe)

    p = sub.add_parser("scan", help="derivative profile of a stored product")
    p.add_argument("--product", required=True, help="path to product JSON")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("--suite", choices=verify_mod.SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("preimages", help="boundary solutions of (z)B(z) = lambda")
    p.add_argument("--product", required=True)
    p.add_argument("--lam", default="1", help="unimodular target, e.g. 1, -1, 0.6+0.8i")
    p.add_argument("--lifted", action="store_true")
    p.add_argument("--weights", action="store_true",
                   help="include residues (needs B(0) = 0, not lifted)")
    p.add_argument("--out", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_preimages)

    p = sub.add_parser("classify", help="circle-map and extremality classification")
    p.add_argument("--product", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_classify)
    return parser


def _fuse_value_flags(argv):
    """Join '--nu -1/4' into '--nu=-1/4' so argparse does not read the value
    as an option; same for '--lam'."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in ("--nu", "--lam") and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_fuse_value_flags(list(argv)))
        default_tolerances()  # fail fast on a malformed BLAS_EXT_TOL
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
