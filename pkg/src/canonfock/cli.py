"""Command-line front end.

    canonfock classify --s 2+0i --t 1+0i
    canonfock spectrum --s 2+0i --t 1+0i --count 5 --dim 64
    canonfock trace    --s 2+0i --t 1+0i
    canonfock profile  --s 3+0i --t 1+1i --p inf
    canonfock verify   --suite fast

Exit codes: 0 success, 1 failed verification or internal inconsistency,
2 parameters outside the domain of the requested quantity (a one-line JSON
error goes to stderr), 64 malformed command line.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from contextlib import contextmanager

import numpy as np

from . import fockp, kernel, operator, spectral, verify
from .errors import CanonFockError, InternalConsistencyError
from .kernel import ParameterPair

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"^([+-]?{_NUM})(?:([+-])({_NUM})i)?$")


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi`` or ``a-bi`` with decimal components."""
    m = _COMPLEX.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r} (expected a+bi or a-bi)")
    re_part = float(m.group(1))
    im_part = 0.0
    if m.group(3) is not None:
        im_part = float(m.group(3))
        if m.group(2) == "-":
            im_part = -im_part
    z = complex(re_part, im_part)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"non-finite complex literal {text!r}")
    return z


def render_complex(z: complex) -> str:
    """Inverse of :func:`parse_complex` for finite values (signed zeros kept)."""
    z = complex(z)
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _dim(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"dimension must be an integer, got {text!r}") from None
    if not 1 <= n <= operator.MAX_DIM:
        raise argparse.ArgumentTypeError(f"dimension must lie in [1, {operator.MAX_DIM}]")
    return n


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _pexp(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"exponent must be a positive number or 'inf', got {text!r}") from None
    if not p > 0 or math.isnan(p):
        raise argparse.ArgumentTypeError("exponent must be positive")
    return p


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="canonfock", description="Canonical integral operators T^(s,t) on the Fock space.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    params = _Parser(add_help=False)
    params.add_argument("--s", type=parse_complex, required=True, help="parameter s, e.g. 2+0i")
    params.add_argument("--t", type=parse_complex, required=True, help="parameter t, e.g. 1-0.5i")
    params.add_argument("--out", help="write the artifact here instead of stdout")

    def fmt(p, default):
        p.add_argument("--format", choices=("json", "csv"), default=default)

    p = sub.add_parser("classify", parents=[params], help="operator regime and discriminant")
    p.add_argument("--tol", type=float, default=kernel.BOUNDARY_TOL)
    fmt(p, "json")

    p = sub.add_parser("kernel", parents=[params], help="kernel value and its upper bound")
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--w", type=parse_complex, required=True)
    fmt(p, "json")

    p = sub.add_parser("matrix", parents=[params], help="finite section of T")
    p.add_argument("--dim", type=_dim, default=64)
    fmt(p, "csv")

    p = sub.add_parser("spectrum", parents=[params], help="closed vs numeric singular values")
    p.add_argument("--count", type=_positive_int, default=8)
    p.add_argument("--dim", type=_dim, default=None, help="section size (default: automatic)")
    fmt(p, "csv")

    p = sub.add_parser("trace", parents=[params], help="closed trace vs diagonal sum")
    fmt(p, "json")

    p = sub.add_parser("berezin", parents=[params], help="bivariate Berezin transform and bound")
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--w", type=parse_complex, default=None, help="defaults to z")
    p.add_argument("--p", type=_pexp, default=None, help="also report the L^{p/2} norm of Berezin(|T|^2)")
    fmt(p, "json")

    p = sub.add_parser("profile", parents=[params], help="||T k_w||_p or L^1 kernel profile along rays")
    p.add_argument("--p", type=_pexp, default=2.0)
    p.add_argument("--quantity", choices=("tkw", "l1"), default="tkw")
    fmt(p, "csv")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--suite", choices=tuple(verify.SUITES), default="fast")
    p.add_argument("--seed", type=_seed, default=verify.DEFAULT_SEED)
    p.add_argument("--out")
    p.add_argument("--inject-fault", choices=verify.FAULTS, default=None, help=argparse.SUPPRESS)
    fmt(p, "json")
    return parser


def _json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    return buf.getvalue()


def _require_json(args):
    if args.format != "json":
        raise UsageError(f"{args.command} only supports --format json")


def cmd_classify(args, p):
    _require_json(args)
    if args.tol < 0:
        raise UsageError("--tol must be non-negative")
    c = kernel.classify(p, args.tol)
    return _json({"class": c.tag.value, "discriminant": c.discriminant})


def cmd_kernel(args, p):
    _require_json(args)
    out = {"value": _pair(kernel.kernel_eval(p, args.z, args.w))}
    if abs(p.s) > abs(p.t):
        bound, c = kernel.kernel_bound(p, args.z, args.w)
        out.update(bound=bound, C=c)
    return _json(out)


def cmd_matrix(args, p):
    t = operator.build_matrix(p, args.dim)
    if args.format == "csv":
        return operator.matrix_to_csv_string(t)
    rows, cols = np.nonzero(t.entries)
    entries = [[int(m), int(n), *_pair(t.entries[m, n])] for m, n in zip(rows, cols)]
    return _json({**operator.matrix_header(t), "entries": entries})


def cmd_spectrum(args, p):
    rep = spectral.spectral_report(p, args.count, args.dim)
    if args.format == "json":
        return _json(rep.to_dict())
    rows = [
        (n, float(c), float(x), float(abs(c - x)))
        for n, (c, x) in enumerate(zip(rep.closed_singular_values, rep.numeric_singular_values))
    ]
    return _csv(("n", "closed", "numeric", "abs_err"), rows)


def cmd_trace(args, p):
    _require_json(args)
    closed = spectral.trace_closed(p)
    numeric, _ = spectral.trace_section(p)
    return _json({"closed": _pair(closed), "numeric": _pair(numeric)})


def cmd_berezin(args, p):
    _require_json(args)
    w = args.z if args.w is None else args.w
    out = {
        "value": _pair(fockp.berezin(p, args.z, w)),
        "bound": fockp.berezin_bound(p, args.z, w),
    }
    if args.p is not None:
        if math.isinf(args.p):
            raise UsageError("--p must be finite for the L^{p/2} norm")
        out["modsq_lp_norm"] = {
            "p": args.p,
            "closed": fockp.berezin_modsq_lp_norm(p, args.p),
            "numeric": fockp.berezin_modsq_lp_norm_numeric(p, args.p),
        }
    return _json(out)


def cmd_profile(args, p):
    if args.quantity == "l1" and args.p != 2.0:
        raise UsageError("--p does not apply to the L^1 profile")
    rows = []
    for r, theta in fockp.profile_samples():
        w = r * complex(math.cos(theta), math.sin(theta))
        if args.quantity == "tkw":
            v = fockp.tkw_fp_norm(p, w, args.p)
        else:
            v = fockp.kernel_l1_profile(p, w)
        rows.append((float(r), float(theta), float(v)))
    if args.format == "json":
        return _json([{"absw": r, "arg": a, "value": v} for r, a, v in rows])
    return _csv(("absw", "arg", "value"), rows)


def cmd_verify(args):
    _require_json(args)
    cfg = verify.suite_config(args.suite, seed=args.seed, fault=args.inject_fault)
    report = verify.run_suite(cfg)
    return _json(report), (EXIT_OK if report["passed"] else EXIT_VERIFY)


COMMANDS = {
    "classify": cmd_classify,
    "kernel": cmd_kernel,
    "matrix": cmd_matrix,
    "spectrum": cmd_spectrum,
    "trace": cmd_trace,
    "berezin": cmd_berezin,
    "profile": cmd_profile,
}


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(_json({"error": kind, "message": message}))
    return code


def run(args) -> int:
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        else:
            text, code = COMMANDS[args.command](args, ParameterPair(args.s, args.t)), EXIT_OK
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except InternalConsistencyError as exc:
        return _fail(EXIT_VERIFY, exc.code, str(exc))
    except CanonFockError as exc:
        return _fail(EXIT_DOMAIN, exc.code, str(exc))
    with _sink(args.out) as fh:
        fh.write(text)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
