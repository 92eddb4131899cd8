"""Command-line front end.

Each subcommand calls one library routine and writes CSV (default) or JSON
to ``--out`` or stdout. Exit status: 0 success, 1 failed check, 2 bad usage
or parameters.
"""

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import lattice_paths as lp
from . import marchenko_pastur as mp
from . import power_sums as ps
from . import random_matrix as rm
from . import spectral as sp
from .errors import CertificationError, DomainError, SizeError
from .laguerre_core import LaguerreParams, monic_coeffs

__all__ = ["main", "run", "build_parser"]

_VALUE_FLAGS = {"--p", "--n", "--alpha", "--alpha-real", "--c", "--k", "--k-max", "--l-max",
                "--trials", "--seed", "--grid", "--out", "--format", "--law"}


class CheckFailed(Exception):
    """Raised by a subcommand whose verification did not pass; output is still written."""

    def __init__(self, message, payload):
        super().__init__(message)
        self.payload = payload


def _rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2, default=_fmt) + "\n"


def _table(args, header, rows):
    if args.format == "json":
        return _json([dict(zip(header, (_jsonable(x) for x in row))) for row in rows])
    return _csv(header, rows)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _params(args):
    if args.alpha_real is not None:
        return LaguerreParams.from_real(args.p, args.alpha_real)
    return LaguerreParams(args.p, args.alpha)


def cmd_roots(args):
    prm = _params(args)
    spec = sp.roots(prm)
    if args.format == "json":
        return _json({"p": prm.p, "alpha": str(prm.alpha), **spec.to_json()})
    rows = []
    for i, x in enumerate(spec.real_roots):
        rows.append((prm.p, prm.alpha, spec.zero_multiplicity, i, float(x), 0.0))
    for i, z in enumerate(spec.complex_roots, start=len(spec.real_roots)):
        rows.append((prm.p, prm.alpha, spec.zero_multiplicity, i, float(z.real), float(z.imag)))
    return _csv(["p", "alpha", "zero_multiplicity", "index", "real", "imag"], rows)


def cmd_power_sums(args):
    prm = _params(args)
    table = ps.newton_power_sums(prm, args.k_max)
    spec = sp.roots(prm) if prm.p >= 1 else None
    rows, ok = [], True
    for k in range(1, args.k_max + 1):
        exact = table.M(k)
        a_val = ps.a_value(k, 1, prm)
        ok &= a_val == exact
        numeric = sp.power_sum(spec, k) if spec is not None else float("nan")
        rows.append((k, exact, a_val, float(exact), numeric))
    out = _table(args, ["k", "M", "A_k1", "M_float", "root_power_sum"], rows)
    if not ok:
        raise CheckFailed("Newton identities and the A(k,1) recursion disagree", out)
    return out


def cmd_certify(args):
    ks = [args.k] if args.k is not None else list(range(1, args.k_max + 1))
    certs = [ps.certify_theorem2(k, raise_on_failure=False) for k in ks]
    if args.format == "csv":
        out = _csv(["k", "pass", "leading", "remainder"],
                   [(c.k, str(c.passed).lower(), str(c.leading), str(c.remainder)) for c in certs])
    else:
        payload = [c.to_json() for c in certs]
        out = _json(payload[0] if len(payload) == 1 else payload)
    if not all(c.passed for c in certs):
        raise CheckFailed("leading-term certification failed", out)
    return out


def cmd_paths(args):
    table = lp.path_table_recursion(args.k_max, args.l_max)
    rows = list(table.rows())
    out = _table(args, ["k", "l", "j", "count"], rows)
    if args.exact:
        bad = [(k, l, j) for k, l, j, n in rows if lp.enumerate_legal_paths(k, l, j) != n]
        if bad:
            raise CheckFailed(f"recursion disagrees with enumeration at {bad[:5]}", out)
    return out


def cmd_mp_moments(args):
    c = args.c
    if not c > -1:
        raise DomainError("--c must exceed -1")
    rows = []
    for k in range(0, args.k_max + 1):
        exact = mp.moment(c, k)
        quad = mp.quadrature_moment(c, k)
        rows.append((k, exact, float(exact), quad, abs(float(exact) - quad),
                     mp.moment_tilde(1 / (c + 1), k), mp.scaling_relation_check(c, k)))
    return _table(args, ["k", "moment_exact", "moment", "quadrature", "abs_error",
                         "moment_tilde", "scaling_residual"], rows)


def cmd_converge(args):
    p_list = args.p_list or [50, 100, 200, 400]
    rows = sp.convergence_table(args.c, p_list, args.k_max)
    if args.format == "json":
        return _json([r.__dict__ for r in rows])
    return sp.convergence_csv(rows)


def cmd_fixed_point(args):
    c = args.c
    if not c > -1:
        raise DomainError("--c must exceed -1")
    limit = 1.0 / (2.0 * (math.sqrt(float(c) + 1.0) + 1.0) ** 2)
    zs = np.linspace(0.0, limit, args.grid, endpoint=False)
    header = ["z", "f_c_minus", "residual", "generating_fn", "identity_error"]
    prm = None
    if args.p_list:
        p = args.p_list[0]
        alpha = args.alpha if args.alpha_given else Fraction(sp.alpha_for(c, p))
        prm = LaguerreParams(p, alpha)
        header += ["f_p", "g_p_minus", "f_p_le_g_p"]
    rows = []
    for z in zs:
        f = mp.f_c_minus(c, z)
        g = mp.generating_fn(c, z)
        row = [float(z), f, mp.fixed_point_residual(c, z, f), g,
               abs(g - ((float(c) + 1.0) * z * f + 1.0))]
        if prm is not None:
            fp = sp.f_p(prm, z)
            try:
                gp = mp.g_p_minus(prm.p, prm.alpha, z)
            except DomainError:
                gp = float("nan")
            row += [fp, gp, str(fp <= gp + 1e-10).lower()]
        rows.append(row)
    return _table(args, header, rows)


def cmd_wishart(args):
    n = args.n if args.n is not None else 2 * args.p
    both = rm.esd_moment_mc(args.p, n, args.law, args.trials, args.k_max, args.seed, "both")
    c = Fraction(n - args.p, args.p)
    a = Fraction(args.p, n)
    rows = []
    for norm, ref_fn, par in (("p", mp.moment, c), ("n", mp.moment_tilde, a)):
        for k, mean, err in both[norm]:
            ref = float(ref_fn(par, k))
            rows.append((norm, k, mean, err, ref, abs(mean - ref) / ref))
    return _table(args, ["normalization", "k", "mean_moment", "stderr", "reference",
                         "rel_error"], rows)


def cmd_fg_identity(args):
    if args.exact:
        got = rm.exact_rademacher_expectation(args.p, args.n)
        ref = monic_coeffs(LaguerreParams(args.p, args.n - args.p))
        match = got == ref
        out = _json({
            "p": args.p, "n": args.n, "law": "rademacher", "method": "enumeration",
            "expectation_coeffs": [str(got.coeff(i)) for i in range(args.p + 1)],
            "reference_coeffs": [str(ref.coeff(i)) for i in range(args.p + 1)],
            "match": match,
        })
        if not match:
            raise CheckFailed("exact expectation differs from the Laguerre polynomial", out)
        return out
    est = rm.mc_expected_charpoly(args.p, args.n, args.law, args.trials, args.seed)
    payload = est.to_json()
    payload["within_4_stderr"] = est.within(4.0)
    out = _json(payload)
    if not payload["within_4_stderr"]:
        raise CheckFailed("Monte Carlo estimate is more than 4 standard errors away", out)
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="laguerre-mp",
        description="Laguerre root power sums, Marchenko-Pastur checks and random-matrix experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp_, fmt="csv"):
        sp_.add_argument("--out", help="output file (default: stdout)")
        sp_.add_argument("--format", choices=["csv", "json"], default=fmt)
        return sp_

    def laguerre(sp_):
        sp_.add_argument("--p", type=int, required=True)
        sp_.add_argument("--alpha", type=_rational, default=Fraction(0),
                         help="exact rational, e.g. 7/3 or -1/1")
        sp_.add_argument("--alpha-real", type=float, default=None,
                         help="real alpha, replaced by its best rational approximation "
                              "with denominator <= 10**6")

    s = common(sub.add_parser("roots", help="roots of the monic Laguerre polynomial"))
    laguerre(s)
    s.set_defaults(func=cmd_roots)

    s = common(sub.add_parser("power-sums", help="exact power sums M(k)"))
    laguerre(s)
    s.add_argument("--k-max", type=int, default=6)
    s.set_defaults(func=cmd_power_sums)

    s = common(sub.add_parser("certify-theorem2", help="exact leading-term certificate"), "json")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--k-max", type=int, default=8)
    s.set_defaults(func=cmd_certify)

    s = common(sub.add_parser("paths", help="legal lattice path counts"))
    s.add_argument("--k-max", type=int, default=7)
    s.add_argument("--l-max", type=int, default=3)
    s.add_argument("--exact", action="store_true", help="also check against brute-force enumeration")
    s.set_defaults(func=cmd_paths)

    s = common(sub.add_parser("mp-moments", help="Marchenko-Pastur moments vs quadrature"))
    s.add_argument("--c", type=_rational, default=Fraction(0))
    s.add_argument("--k-max", type=int, default=8)
    s.set_defaults(func=cmd_mp_moments)

    s = common(sub.add_parser("converge", help="root moments vs Marchenko-Pastur moments"))
    s.add_argument("--c", type=_rational, default=Fraction(1))
    s.add_argument("--p", dest="p_list", type=_int_list, default=None,
                   help="comma-separated degrees, e.g. 50,100,200,400")
    s.add_argument("--k-max", type=int, default=4)
    s.set_defaults(func=cmd_converge)

    s = common(sub.add_parser("fixed-point", help="fixed-point and generating-function checks"))
    s.add_argument("--c", type=_rational, default=Fraction(1))
    s.add_argument("--grid", type=int, default=20)
    s.add_argument("--p", dest="p_list", type=_int_list, default=None,
                   help="compare f_p and g_p_minus at this degree")
    s.add_argument("--alpha", type=_rational, default=None)
    s.set_defaults(func=cmd_fixed_point)

    s = common(sub.add_parser("wishart-esd", help="spectral moments of sample covariance matrices"))
    s.add_argument("--p", type=int, default=100)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--law", choices=["gaussian", "rademacher"], default="gaussian")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k-max", type=int, default=4)
    s.set_defaults(func=cmd_wishart)

    s = common(sub.add_parser("fg-identity", help="expected characteristic polynomial of XX^T"),
               "json")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--exact", action="store_true", help="enumerate all sign matrices")
    s.add_argument("--law", choices=["gaussian", "rademacher"], default="gaussian")
    s.add_argument("--trials", type=int, default=100000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_fg_identity)
    return parser


def _join_values(argv):
    # "--alpha -1/1" would otherwise be read as two flags
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Parse ``argv`` and run one subcommand; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "alpha") and args.command == "fixed-point":
        args.alpha_given = args.alpha is not None
    try:
        text = args.func(args)
    except CheckFailed as exc:
        _emit(exc.payload, args.out)
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except CertificationError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (DomainError, SizeError, ValueError, TypeError) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2
    _emit(text, args.out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
