"""Command-line front end.

Commands:
  verify      run verification suites (exit 0 all pass, 1 failure, 2 usage)
  deform      emit the dynamical deformation table along the flow
  trajectory  emit the oscillator flow with quasi-canonical coordinates
  jacobi      symbolic quantum Jacobi operator report
  spectrum    determinant values selected by the oscillator spectrum
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from . import qjacobi as qj
from .bianchi import BianchiLabel, BianchiType, dynamical_deformation
from .oscillator import HOParams, trajectory
from .report import fmt
from .suites import ALL_SUITES

_LABELS = {
    "II": BianchiType.II,
    "VIIa": BianchiType.VIIA,
    "IIIa1": BianchiType.IIIA1,
    "VIa": BianchiType.VIA,
}

_MU_COLUMNS = ("mu_12^1", "mu_12^2", "mu_12^3", "mu_23^1", "mu_23^2",
               "mu_23^3", "mu_31^1", "mu_31^2", "mu_31^3")
_MU_INDICES = ((1, 1, 2), (2, 1, 2), (3, 1, 2), (1, 2, 3), (2, 2, 3),
               (3, 2, 3), (1, 3, 1), (2, 3, 1), (3, 3, 1))


def _fail_usage(message: str):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(2)


def _make_label(args) -> BianchiLabel:
    btype = _LABELS[args.label]
    needs_a = btype in (BianchiType.VIIA, BianchiType.VIA)
    try:
        return BianchiLabel(btype, args.a if needs_a else None)
    except ValueError as exc:
        _fail_usage(str(exc))


def _make_params(args) -> HOParams:
    try:
        return HOParams.from_energy(args.omega, args.energy)
    except ValueError as exc:
        _fail_usage(str(exc))


def _emit_rows(header, rows, fmt_name: str):
    if fmt_name == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    else:
        for row in rows:
            print(json.dumps(dict(zip(header, row)), sort_keys=True))


def cmd_verify(args) -> int:
    if args.target == "all":
        names = list(ALL_SUITES)
    else:
        names = [args.target]
    all_pass = True
    for name in names:
        kwargs = {"seed": args.seed}
        if name == "lax":
            kwargs["tol_fd"] = args.tol_fd
        if name == "bianchi":
            kwargs["tol_exact_float"] = args.tol_exact_float
        start = time.monotonic()
        report = ALL_SUITES[name](**kwargs)
        elapsed = time.monotonic() - start
        if args.format == "json":
            print(report.render_json())
        else:
            print(report.render_text())
        print(f"# suite={name} wall_time={elapsed:.3f}s", file=sys.stderr)
        all_pass &= report.passed
    return 0 if all_pass else 1


def cmd_deform(args) -> int:
    label = _make_label(args)
    if label.type is BianchiType.II:
        _fail_usage("type II has no dynamical deformation")
    params = _make_params(args)
    if args.steps < 1:
        _fail_usage("steps must be >= 1")
    header = ("t", "q", "p", "Q", "P") + _MU_COLUMNS
    rows = []
    for i in range(args.steps + 1):
        t = args.t0 + (args.t1 - args.t0) * i / args.steps
        pt = trajectory(params, t)
        sc = dynamical_deformation(label, params, t)
        rows.append((t, pt.q, pt.p, pt.Q, pt.P)
                    + tuple(float(sc.component(*idx)) for idx in _MU_INDICES))
    _emit_rows(header, rows, args.format)
    return 0


def cmd_trajectory(args) -> int:
    params = _make_params(args)
    if args.steps < 1:
        _fail_usage("steps must be >= 1")
    header = ("t", "q", "p", "Q", "P", "H")
    rows = []
    for i in range(args.steps + 1):
        t = args.t0 + (args.t1 - args.t0) * i / args.steps
        pt = trajectory(params, t)
        rows.append((t, pt.q, pt.p, pt.Q, pt.P, pt.H))
    _emit_rows(header, rows, args.format)
    return 0


def cmd_jacobi(args) -> int:
    btype = _LABELS[args.label]
    if btype is BianchiType.II:
        _fail_usage("type II has no quantum Jacobi operator here")
    # the symbolic pipeline keeps a as a symbol; a numeric --a is only
    # validated for domain
    if args.a is not None:
        try:
            BianchiLabel(btype, args.a)
        except ValueError as exc:
            _fail_usage(str(exc))
    alphabet = "PQ" if args.alphabet == "pq" else "qpPQ"
    theorem = qj.verify_theorem_q(btype, args.convention, alphabet)
    semi = qj.semiclassical_jacobi(btype)
    cor = qj.corollary_HE(btype)
    da = qj.derivative_algebra(btype)

    obj = {
        "label": args.label,
        "convention": args.convention,
        "alphabet": alphabet,
        "theorem_exact": list(theorem.exact),
        "theorem_residuals": [r.render() for r in theorem.residuals],
        "delta_divisible": list(theorem.delta_divisible),
        "semiclassical": [c.render() for c in semi],
        "h_equals_e": [c.render() for c in cor],
        "C": da.C.render(),
        "beta_sq": da.beta_sq.render(),
        "heisenberg": da.heisenberg_ok,
    }
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
        return 0
    print(f"label={args.label} convention={args.convention} "
          f"alphabet={alphabet}")
    for i in range(3):
        verdict = "exact" if theorem.exact[i] else "residual"
        print(f"J^{i + 1} theorem {verdict}"
              + ("" if theorem.exact[i]
                 else f" residual={theorem.residuals[i].render()}"))
    for i, c in enumerate(semi):
        print(f"J^{i + 1} semiclassical = {c.render()}")
    for i, c in enumerate(cor):
        print(f"J^{i + 1} at H=E = {c.render()}")
    print(f"C = {da.C.render()}")
    print(f"beta^2 = {da.beta_sq.render()}")
    print(f"heisenberg_identification={'true' if da.heisenberg_ok else 'false'}")
    return 0


def cmd_spectrum(args) -> int:
    if args.n_max < 0:
        _fail_usage("n-max must be >= 0")
    header = ("n", "E_over_hbar_omega", "abs_det")
    rows = [(n, n + 0.5, qj.spectrum_determinant(n))
            for n in range(args.n_max + 1)]
    _emit_rows(header, rows, args.format)
    return 0


def _add_flow_flags(sub, t1_default):
    sub.add_argument("--omega", type=float, default=1.0)
    sub.add_argument("--energy", type=float, default=0.5)
    sub.add_argument("--t0", type=float, default=0.0)
    sub.add_argument("--t1", type=float, default=t1_default)
    sub.add_argument("--steps", type=int, default=100)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oplax",
        description="Operadic Lax pairs, Bianchi deformations, and quantum "
                    "Jacobi operator verification",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    v = subs.add_parser("verify", help="run verification suites")
    v.add_argument("--target",
                   choices=("all", "operad", "lax", "bianchi", "quantum"),
                   default="all")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tol-fd", type=float, default=1e-6,
                   help="finite-difference residual tolerance")
    v.add_argument("--tol-exact-float", type=float, default=1e-12,
                   help="tolerance for identities exact up to rounding")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    d = subs.add_parser("deform", help="dynamical deformation table")
    d.add_argument("--label", choices=tuple(_LABELS), required=True)
    d.add_argument("--a", type=float, default=None)
    _add_flow_flags(d, t1_default=2 * math.pi)
    d.set_defaults(func=cmd_deform)

    t = subs.add_parser("trajectory", help="oscillator flow table")
    _add_flow_flags(t, t1_default=2 * math.pi)
    t.set_defaults(func=cmd_trajectory)

    j = subs.add_parser("jacobi", help="quantum Jacobi operator report")
    j.add_argument("--label", choices=tuple(_LABELS), required=True)
    j.add_argument("--a", type=float, default=None)
    j.add_argument("--convention", choices=("left", "right"),
                   default="left")
    j.add_argument("--alphabet", choices=("pq", "qpPQ"), default="pq")
    j.add_argument("--format", choices=("text", "json"), default="text")
    j.set_defaults(func=cmd_jacobi)

    s = subs.add_parser("spectrum", help="spectrum determinant table")
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_spectrum)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
