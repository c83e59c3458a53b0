"""Command line front end.

Subcommands map one-to-one onto the library's main entry points: section
zeros, radial measures, coefficient bound reports, window gauge estimates,
Monte Carlo ensembles, and the universal construction. All structured
output is JSON (or CSV where a flat table is natural) and embeds the
resolved configuration plus the package version, so runs can be diffed.
Exit codes: 0 on success, 1 for domain errors including bad arguments,
2 when a computation fails to converge or verify.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import groupby

import numpy as np

from . import __version__
from .bounds import bounds_report
from .ensembles import as_ensemble, check_conditions, mc_expected_cdf
from .exceptions import (CoefficientOverflowError, ConvergenceError,
                         DomainError, VerificationError)
from .gauge import gauge_and_index
from .measures import counting_fn, radial_projection
from .roots import find_zeros
from .series import parse_family, section
from .universal import build_universal, cycle_targets, parse_targets


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route through DomainError
    # so the documented exit code mapping holds
    def error(self, message):
        raise DomainError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise DomainError(f"expected comma separated numbers, got {text!r}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_doc(config: dict, payload: dict) -> str:
    doc = {"version": __version__, "config": config}
    doc.update(payload)
    return json.dumps(doc, indent=2)


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SZEGO_WORKERS", "1")))
    except ValueError:
        return 1


def _cmd_zeros(args) -> None:
    stream = parse_family(args.family)
    P = section(stream, args.n)
    Z = find_zeros(P, tol=args.tol)
    if args.format == "csv":
        lines = ["re,im,multiplicity"]
        for z, grp in groupby(Z.finite_zeros):
            mult = sum(1 for _ in grp)
            lines.append(f"{z.real:.17g},{z.imag:.17g},{mult}")
        lines.append(f"# infinity_count: {Z.infinity_count}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payload = {
            "finite_zeros": [[z.real, z.imag] for z in Z.finite_zeros],
            "infinity_count": Z.infinity_count,
            "formal_degree": Z.formal_degree,
        }
        config = {"command": "zeros", "family": args.family, "n": args.n,
                  "tol": args.tol}
        _emit(_json_doc(config, payload), args.out)


def _cmd_measure(args) -> None:
    stream = parse_family(args.family)
    P = section(stream, args.n)
    Z = find_zeros(P, tol=args.tol)
    mu = radial_projection(Z)
    payload = {
        "radii": [float(r) for r in mu.radii],
        "weights": [float(w) for w in mu.weights],
        "infinity_mass": mu.infinity_mass,
    }
    if args.t_grid:
        ts = _floats(args.t_grid)
        payload["t_grid"] = ts
        payload["counting_fn"] = [float(counting_fn(Z, t)) for t in ts]
    config = {"command": "measure", "family": args.family, "n": args.n,
              "tol": args.tol}
    _emit(_json_doc(config, payload), args.out)


def _cmd_bounds(args) -> None:
    stream = parse_family(args.family)
    P = section(stream, args.n)
    report = bounds_report(P)
    config = {"command": "bounds", "family": args.family, "n": args.n}
    _emit(_json_doc(config, report.to_dict()), args.out)


def _cmd_gauge(args) -> None:
    stream = parse_family(args.family)
    grid = _floats(args.grid) if args.grid else None
    report = gauge_and_index(stream, gamma_grid=grid, N=args.horizon)
    config = {"command": "gauge", "family": args.family,
              "horizon": args.horizon}
    _emit(_json_doc(config, report.to_dict()), args.out)


def _cmd_random(args) -> None:
    E = as_ensemble(args.ensemble)
    ts = _floats(args.t_grid) if args.t_grid else [0.5, 0.9, 0.99, 1.01, 1.1, 2.0]
    orders = [int(x) for x in _floats(args.weyl_orders)] if args.weyl_orders else []
    report = mc_expected_cdf(E, args.n, ts, args.trials, args.seed,
                             weyl_orders=orders, workers=args.workers)
    flags = check_conditions(E)
    payload = report.to_dict()
    payload["conditions"] = {
        "log_moment_bounded": flags.log_moment_bounded,
        "uniformly_non_null": flags.uniformly_non_null,
        "iid": flags.iid,
        "szego_expected": flags.szego_expected,
    }
    config = {"command": "random", "ensemble": E.descriptor(), "n": args.n,
              "trials": args.trials, "seed": args.seed,
              "workers": args.workers}
    if args.format == "csv":
        lines = ["t,phi_hat,stderr"]
        for t, p, s in zip(report.t_grid, report.phi_hat, report.stderr):
            lines.append(f"{t:.17g},{p:.17g},{s:.17g}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_doc(config, payload), args.out)


def _cmd_universal(args) -> None:
    targets = parse_targets(args.targets)
    if args.steps is not None:
        targets = cycle_targets(targets, args.steps)
    state, reports = build_universal(targets, verify=not args.no_verify)
    payload = {
        "steps": [r.to_dict() for r in reports],
        "final_section_index": state.d,
        "final_degree": len(state.P.coeffs) - 1,
    }
    config = {"command": "universal", "targets": args.targets,
              "steps": len(targets), "verify": not args.no_verify}
    _emit(_json_doc(config, payload), args.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="szego", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", required=True,
                            help="series family, e.g. lacunary:2 or geometric")
        sp.add_argument("--out", default=None, help="write output to a file")

    sp = sub.add_parser("zeros", help="zeros of one polynomial section")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--format", choices=("json", "csv"), default="csv")
    sp.set_defaults(func=_cmd_zeros)

    sp = sub.add_parser("measure", help="radial zero measure of a section")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--t-grid", default=None)
    sp.set_defaults(func=_cmd_measure)

    sp = sub.add_parser("bounds", help="coefficient bound report for a section")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("gauge", help="window gauge and index estimates")
    common(sp)
    sp.add_argument("--horizon", type=int, default=1024)
    sp.add_argument("--grid", default=None,
                    help="comma separated gamma grid")
    sp.set_defaults(func=_cmd_gauge)

    sp = sub.add_parser("random", help="Monte Carlo zero statistics")
    common(sp, family=False)
    sp.add_argument("--ensemble", required=True,
                    help="e.g. gaussian_complex or bernoulli(0.5)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t-grid", default=None)
    sp.add_argument("--weyl-orders", default=None)
    sp.add_argument("--workers", type=int, default=_default_workers())
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=_cmd_random)

    sp = sub.add_parser("universal", help="run the universal construction")
    common(sp, family=False)
    sp.add_argument("--targets", required=True,
                    help='JSON list of radius lists, e.g. [["3/2","2"]]')
    sp.add_argument("--steps", type=int, default=None,
                    help="cycle the targets to this many steps")
    sp.add_argument("--no-verify", action="store_true")
    sp.set_defaults(func=_cmd_universal)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, VerificationError, CoefficientOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
