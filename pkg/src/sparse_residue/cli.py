"""Command-line front end.

    sparse-residue residue problem.json [--mode per-monomial|whole-polytope]
                                        [--no-restrict-jacobian] [--emit-matrix FILE]
    sparse-residue mixed-volume | interior-points | newton | toric-jacobian problem.json
    sparse-residue delta0 problem.json [--target i,j,...]
    sparse-residue interpolate | verify | euler-jacobi problem.json

Results go to stdout as one JSON report; logs go to stderr.  Every package
error exits with its own code (see :mod:`sparse_residue.errors`).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .errors import ResidueError, SchemaError
from .exact import RatFunc
from .geometry import interior_lattice_points, mixed_volume
from .grammar import ratfunc_to_json
from .io import ProblemFile, coeff_json, dumps, laurent_json, load_problem, number_json
from .laurent import LaurentPolynomial, toric_jacobian

log = logging.getLogger("sparse_residue")


def _value_json(x):
    if isinstance(x, RatFunc):
        return ratfunc_to_json(x)
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        return {"num": str(x.numerator), "den": str(x.denominator)}
    return number_json(complex(x))


def _g(problem: ProblemFile) -> LaurentPolynomial:
    if problem.g is None:
        raise SchemaError("this command needs 'g'", "/g")
    return problem.g


def _roots(problem: ProblemFile, sys_num, warnings: List[str]):
    from .oracle import solve_system

    if problem.roots is not None:
        return problem.roots
    warnings.append(f"roots computed by the built-in solver (best effort, n={sys_num.n})")
    return solve_system(sys_num)


def cmd_residue(problem, args, decisions, warnings):
    from .residue import global_residue

    sys_ = problem.sparse_system()
    res = global_residue(
        sys_,
        _g(problem),
        delta0=problem.delta0,
        mode=args.mode,
        restrict_jacobian=not args.no_restrict_jacobian,
    )
    decisions["mode"] = res.mode
    decisions["restrict_jacobian"] = res.restrict_jacobian
    if res.delta0 is not None:
        decisions["delta0"] = res.delta0.to_json()
    else:
        decisions["delta0"] = [
            {"exp": list(e), "delta0": p.delta0.to_json()} for e, _, p in res.parts
        ]
    if args.emit_matrix:
        if res.linear_system is None:
            raise SchemaError("--emit-matrix needs a single linear system (one monomial or whole-polytope mode)", "/g")
        with open(args.emit_matrix, "w", encoding="utf-8") as fh:
            json.dump(res.linear_system.to_json(), fh, indent=1)
            fh.write("\n")
        decisions["matrix_file"] = args.emit_matrix
    return {"residue": _value_json(res.residue), "c": _value_json(res.c), "mixed_volume": res.mv}


def cmd_mixed_volume(problem, args, decisions, warnings):
    return {"mixed_volume": mixed_volume([f.newton_polytope() for f in problem.system])}


def cmd_interior_points(problem, args, decisions, warnings):
    delta = problem.sparse_system().delta
    pts = interior_lattice_points(delta)
    return {"delta": delta.to_json(), "count": len(pts), "interior_points": [list(p) for p in pts]}


def cmd_newton(problem, args, decisions, warnings):
    out = {"newton": [f.newton_polytope().to_json(with_facets=True) for f in problem.system]}
    if problem.g is not None and problem.g.terms:
        out["g"] = problem.g.newton_polytope().to_json(with_facets=True)
    return out


def cmd_toric_jacobian(problem, args, decisions, warnings):
    J = toric_jacobian(problem.sparse_system())
    return {"jacobian": laurent_json(J)}


def cmd_delta0(problem, args, decisions, warnings):
    from .delta0 import choose_delta0_report

    sys_ = problem.sparse_system()
    if args.target:
        targets = [tuple(int(v) for v in t.split(",")) for t in args.target]
    else:
        targets = list(_g(problem).support())
    return choose_delta0_report(sys_.delta, targets).to_json()


def cmd_interpolate(problem, args, decisions, warnings):
    from .oracle import sparse_interpolate

    sys_num = problem.numeric_system()
    roots = _roots(problem, sys_num, warnings)
    if problem.phi is None:
        raise SchemaError("interpolate needs 'phi'", "/phi")
    res = sparse_interpolate(sys_num, roots, list(problem.phi))
    return {
        "g": laurent_json(res.g),
        "h": laurent_json(res.h),
        "c": coeff_json(res.c),
        "mixed_volume": res.mv,
        "residual": res.residual,
    }


def _numeric_value(x):
    if isinstance(x, RatFunc):
        return complex(float(x.constant_value()))
    return complex(x)


def cmd_verify(problem, args, decisions, warnings):
    from .exact import eval_at_point
    from .oracle import RESIDUE_RTOL, residue_root_sum
    from .residue import global_residue

    g = _g(problem)
    exact = global_residue(problem.sparse_system(), g, delta0=problem.delta0).residue
    if problem.params:
        if problem.assignment is None:
            raise SchemaError("verify needs an 'assignment' for the parameters", "/assignment")
        engine = eval_at_point(exact, problem.assignment)
    else:
        engine = exact
    sys_num = problem.numeric_system()
    roots = _roots(problem, sys_num, warnings)
    g_num = g
    if g.kind == "ratfunc":
        from .laurent import substitute_params

        g_num = substitute_params(g, problem.assignment)
    oracle = residue_root_sum(sys_num, g_num, roots)
    ev = _numeric_value(engine)
    err = abs(ev - oracle) / max(1.0, abs(ev))
    agree = err <= RESIDUE_RTOL
    if not agree:
        warnings.append(f"engine and oracle disagree (relative error {err:.3g})")
    return {
        "residue": _value_json(exact),
        "engine_value": number_json(ev),
        "oracle_value": number_json(oracle),
        "relative_error": err,
        "agree": agree,
        "roots": len(roots),
    }


def cmd_euler_jacobi(problem, args, decisions, warnings):
    from .oracle import euler_jacobi_check

    sys_num = problem.numeric_system()
    roots = _roots(problem, sys_num, warnings)
    if args.use_g:
        g = _g(problem)
        if g.kind == "ratfunc":
            from .laurent import substitute_params

            g = substitute_params(g, problem.assignment)
        checks = [("g", g)]
    else:
        checks = [(list(p), LaurentPolynomial.monomial(p)) for p in interior_lattice_points(sys_num.delta)]
    out = [{"h": label, "residual": euler_jacobi_check(sys_num, roots, h)} for label, h in checks]
    return {"checks": out, "max_residual": max((c["residual"] for c in out), default=0.0)}


COMMANDS = {
    "residue": cmd_residue,
    "mixed-volume": cmd_mixed_volume,
    "interior-points": cmd_interior_points,
    "newton": cmd_newton,
    "toric-jacobian": cmd_toric_jacobian,
    "delta0": cmd_delta0,
    "interpolate": cmd_interpolate,
    "verify": cmd_verify,
    "euler-jacobi": cmd_euler_jacobi,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sparse-residue", description="Exact toric global residues of sparse systems.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("problem", help="problem file (JSON)")
        if name == "residue":
            p.add_argument("--mode", choices=("per-monomial", "whole-polytope"), default="per-monomial")
            p.add_argument("--no-restrict-jacobian", action="store_true",
                           help="use the full toric Jacobian in the last column")
            p.add_argument("--emit-matrix", metavar="FILE", help="write the assembled matrix as JSON")
        if name == "euler-jacobi":
            p.add_argument("--use-g", action="store_true",
                           help="check g (must be interior-supported) instead of every interior monomial")
        if name == "delta0":
            p.add_argument("--target", action="append", help="target exponent, comma separated (repeatable)")
    return ap


def run(argv: Optional[List[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    report = {"command": args.command, "problem": args.problem}
    start = time.perf_counter()
    decisions: dict = {}
    warnings: List[str] = []
    code = 0
    try:
        problem = load_problem(args.problem)
        report["result"] = COMMANDS[args.command](problem, args, decisions, warnings)
    except ResidueError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "path", None):
            report["error"]["path"] = exc.path
        code = exc.exit_code
    except OSError as exc:
        log.error("%s", exc)
        report["error"] = {"type": "OSError", "message": str(exc)}
        code = 2
    report["decisions"] = decisions
    report["warnings"] = warnings
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    for w in warnings:
        log.warning("%s", w)
    stdout.write(dumps(report) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
