"""Command-line interface.

Subcommands: generate, verify, classify, witness, enumerate, special,
eval.  All output is deterministic JSON (sorted keys).  Exit codes:
0 success, 1 an identity or verification failed, 2 usage error,
3 a requested object is undefined (vanishing denominator, unmatched
witness pattern, unsupported fixture).

FCMONO_ENUM_BUDGET sets the default enumeration budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from .classify import classify
from .cyclotomic import ParameterSet
from .models import (gamma2_generator_check, load_fixture,
                     moebius_action_check, segre_quadric_check,
                     verify_change_of_basis)
from .monodromy import (MonodromySystem, UndefinedIntersectionError,
                        basis_and_nu_checks, run_identity_checks)
from .numerics import (ConvergenceError, DomainError, SeriesConfig,
                       TorusQuadrature, fc_contour, fc_series)
from .serialize import dumps_canonical, system_to_json
from .structure import (build_reducible_witness, check_irr, enumerate_group,
                        generator_set, verify_reducible_witness)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDEFINED = 3


def _parse_params(args) -> ParameterSet:
    try:
        a = Fraction(args.a)
        b = Fraction(args.b)
        c = [Fraction(part) for part in args.c.split(",") if part]
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(_usage_error(f"bad rational parameter: {exc}"))
    if not c:
        raise SystemExit(_usage_error("need at least one c parameter"))
    return ParameterSet(a, b, c)


def _usage_error(msg) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _emit(obj, out_path=None):
    text = dumps_canonical(obj)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _transcript(checks):
    return [{"name": name, "pass": bool(ok), "detail": detail}
            for name, ok, detail in checks]


def cmd_generate(args) -> int:
    params = _parse_params(args)
    try:
        sys_ = MonodromySystem(params)
        doc = system_to_json(sys_)
    except UndefinedIntersectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    _emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _parse_params(args)
    try:
        sys_ = MonodromySystem(params)
        checks = run_identity_checks(sys_)
        if check_irr(params).mon_irreducible == "holds":
            checks += basis_and_nu_checks(sys_)
    except UndefinedIntersectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    ok = all(flag for _, flag, _ in checks)
    _emit({"params": {"a": args.a, "b": args.b, "c": args.c},
           "checks": _transcript(checks), "all_pass": ok}, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_classify(args) -> int:
    params = _parse_params(args)
    hint = "infinite_assumed" if args.assume_infinite else None
    report = classify(params, finiteness_hint=hint)
    _emit(report.to_json_dict(), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    params = _parse_params(args)
    try:
        sys_ = MonodromySystem(params)
        wit = build_reducible_witness(sys_)
    except UndefinedIntersectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    ok, checks = verify_reducible_witness(sys_, wit)
    doc = wit.to_json_dict()
    doc["verification"] = _transcript(checks)
    doc["all_pass"] = ok
    _emit(doc, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_enumerate(args) -> int:
    params = _parse_params(args)
    budget = args.budget or int(os.environ.get("FCMONO_ENUM_BUDGET", "10000"))
    try:
        sys_ = MonodromySystem(params)
        gens = generator_set(sys_, args.generators)
    except UndefinedIntersectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    res = enumerate_group(gens, budget, conductor=sys_.roots.conductor)
    doc = res.to_json_dict()
    doc["generators"] = args.generators
    doc["budget"] = budget
    _emit(doc, args.out)
    return EXIT_OK


def cmd_special(args) -> int:
    try:
        model = load_fixture(args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    checks = []
    if args.check in ("all", "cob"):
        _, part = verify_change_of_basis(model)
        checks += part
    if args.n == 2 and args.check in ("all", "segre"):
        checks.append(("segre_quadric", segre_quadric_check(model),
                       "z H' tz = 0 identically"))
    if args.n == 2 and args.check in ("all", "moebius"):
        _, part = moebius_action_check(model)
        checks += part
    if args.n == 2 and args.check in ("all", "gamma2"):
        _, part = gamma2_generator_check(model)
        checks += part
    ok = all(flag for _, flag, _ in checks)
    _emit({"n": args.n, "check": args.check,
           "checks": _transcript(checks), "all_pass": ok}, args.out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_eval(args) -> int:
    params = _parse_params(args)
    try:
        xs = [float(v) for v in args.x.split(",") if v]
    except ValueError as exc:
        return _usage_error(f"bad coordinate: {exc}")
    doc = {"x": xs}
    try:
        if args.method in ("series", "both"):
            cfg = SeriesConfig(max_total_degree=args.max_degree,
                               rel_tol=args.rel_tol)
            sv = fc_series(params, xs, cfg)
            doc["series"] = {"re": sv.value.real, "im": sv.value.imag,
                             "total_degree": sv.total_degree,
                             "last_term": sv.last_term}
        if args.method in ("contour", "both"):
            quad = TorusQuadrature(epsilon=args.eps,
                                   points_per_circle=args.points)
            cv = fc_contour(params, xs, quad)
            doc["contour"] = {"re": cv.value.real, "im": cv.value.imag,
                              "points_per_circle": cv.points_per_circle}
    except (DomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    if args.method == "both":
        doc["abs_difference"] = abs(
            complex(doc["series"]["re"], doc["series"]["im"])
            - complex(doc["contour"]["re"], doc["contour"]["im"]))
    _emit(doc, args.out)
    return EXIT_OK


def _add_param_flags(p):
    p.add_argument("--a", required=True, help="rational, e.g. 1/2")
    p.add_argument("--b", required=True, help="rational, e.g. 1/2")
    p.add_argument("--c", required=True,
                   help="comma-separated rationals, e.g. 1,1 or 1/7,1/11")
    p.add_argument("--out", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fcmono",
        description="Exact monodromy of the hypergeometric system E_C: "
                    "generation, verification, classification, numerics.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a system and emit JSON")
    _add_param_flags(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run the exact identity suite")
    _add_param_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="Zariski-closure report")
    _add_param_flags(p)
    p.add_argument("--assume-infinite", action="store_true",
                   help="record the infiniteness assumption")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="invariant-subspace witness for "
                                       "reducible reflection cases")
    _add_param_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("enumerate", help="breadth-first group closure")
    _add_param_flags(p)
    p.add_argument("--generators", choices=["monodromy", "reflections"],
                   default="monodromy")
    p.add_argument("--budget", type=int, default=None,
                   help="element budget (default FCMONO_ENUM_BUDGET or 10000)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("special", help="integer-model fixture checks")
    p.add_argument("--n", type=int, required=True, choices=[2, 3])
    p.add_argument("--check", default="all",
                   choices=["all", "cob", "segre", "moebius", "gamma2"])
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("eval", help="series / contour evaluation")
    _add_param_flags(p)
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.add_argument("--method", choices=["series", "contour", "both"],
                   default="both")
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--points", type=int, default=64)
    p.add_argument("--max-degree", type=int, default=400)
    p.add_argument("--rel-tol", type=float, default=1e-13)
    p.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
