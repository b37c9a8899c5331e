"""Command-line front end.

Exit codes: 0 success, 1 mathematical verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classical as cl
from .exact_arith import CycloField, CycloNum
from .expr_io import ExprContext, ParseError, format_monomial, format_poly, format_scalar, parse
from .invariance import (
    Adequate,
    BadGeneratorError,
    Identity,
    NonconstantLeading,
    NonlinearInZ,
    NotInvariantError,
    TranslationLike,
    UnitNotRootOfUnity,
    adequate_map_of,
    classify_map,
    coprimality_report,
    decompose,
    expand,
    invariant_generator,
    orbit,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input that is not a parse error: wrong variable list, invalid p or n, ..."""


class Failure(Exception):
    """A verification failed; carries the JSON payload to report."""

    def __init__(self, message, data=None, lines=()):
        super().__init__(message)
        self.data = data or {}
        self.lines = list(lines)


def _scalar(v) -> str:
    if isinstance(v, CycloNum):
        return format_scalar(v)
    if isinstance(v, (int, Fraction)):
        return format_scalar(CycloField(1)(v))
    return str(v)


def _context(args, needs_z=True):
    names = tuple(n.strip() for n in args.vars.split(","))
    if not names or any(not n for n in names):
        raise UsageError(f"bad variable list {args.vars!r}")
    if needs_z and names[-1] != "z":
        raise UsageError("the variable list must end with z")
    if args.field < 1:
        raise UsageError("--field must be at least 1")
    try:
        return ExprContext(names, args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- commands -----------------------------------------------------------------

_MESSAGES = {
    Identity: "T is the identity; every polynomial is invariant",
    NonlinearInZ: "p is not linear in z; B = K[x]",
    UnitNotRootOfUnity: "q is not a root of unity; B = K[x]",
    TranslationLike: "q = 1 and r != 0; B = K[x]",
    NonconstantLeading: "q depends on x; B = K[x]",
}


def cmd_classify(args):
    ctx = _context(args)
    p = parse(args.map, ctx)
    cls = classify_map(p)
    data = {"map": format_poly(p), "variant": cls.name, "adequate": cls.adequate}
    lines = [f"map: z -> {format_poly(p)}", f"variant: {cls.name}"]
    if isinstance(cls, Adequate):
        map_ = cls.map
        b = invariant_generator(map_)
        report = coprimality_report(map_)
        data["message"] = f"m = {map_.m}; B = K[x][b]"
        data["m"] = map_.m
        data["q"] = _scalar(map_.q)
        data["r"] = format_poly(map_.r)
        data["orbit"] = [format_poly(pk) for pk in orbit(map_)]
        data["b"] = format_poly(b)
        data["coprimality"] = [
            {"j": j, "k": k, "witness": format_poly(w), "coprime": bool(w)} for j, k, w in report
        ]
        lines.append(data["message"])
        lines.append(f"q = {data['q']}, r = {data['r']}")
        lines.extend(f"p_{k} = {s}" for k, s in enumerate(data["orbit"]))
        lines.append(f"b = {data['b']}")
        lines.extend(f"p_{d['j']}, p_{d['k']}: witness {d['witness']} "
                     f"({'coprime' if d['coprime'] else 'common factor'})" for d in data["coprimality"])
    else:
        data["message"] = _MESSAGES[type(cls)]
        if isinstance(cls, NonlinearInZ):
            data["degree_in_z"] = cls.degree
        elif isinstance(cls, UnitNotRootOfUnity):
            data["q"] = _scalar(cls.q)
        elif isinstance(cls, TranslationLike):
            data["r"] = format_poly(cls.r)
        elif isinstance(cls, NonconstantLeading):
            data["q"] = format_poly(cls.q)
        lines.append(data["message"])
    return data, lines


def cmd_decompose(args):
    ctx = _context(args)
    p = parse(args.map, ctx)
    F = parse(args.poly, ctx)
    gen = parse(args.generator, ctx) if args.generator else None
    try:
        map_ = adequate_map_of(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        dec = decompose(F, map_, gen)
    except BadGeneratorError as exc:
        raise UsageError(str(exc)) from exc
    except NotInvariantError as exc:
        raise Failure(str(exc), {
            "error": "NotInvariant",
            "monomial": format_monomial(ctx.names, exc.monomial),
            "coefficient_in_F": _scalar(exc.before),
            "coefficient_in_TF": _scalar(exc.after),
        }) from exc
    verified = expand(dec) == F
    data = {
        "map": format_poly(p),
        "poly": format_poly(F),
        "generator": format_poly(dec.generator),
        "indexing": "ascending: coefficients[j] multiplies generator^j",
        "coefficients": [format_poly(c) for c in dec.coeffs],
        "verified": verified,
    }
    lines = [f"generator b = {data['generator']}"]
    lines.extend(f"b^{j}: {c}" for j, c in enumerate(data["coefficients"]))
    lines.append(f"expand(G) == F: {verified}")
    if not verified:
        raise Failure("expansion does not reproduce the input", data, lines)
    return data, lines


def cmd_fermat(args):
    p = args.p
    if not cl.is_prime(p) or p <= 3:
        raise UsageError(f"p = {p} must be a prime greater than 3")
    cf = cl.cauchy_factorization(p)
    E2 = cl.e2_by_division(p)
    ex = cl.e3_expansion(p)
    n = ex.n
    xy = cl.check_xy_identity(p, ex)
    conj = [cl.check_conjecture(p, k, ex) for k in range(n)]
    claims = cl.coefficient_claims(p, ex)
    data = {"p": p, "e": cf.e, "C_p": format_poly(cf.cauchy), "E2": format_poly(E2)}
    if args.e3:
        data["E3"] = format_poly(cl.e3_by_division(p))
    data["generator"] = format_poly(cl.e3_generator())
    data["n"] = n
    data["indexing"] = "descending: a_j multiplies b^(n-j)"
    data["a"] = [{"label": f"a_{j}", "value": format_poly(a)} for j, a in enumerate(ex.coeffs)]
    data["xy_identity"] = {"holds": xy.holds, "lhs": format_poly(xy.lhs), "rhs": format_poly(xy.rhs)}
    data["conjecture"] = [
        {"m": k, "holds": r.holds, "lhs": format_poly(r.lhs), "rhs": format_poly(r.rhs)}
        for k, r in enumerate(conj)
    ]
    data["coefficient_claims"] = {
        k: (v if isinstance(v, bool) else None if v is None else _scalar(v)) for k, v in claims.items()
    }
    lines = [f"p = {p}, e = {cf.e}", f"C_p = {data['C_p']}", f"E2 = {data['E2']}"]
    if args.e3:
        lines.append(f"E3 = {data['E3']}")
    lines.append(f"E3 = sum a_j b^(n-j), b = {data['generator']}, n = {n}")
    lines.extend(f"{a['label']} = {a['value']}" for a in data["a"])
    lines.append(f"a_n + x*y*a_(n-1) = (x + y)^(p-3): {xy.holds}")
    lines.extend(f"conjecture m={c['m']}: {c['holds']}" for c in data["conjecture"])
    lines.extend(f"{k}: {v}" for k, v in data["coefficient_claims"].items())
    if not xy.holds:
        raise Failure("a_n + x*y*a_(n-1) != (x + y)^(p-3)", data, lines)
    return data, lines


def cmd_catalan(args):
    n = args.n
    if n <= 3 or n % 2 == 0:
        raise UsageError(f"n = {n} must be odd and greater than 3")
    rep = cl.catalan_check(n)
    data = {"n": n, "lhs": format_poly(rep.lhs), "rhs": format_poly(rep.rhs), "equal": rep.holds}
    lines = [f"lhs = {data['lhs']}", f"rhs = {data['rhs']}", "equal" if rep.holds else "unequal"]
    if not rep.holds:
        raise Failure("Catalan identity fails", data, lines)
    return data, lines


def cmd_suite(args):
    names = SUITES if args.name == "all" else (args.name,)
    if args.cases < 1:
        raise UsageError("--cases must be positive")
    results = [run_suite(s, max_p=args.max_p, cases=args.cases, seed=args.seed) for s in names]
    data = {"suites": [
        {"suite": r.suite, "passed": r.passed,
         "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks]}
        for r in results
    ]}
    data["passed"] = all(r.passed for r in results)
    lines = []
    for r in results:
        for c in r.checks:
            tail = f" [{c.detail}]" if c.detail else ""
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {r.suite}: {c.name}{tail} ({c.seconds:.3f}s)")
        lines.append(f"{r.suite}: {'PASS' if r.passed else 'FAIL'} "
                     f"({sum(c.passed for c in r.checks)}/{len(r.checks)} checks, {r.seconds:.2f}s)")
    if not data["passed"]:
        raise Failure("suite failed", data, lines)
    return data, lines


# -- argument handling --------------------------------------------------------

def _common(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--vars", default=d("x,y,z"), help="comma-separated variable names, z last")
    parser.add_argument("--field", type=int, default=d(1), metavar="M",
                        help="coefficient field Q(zeta_M); w denotes zeta_M")
    parser.add_argument("--json", action="store_true", default=d(False), help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="granville", description=__doc__.splitlines()[0])
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify the substitution z -> MAP")
    p.add_argument("map")
    _common(p, True)

    p = sub.add_parser("decompose", help="write an invariant POLY as a polynomial in b")
    p.add_argument("map")
    p.add_argument("poly")
    p.add_argument("--generator", help="alternative generator (a constant multiple of b)")
    _common(p, True)

    p = sub.add_parser("fermat", help="power-gap pipeline for a prime p")
    p.add_argument("p", type=int)
    p.add_argument("--e3", action="store_true", help="also print E3 itself")
    _common(p, True)

    p = sub.add_parser("catalan", help="check the Catalan identity for odd n")
    p.add_argument("n", type=int)
    _common(p, True)

    p = sub.add_parser("suite", help="run verification suites")
    p.add_argument("name", choices=SUITES + ("all",))
    p.add_argument("--max-p", type=int, default=None, dest="max_p",
                   help="largest prime (defaults: cauchy 31, granville 19)")
    p.add_argument("--cases", type=int, default=200, help="round-trip cases")
    p.add_argument("--seed", type=int, default=42)
    _common(p, True)
    return parser


def _shield_negatives(argv):
    # "-(x+y+z)" or "-z" are expressions, not options
    out = []
    for tok in argv:
        if tok.startswith("-") and tok not in ("-h", "--") and not tok.startswith("--"):
            tok = " " + tok
        out.append(tok)
    return out


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "fermat": cmd_fermat,
    "catalan": cmd_catalan,
    "suite": cmd_suite,
}


def _emit(args, status, data, lines, out):
    if args.json:
        out.write(json.dumps({"command": args.command, "status": status, "data": data},
                             indent=2, ensure_ascii=False) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_shield_negatives(argv))
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        data, lines = COMMANDS[args.command](args)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        _emit(args, "error", {"error": "ParseError", "message": str(exc)}, [], out)
        return EXIT_USAGE
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        _emit(args, "error", {"error": "UsageError", "message": str(exc)}, [], out)
        return EXIT_USAGE
    except Failure as exc:
        err.write(f"failed: {exc}\n")
        _emit(args, "fail", exc.data, exc.lines, out)
        return EXIT_FAIL
    except cl.VerificationError as exc:
        err.write(f"verification failed: {exc}\n")
        _emit(args, "fail", {"error": "VerificationError", "message": str(exc)}, [], out)
        return EXIT_FAIL
    _emit(args, "ok", data, lines, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
