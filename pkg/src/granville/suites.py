"""Verification suites behind ``granville suite``.

Each suite returns a list of :class:`Check` records; a suite passes when every
check does.  Random suites are driven by an explicit seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import classical as cl
from .exact_arith import CycloField
from .invariance import (
    Adequate,
    AdequateMap,
    Decomposition,
    Identity,
    NonconstantLeading,
    NonlinearInZ,
    NotInvariantError,
    TranslationLike,
    UnitNotRootOfUnity,
    apply_T,
    classify_map,
    coprimality_report,
    decompose,
    expand,
    invariant_generator,
    is_invariant,
    iterate_p,
    iterate_p_by_substitution,
    lemma1_witnesses,
)
from .expr_io import ExprContext, parse
from .multipoly import MPoly, degree_in_z
from .randgen import context, random_adequate_map, random_coefficients, random_invariant, random_x_poly

SUITES = ("cauchy", "granville", "catalan", "roundtrip", "lemmas", "classify")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if cl.is_prime(p)]


def _guard(result: SuiteResult, name: str, fn):
    """Run ``fn`` and record its outcome; verification errors become failures."""
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except (ArithmeticError, ValueError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    result.checks.append(Check(name, bool(ok), detail, time.perf_counter() - t))


# -- classical ------------------------------------------------------------

def suite_cauchy(max_p: int = 31) -> SuiteResult:
    res = SuiteResult("cauchy")
    for p in primes_between(5, max_p):
        def factor(p=p):
            cf = cl.cauchy_factorization(p)
            expected_e = 1 if p % 6 == 5 else 2
            rebuilt = cl._t * (cl._t + 1) * (cl._t ** 2 + cl._t + 1) ** cf.e * cf.cauchy * p
            ok = (cf.e == expected_e and cf.degree == p - 3 - 2 * cf.e
                  and cf.cauchy.has_integer_coefficients() and rebuilt == cl.kappa(p))
            return ok, f"e={cf.e} deg C_p={cf.degree}"

        def e2(p=p):
            cf = cl.cauchy_factorization(p)
            by_div = cl.e2_by_division(p)
            closed = cl.e2_closed_form(p)
            product = ((cl._x ** 2 + cl._x * cl._y + cl._y ** 2) ** cf.e
                       * cl.homogenize(cf.cauchy, cf.degree))
            return by_div == closed == product, f"{len(by_div.terms)} terms"

        def dehomog(p=p):
            # F_p(t*y, y) == y^p K_p(t), with t carried by the z slot
            t, y = cl._z, cl._y
            lhs = cl.substitute_var(cl.power_gap2(p), 0, t * y)
            K = cl.kappa(p)
            rhs = MPoly(cl.XYZ, {(0, p, k): c for (k,), c in K.terms.items()})
            return lhs == rhs, ""

        _guard(res, f"p={p} K_p = p t(t+1)(t^2+t+1)^e C_p", factor)
        _guard(res, f"p={p} E2 by division = closed form = (x^2+xy+y^2)^e C_p(x,y)", e2)
        _guard(res, f"p={p} F_p(ty, y) = y^p K_p(t)", dehomog)
    return res


S3 = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]


def suite_granville(max_p: int = 19) -> SuiteResult:
    res = SuiteResult("granville")
    gmap = cl.granville_map()
    for p in primes_between(5, max_p):
        def e3(p=p):
            E3 = cl.e3_by_division(p)
            ok = (E3.has_integer_coefficients()
                  and all(cl.permute_vars(E3, s) == E3 for s in S3)
                  and is_invariant(E3, gmap)
                  and cl.e3_alternative(p) == E3
                  and cl.eval_z_zero(E3) == cl.e2_by_division(p))
            return ok, f"{len(E3.terms)} terms"

        def expansion(p=p):
            ex = cl.e3_expansion(p)
            n = (p - 3) // 2
            dec = Decomposition(cl.e3_generator(), tuple(reversed(ex.coeffs)))
            ok = (ex.n == n and len(ex.coeffs) == n + 1 and ex[0] == 1
                  and ex[n] == cl.e2_by_division(p) and expand(dec) == cl.e3_by_division(p))
            return ok, f"n={n}"

        def xy(p=p):
            rep = cl.check_xy_identity(p)
            return rep.holds, ""

        _guard(res, f"p={p} E3 integral, symmetric, invariant, = alternative, E3(x,y,0) = E2", e3)
        _guard(res, f"p={p} E3 = sum a_j b^(n-j), a_0 = 1, a_n = E2", expansion)
        _guard(res, f"p={p} a_n + xy a_(n-1) = (x+y)^(p-3)", xy)
    if max_p >= 7:
        def spot():
            a1 = cl.e3_expansion(7)[1]
            expected = parse("2*x^2 + 3*x*y + 2*y^2", cl.XYZ)
            return a1 == expected, str(a1)
        _guard(res, "p=7 a_1 = 2x^2 + 3xy + 2y^2", spot)
    return res


def suite_catalan(ns=(5, 7, 9, 11, 13, 15)) -> SuiteResult:
    res = SuiteResult("catalan")
    for n in ns:
        _guard(res, f"n={n} Catalan identity", lambda n=n: (cl.catalan_check(n).holds, ""))
    return res


# -- invariance -------------------------------------------------------------

ROUNDTRIP_ORDERS = (1, 2, 3, 4, 6)


def suite_roundtrip(cases: int = 200, seed: int = 42) -> SuiteResult:
    """decompose(expand(G)) == G over random adequate maps."""
    res = SuiteResult("roundtrip")
    rng = random.Random(seed)
    passed = 0
    failures = []
    for i in range(cases):
        m = ROUNDTRIP_ORDERS[i % len(ROUNDTRIP_ORDERS)]
        n_x = rng.randint(1, 3)
        map_ = random_adequate_map(rng, m, n_x, r_deg=2)
        coeffs = random_coefficients(rng, map_.ctx, rng.randint(0, 4))
        b = invariant_generator(map_)
        F = expand(Decomposition(b, coeffs))
        try:
            ok = decompose(F, map_).coeffs == coeffs
        except ArithmeticError as exc:
            ok = False
            failures.append(f"case {i}: {exc}")
        if ok:
            passed += 1
        elif len(failures) < 5:
            failures.append(f"case {i}: m={m} n={n_x}")
    res.add(f"{passed}/{cases} round-trips (seed {seed})", passed == cases, "; ".join(failures))
    return res


def standard_maps() -> list[tuple[str, AdequateMap]]:
    """Hand-picked adequate maps covering m in {1, 2, 3, 4, 6}, with and without r."""
    out = []
    for label, names, M, text in [
        ("identity", "xz", 1, "z"),
        ("granville", "xyz", 1, "-(x+y+z)"),
        ("-z", "xz", 1, "-z"),
        ("w z + x (M=3)", "xz", 3, "w*z + x"),
        ("w z (M=3)", "xz", 3, "w*z"),
        ("w z + x*y (M=4)", "xyz", 4, "w*z + x*y"),
        ("w^3 z + x^2 (M=4)", "xz", 4, "w^3*z + x^2"),
        ("w z + x - y (M=6)", "xyz", 6, "w*z + x - y"),
        ("w^5 z (M=6)", "xyz", 6, "w^5*z"),
        ("(w - 1) z + 1/2 (M=6)", "xz", 6, "(w - 1)*z + 1/2"),
    ]:
        ctx = ExprContext(tuple(names), M)
        cls = classify_map(parse(text, ctx))
        if isinstance(cls, Identity):
            map_ = AdequateMap(1, ctx.field.one, ctx.zero())
        else:
            map_ = cls.map
        out.append((label, map_))
    return out


def suite_lemmas(seed: int = 42, per_map: int = 20, random_maps: int = 5) -> SuiteResult:
    res = SuiteResult("lemmas")
    rng = random.Random(seed)
    maps = standard_maps()
    for i in range(random_maps):
        m = (2, 3, 4, 6)[i % 4]
        maps.append((f"random #{i} (m={m})", random_adequate_map(rng, m, rng.randint(1, 3))))
    for label, map_ in maps:
        m = map_.m
        z = map_.ctx.z

        def orbit_closes():
            closed = iterate_p(map_, m)
            subst = iterate_p_by_substitution(map_, m)
            agree = all(iterate_p(map_, k) == iterate_p_by_substitution(map_, k) for k in range(m + 1))
            return closed == z and subst == z and agree, ""

        def generator():
            b = invariant_generator(map_)
            return is_invariant(b, map_) and degree_in_z(b) == m, ""

        def quotients():
            for _ in range(per_map):
                F, _coeffs = random_invariant(rng, map_)
                quotients = lemma1_witnesses(F, map_)
                W = F - cl.eval_z_zero(F)
                if any(q * iterate_p(map_, k) != W for k, q in enumerate(quotients)):
                    return False, "quotient times p_k differs from F - F(x,0)"
            return True, f"{per_map} invariants"

        def coprime():
            report = coprimality_report(map_)
            nonzero = all(not w.is_zero() for _, _, w in report)
            allzero = all(w.is_zero() for _, _, w in report)
            if m == 1:
                return report == [], "no pairs"
            return (nonzero if map_.r else allzero), f"{len(report)} pairs"

        def t_power_identity():
            F = random_x_poly(rng, map_.ctx, 2, 3) + z ** rng.randint(1, 3) * random_x_poly(rng, map_.ctx, 1, 2, nonzero=True)
            G = F
            for _ in range(m):
                G = apply_T(G, map_)
            return G == F, ""

        def subalgebra():
            F, _ = random_invariant(rng, map_)
            G, _ = random_invariant(rng, map_)
            return is_invariant(F + G, map_) and is_invariant(F * G, map_), ""

        def degree_count():
            F, coeffs = random_invariant(rng, map_)
            dec = decompose(F, map_)
            return len(dec.coeffs) == degree_in_z(F) // m + 1, f"{len(dec.coeffs)} coefficients"

        _guard(res, f"{label}: p_m = z (closed form and substitution)", orbit_closes)
        _guard(res, f"{label}: b invariant, degree m = {m}", generator)
        _guard(res, f"{label}: orbit quotients (F - F(x,0)) / p_k exist", quotients)
        _guard(res, f"{label}: coprimality witnesses nonzero iff r != 0", coprime)
        _guard(res, f"{label}: T^m = id", t_power_identity)
        _guard(res, f"{label}: invariants closed under + and *", subalgebra)
        _guard(res, f"{label}: number of b-coefficients = floor(d/m) + 1", degree_count)
        if not map_.r and m > 1:
            def zm_structure():
                ctx = map_.ctx
                inv = ctx.zero()
                for k in range(rng.randint(1, 3) + 1):
                    inv = inv + random_x_poly(rng, ctx, 2, 2) * z ** (k * m)
                bad = inv + random_x_poly(rng, ctx, 1, 2, nonzero=True) * z ** (m * rng.randint(0, 2) + rng.randint(1, m - 1))
                if not is_invariant(inv, map_):
                    return False, "polynomial in z^m not invariant"
                try:
                    decompose(bad, map_)
                except NotInvariantError:
                    return True, ""
                return False, "exponent not divisible by m was accepted"
            _guard(res, f"{label}: r = 0, polynomials in z^m only", zm_structure)
    return res


CLASSIFICATION_TABLE = [
    ("z^2", "xz", 1, NonlinearInZ),
    ("z + x", "xz", 1, TranslationLike),
    ("2*z", "xz", 1, UnitNotRootOfUnity),
    ("x*z", "xz", 1, NonconstantLeading),
    ("z", "xz", 1, Identity),
    ("-z", "xz", 1, Adequate),
    ("-(x+y+z)", "xyz", 1, Adequate),
    ("w*z + x", "xz", 3, Adequate),
]


def suite_classify() -> SuiteResult:
    res = SuiteResult("classify")
    for text, names, M, expected in CLASSIFICATION_TABLE:
        def one(text=text, names=names, M=M, expected=expected):
            got = classify_map(parse(text, ExprContext(tuple(names), M)))
            return isinstance(got, expected), got.name
        _guard(res, f"{text} (M={M}) -> {expected.name}", one)
    return res


def run_suite(name: str, max_p: int | None = None, cases: int = 200, seed: int = 42) -> SuiteResult:
    t = time.perf_counter()
    if name == "cauchy":
        res = suite_cauchy(31 if max_p is None else max_p)
    elif name == "granville":
        res = suite_granville(19 if max_p is None else max_p)
    elif name == "catalan":
        res = suite_catalan()
    elif name == "roundtrip":
        res = suite_roundtrip(cases, seed)
    elif name == "lemmas":
        res = suite_lemmas(seed)
    elif name == "classify":
        res = suite_classify()
    else:
        raise ValueError(f"unknown suite {name!r}")
    res.seconds = time.perf_counter() - t
    return res
