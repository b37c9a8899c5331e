from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from granville import parse
from granville import classical as cl
from granville.invariance import is_invariant
from granville.multipoly import eval_z_zero, permute_vars, substitute_var

from conftest import sympy_equal

XYZ = cl.XYZ
x, y, z, t = sympy.symbols("x y z t")
PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31]


def P(text, ctx=XYZ):
    return parse(text, ctx)


def test_power_gap2_examples():
    assert cl.power_gap2(5) == P("5*x^4*y + 10*x^3*y^2 + 10*x^2*y^3 + 5*x*y^4")
    F7 = cl.power_gap2(7)
    assert all(sum(e) == 7 for e in F7.terms)
    assert F7.coefficient((3, 4, 0)) == comb(7, 3)


def test_kappa_examples():
    T = cl.T_CTX
    assert cl.kappa(5) == P("5*t^4 + 10*t^3 + 10*t^2 + 5*t", T)
    for p in PRIMES:
        K = cl.kappa(p)
        assert K.evaluate([0]) == 0 and K.evaluate([-1]) == 0
        assert all(c.rational() % p == 0 for c in K.terms.values())


@pytest.mark.parametrize("p, e", [(5, 1), (7, 2), (11, 1), (13, 2), (17, 1), (19, 2)])
def test_exponent_e(p, e):
    assert cl.exponent_e(p) == e


@pytest.mark.parametrize("bad", [1, 2, 3, 4, 9, 15, 25, -7, 0])
def test_invalid_primes_are_rejected(bad):
    for fn in (cl.exponent_e, cl.cauchy_factorization, cl.e2_by_division, cl.e3_by_division,
               cl.e3_expansion, cl.power_gap3):
        with pytest.raises(ValueError):
            fn(bad)


def test_cauchy_examples():
    f5 = cl.cauchy_factorization(5)
    assert f5.e == 1 and f5.cauchy == 1
    f7 = cl.cauchy_factorization(7)
    assert f7.e == 2 and f7.cauchy == 1
    assert cl.cauchy_factorization(11).degree == 6


@pytest.mark.parametrize("p", PRIMES)
def test_cauchy_factorization_against_sympy(p):
    cf = cl.cauchy_factorization(p)
    K = sympy.expand((t + 1) ** p - t ** p - 1)
    quotient, rem = sympy.div(K, p * t * (t + 1) * (t ** 2 + t + 1) ** cf.e, t)
    assert rem == 0
    assert sympy_equal(cf.cauchy, quotient)
    assert cf.degree == p - 3 - 2 * cf.e
    assert cf.cauchy.has_integer_coefficients()
    # e is the exact multiplicity of t^2 + t + 1
    assert sympy.rem(quotient, t ** 2 + t + 1, t) != 0


@pytest.mark.parametrize("p", PRIMES)
def test_dehomogenization(p):
    lhs = substitute_var(cl.power_gap2(p), 0, P("z*y"))
    K = cl.kappa(p)
    rhs = sum((P(f"y^{p}*z^{k}") * c for (k,), c in K.terms.items()), XYZ.zero())
    assert lhs == rhs


def test_e2_examples():
    assert cl.e2_by_division(5) == P("x^2 + x*y + y^2")
    assert cl.e2_by_division(7) == P("(x^2 + x*y + y^2)^2")
    assert cl.e2_closed_form(5) == P("x^2 + x*y + y^2")


@pytest.mark.parametrize("p", PRIMES)
def test_e2_against_sympy(p):
    E2 = cl.e2_by_division(p)
    expected = sympy.cancel(((x + y) ** p - x ** p - y ** p) / (p * x * y * (x + y)))
    assert sympy_equal(E2, expected)
    assert all(sum(e) == p - 3 for e in E2.terms)
    assert cl.e2_closed_form(p) == E2
    cf = cl.cauchy_factorization(p)
    assert E2 == P("x^2 + x*y + y^2") ** cf.e * cl.homogenize(cf.cauchy, cf.degree)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_e2_closed_form_catalan_coefficients(p):
    # c_k = (C(p-1, k) - (-1)^k) / p is the coefficient of x^(p-2-k) y^(k-1)
    E2 = cl.e2_by_division(p)
    for k in range(1, p - 1):
        ck = Fraction(comb(p - 1, k) - (-1) ** k, p)
        assert E2.coefficient((p - 2 - k, k - 1, 0)) == ck


def test_power_gap3_examples():
    H5 = cl.power_gap3(5)
    assert H5.coefficient((1, 1, 3)) == factorial(5) // (factorial(1) * factorial(1) * factorial(3))
    assert H5.evaluate([1, 1, 1]) == 3 ** 5 - 3
    for p in (5, 7, 11):
        assert all(c.rational() % p == 0 for c in cl.power_gap3(p).terms.values())


def test_e3_examples():
    E35 = P("x^2 + y^2 + z^2 + x*y + y*z + z*x")
    assert cl.e3_by_division(5) == E35
    assert cl.e3_alternative(5) == E35
    E37 = cl.e3_by_division(7)
    assert E37.evaluate([1, 1, 1]) == Fraction(3 ** 7 - 3, 7 * 8) == 39
    assert eval_z_zero(E37) == P("(x^2 + x*y + y^2)^2")
    assert cl.e3_alternative(7) == E37


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_e3_against_sympy(p):
    expected = sympy.cancel(((x + y + z) ** p - x ** p - y ** p - z ** p)
                            / (p * (x + y) * (y + z) * (z + x)))
    assert sympy_equal(cl.e3_by_division(p), expected)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_e3_structure(p):
    E3 = cl.e3_by_division(p)
    assert E3.has_integer_coefficients()
    for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]:
        assert permute_vars(E3, perm) == E3
    assert is_invariant(E3, cl.granville_map())
    assert eval_z_zero(E3) == cl.e2_by_division(p)
    assert cl.e3_alternative(p) == E3
    # E3 - E2 is divisible by z
    assert all(e[2] >= 1 for e in (E3 - cl.e2_by_division(p)).terms)


def test_e3_expansion_examples():
    ex5 = cl.e3_expansion(5)
    assert ex5.n == 1 and list(ex5.coeffs) == [P("1"), P("x^2 + x*y + y^2")]
    ex7 = cl.e3_expansion(7)
    assert ex7.n == 2
    assert ex7[1] == P("2*x^2 + 3*x*y + 2*y^2")
    assert ex7[2] == P("(x^2 + x*y + y^2)^2")
    # spot check at (1,1,1), where b = 3: 9 + 3*7 + 9 = 39 = E3(1,1,1)
    b = cl.e3_generator().evaluate([1, 1, 1])
    total = sum(a.evaluate([1, 1, 1]) * b ** (2 - j) for j, a in enumerate(ex7.coeffs))
    assert b == 3 and ex7[1].evaluate([1, 1, 1]) == 7 and total == 39


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19])
def test_e3_expansion_reproduces_e3(p):
    ex = cl.e3_expansion(p)
    assert len(ex.coeffs) == (p - 3) // 2 + 1
    b = cl.e3_generator()
    total = sum((a * b ** (ex.n - j) for j, a in enumerate(ex.coeffs)), XYZ.zero())
    assert total == cl.e3_by_division(p)
    assert all(a.is_free_of_z() and a.has_integer_coefficients() for a in ex.coeffs)


def test_e3_expansion_against_sympy_p11():
    # independent expansion: substitute z^2 = b - (x+y) z and collect powers of b
    ex = cl.e3_expansion(11)
    bsym = sympy.Symbol("b")
    lead = [sympy.Poly(sympy.sympify(str(a).replace("^", "**")), x, y).LC() for a in ex.coeffs[1:]]
    assert lead == [5, 7, 4, 1]
    E3 = sum(sympy.sympify(str(a).replace("^", "**")) * bsym ** (ex.n - j)
             for j, a in enumerate(ex.coeffs))
    expected = sympy.cancel(((x + y + z) ** 11 - x ** 11 - y ** 11 - z ** 11)
                            / (11 * (x + y) * (y + z) * (z + x)))
    assert sympy.expand(E3.subs(bsym, z * (x + y + z)) - expected) == 0


def test_xy_identity_examples():
    assert cl.check_xy_identity(5).holds
    r7 = cl.check_xy_identity(7)
    assert r7.holds and r7.rhs == P("(x + y)^4")
    assert r7.lhs == P("(x^2 + x*y + y^2)^2 + x*y*(2*x^2 + 3*x*y + 2*y^2)")
    assert cl.check_xy_identity(11).holds
    assert cl.check_xy_identity(11).difference == 0


def test_conjecture_examples():
    r = cl.check_conjecture(5, 0)
    assert r.holds and cl.e3_expansion(5)[1].leading_coefficient() == 1
    assert cl.check_conjecture(7, 0).holds
    r = cl.check_conjecture(7, 1)
    assert r.holds and r.lhs == P("2*x^2 + 4*x*y + 2*y^2") == r.rhs
    with pytest.raises(ValueError):
        cl.check_conjecture(7, 2)


@pytest.mark.parametrize("p", [11, 13])
def test_conjecture_evidence(p):
    ex = cl.e3_expansion(p)
    assert all(cl.check_conjecture(p, k, ex).holds for k in range(ex.n))


def test_coefficient_claims():
    c = cl.coefficient_claims(7)
    assert c["a_{n-1}^(1)"] == 2 and c["a_n^(2)"] == 2 and c["(p-3)/2"] == 2
    assert c["first_equals_second"] and c["second_equals_half"]
    c = cl.coefficient_claims(13)
    assert c["(p-3)/2"] == 5 and c["a_n^(2)"] == 5 and c["first_equals_second"]


def test_complete_homog_examples():
    assert cl.complete_homog(0) == 1
    assert cl.complete_homog(1) == P("x + y + z")
    assert cl.complete_homog(2) == P("x^2 + y^2 + z^2 + x*y + y*z + z*x")
    assert cl.complete_homog(1, 2) == P("x^2 + y^2 + z^2")
    assert len(cl.complete_homog(4).terms) == comb(6, 2)


def test_catalan_examples():
    r = cl.catalan_check(5)
    assert r.holds and r.lhs == P("5*(x^2 + y^2 + z^2 + x*y + y*z + z*x)")
    assert r.lhs.evaluate([1, 1, 1]) == Fraction(240, 8) == 30
    assert cl.catalan_check(7).holds
    assert cl.catalan_check(9).holds


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 15])
def test_catalan_against_sympy(n):
    P_ = x + y + z
    H = lambda m, a, b, c: sum(a ** i * b ** j * c ** (m - i - j)
                               for i in range(m + 1) for j in range(m - i + 1))
    rhs = sum(H(m, x, y, z) * P_ ** (n - 3 - m) for m in range(n - 2)) \
        + 2 * H((n - 3) // 2, x ** 2, y ** 2, z ** 2)
    lhs = sympy.cancel((P_ ** n - x ** n - y ** n - z ** n) / ((x + y) * (y + z) * (z + x)))
    assert sympy.expand(lhs - rhs) == 0
    assert sympy_equal(cl.catalan_lhs(n), lhs)
    assert sympy_equal(cl.catalan_rhs(n), rhs)


@pytest.mark.parametrize("bad", [4, 3, 1, 0, -5, 6])
def test_catalan_rejects_bad_n(bad):
    with pytest.raises(ValueError):
        cl.catalan_check(bad)


def test_catalan_needs_unnormalized_quotient():
    # with the 1/n factor the identity would fail: 30 != 6 at (1,1,1) for n = 5
    assert cl.catalan_lhs(5).evaluate([1, 1, 1]) == 30
    assert cl.e3_by_division(5).evaluate([1, 1, 1]) == 6


def test_homogenize():
    C = parse("t^2 - 3*t + 1", cl.T_CTX)
    assert cl.homogenize(C, 2) == P("x^2 - 3*x*y + y^2")
    assert cl.homogenize(C, 3) == P("x^2*y - 3*x*y^2 + y^3")
