"""Power gaps ``(x+y)^p - x^p - y^p`` and ``(x+y+z)^p - x^p - y^p - z^p``.

Builds the Cauchy cofactor of ``K_p(t) = (t+1)^p - t^p - 1``, the normalized
quotients E2 and E3, the expansion of E3 in powers of ``b = z(x+y+z)`` and
Catalan's formula for the unnormalized trivariate quotient.  Every builder
verifies the divisibility and identity claims it relies on and raises
:class:`VerificationError` if one fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .invariance import AdequateMap, decompose, expand, is_invariant
from .multipoly import (
    MPoly,
    PolyContext,
    eval_z_zero,
    exact_div,
    permute_vars,
    substitute_var,
)

__all__ = [
    "XYZ",
    "T_CTX",
    "CauchyFactorization",
    "E3Expansion",
    "IdentityReport",
    "VerificationError",
    "catalan_check",
    "catalan_lhs",
    "catalan_rhs",
    "cauchy_factorization",
    "check_conjecture",
    "check_xy_identity",
    "coefficient_claims",
    "complete_homog",
    "e2_by_division",
    "e2_closed_form",
    "e3_alternative",
    "e3_by_division",
    "e3_expansion",
    "exponent_e",
    "granville_map",
    "homogenize",
    "is_prime",
    "kappa",
    "e3_generator",
    "power_gap2",
    "power_gap3",
]

XYZ = PolyContext(("x", "y", "z"))
T_CTX = PolyContext(("t",))

_x, _y, _z = XYZ.gens()
_t = T_CTX.var(0)


class VerificationError(ArithmeticError):
    """An identity that should hold exactly did not."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _require_prime(p):
    if not isinstance(p, int) or p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime greater than 3, got {p!r}")


def _verify(cond, message):
    if not cond:
        raise VerificationError(message)


def granville_map() -> AdequateMap:
    """``z -> -(x + y + z)`` on K[x, y, z]."""
    return AdequateMap(2, XYZ.field(-1), -(_x + _y))


def e3_generator() -> MPoly:
    """``z (x + y + z)``, the negative of the orbit product of :func:`granville_map`."""
    return _z * (_x + _y + _z)


# -- two variables ----------------------------------------------------------

def power_gap2(p: int) -> MPoly:
    """``(x+y)^p - x^p - y^p``."""
    _require_prime(p)
    return (_x + _y) ** p - _x ** p - _y ** p


def kappa(p: int) -> MPoly:
    """``K_p(t) = (t+1)^p - t^p - 1 = sum_{k=1}^{p-1} C(p,k) t^k``."""
    _require_prime(p)
    K = (_t + 1) ** p - _t ** p - 1
    _verify(K == sum((T_CTX.monomial((k,), comb(p, k)) for k in range(1, p)), T_CTX.zero()),
            f"K_{p} disagrees with its binomial expansion")
    return K


def exponent_e(p: int) -> int:
    """Multiplicity of ``t^2+t+1`` in ``K_p``: 1 when p = 5 mod 6, 2 when p = 1 mod 6."""
    _require_prime(p)
    return {5: 1, 1: 2}[p % 6]


@dataclass(frozen=True)
class CauchyFactorization:
    p: int
    e: int
    cauchy: MPoly

    @property
    def degree(self) -> int:
        return self.cauchy.total_degree()


def cauchy_factorization(p: int) -> CauchyFactorization:
    """Divide ``K_p`` by ``p t (t+1) (t^2+t+1)^e``; the quotient is ``C_p``."""
    e = exponent_e(p)
    K = kappa(p)
    divisor = _t * (_t + 1) * (_t ** 2 + _t + 1) ** e * p
    C = exact_div(K, divisor)
    _verify(C is not None, f"K_{p} is not divisible by {p} t (t+1) (t^2+t+1)^{e}")
    _verify(C.total_degree() == p - 3 - 2 * e, f"C_{p} has degree {C.total_degree()}")
    _verify(C.has_integer_coefficients(), f"C_{p} has non-integer coefficients")
    return CauchyFactorization(p, e, C)


def homogenize(C: MPoly, degree: int) -> MPoly:
    """``y^degree * C(x/y)`` for a polynomial in t, as an element of K[x, y, z]."""
    return MPoly(XYZ, {(k, degree - k, 0): c for (k,), c in C.terms.items()})


def e2_by_division(p: int) -> MPoly:
    """``((x+y)^p - x^p - y^p) / (p x y (x+y))``, checked against ``(x^2+xy+y^2)^e C_p(x, y)``."""
    E2 = exact_div(power_gap2(p), _x * _y * (_x + _y) * p)
    _verify(E2 is not None, f"F_{p} is not divisible by {p} x y (x+y)")
    _verify(E2.has_integer_coefficients(), f"E2 for p={p} has non-integer coefficients")
    cf = cauchy_factorization(p)
    _verify(E2 == (_x ** 2 + _x * _y + _y ** 2) ** cf.e * homogenize(cf.cauchy, cf.degree),
            f"E2 for p={p} differs from (x^2+xy+y^2)^e C_p(x,y)")
    return E2


def e2_closed_form(p: int) -> MPoly:
    """``sum_{k=1}^{p-2} (C(p-1,k) - (-1)^k)/p * x^(k-1) y^(p-k-2)``."""
    _require_prime(p)
    terms = {}
    for k in range(1, p - 1):
        num = comb(p - 1, k) - (-1) ** k
        _verify(num % p == 0, f"C({p - 1},{k}) - (-1)^{k} is not divisible by {p}")
        terms[(k - 1, p - k - 2, 0)] = XYZ.field(num // p)
    return MPoly(XYZ, {e: c for e, c in terms.items() if c})


# -- three variables --------------------------------------------------------

def power_gap3(p: int) -> MPoly:
    """``(x+y+z)^p - x^p - y^p - z^p``; vanishes on ``y=-x``, ``z=-y`` and ``z=-x``."""
    _require_prime(p)
    H = (_x + _y + _z) ** p - _x ** p - _y ** p - _z ** p
    _verify(all(c.rational() % p == 0 for c in H.terms.values()),
            f"H_{p} has a coefficient not divisible by {p}")
    for index, value in ((1, -_x), (2, -_y), (2, -_x)):
        _verify(substitute_var(H, index, value).is_zero(),
                f"H_{p} does not vanish at {XYZ.names[index]} = {value}")
    return H


_S3 = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]


def e3_by_division(p: int) -> MPoly:
    """``H_p / (p (x+y)(y+z)(z+x))`` with its integrality, symmetry and invariance checked."""
    E3 = exact_div(power_gap3(p), (_x + _y) * (_y + _z) * (_z + _x) * p)
    _verify(E3 is not None, f"H_{p} is not divisible by {p} (x+y)(y+z)(z+x)")
    _verify(E3.has_integer_coefficients(), f"E3 for p={p} has non-integer coefficients")
    for perm in _S3:
        _verify(permute_vars(E3, perm) == E3, f"E3 for p={p} is not symmetric under {perm}")
    _verify(is_invariant(E3, granville_map()), f"E3 for p={p} is not fixed by z -> -(x+y+z)")
    E2 = e2_by_division(p)
    _verify(eval_z_zero(E3) == E2, f"E3(x, y, 0) != E2 for p={p}")
    return E3


def e3_alternative(p: int) -> MPoly:
    """E3 from ``sum_k C(p,k+1)(x+y)^k z^(p-k-1) - (-1)^k x^k y^(p-k-1)`` over ``p(y+z)(z+x)``."""
    _require_prime(p)
    s = XYZ.zero()
    xy_power = XYZ.one()
    for k in range(p):
        s = s + xy_power * _z ** (p - k - 1) * comb(p, k + 1) - _x ** k * _y ** (p - k - 1) * (-1) ** k
        xy_power = xy_power * (_x + _y)
    E3 = exact_div(s, (_y + _z) * (_z + _x) * p)
    _verify(E3 is not None, f"alternative sum for p={p} is not divisible by {p}(y+z)(z+x)")
    _verify(E3 == e3_by_division(p), f"alternative E3 differs from the quotient for p={p}")
    return E3


@dataclass(frozen=True)
class E3Expansion:
    """``E3 = sum_j a_j b^(n-j)`` with ``b = z(x+y+z)``, ``a_0 = 1``, ``a_n = E2``."""

    p: int
    n: int
    coeffs: tuple

    def __getitem__(self, j) -> MPoly:
        return self.coeffs[j]


def e3_expansion(p: int) -> E3Expansion:
    E3 = e3_by_division(p)
    b = e3_generator()
    dec = decompose(E3, granville_map(), b)
    _verify(expand(dec) == E3, f"expansion of E3 for p={p} does not reproduce E3")
    n = (p - 3) // 2
    a = tuple(reversed(dec.coeffs))
    _verify(len(a) == n + 1, f"E3 for p={p} has degree {len(a) - 1} in b, expected {n}")
    _verify(a[0] == 1, f"leading coefficient a_0 = {a[0]} for p={p}")
    _verify(a[n] == e2_by_division(p), f"a_n != E2 for p={p}")
    _verify(all(c.is_free_of_z() for c in a), "an expansion coefficient involves z")
    return E3Expansion(p, n, a)


# -- correspondence checks (reported, not asserted) --------------------------

@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    lhs: MPoly
    rhs: MPoly

    @property
    def difference(self) -> MPoly:
        return self.lhs - self.rhs


def check_xy_identity(p: int, expansion: E3Expansion | None = None) -> IdentityReport:
    """``a_n + x y a_{n-1}`` against ``(x+y)^(p-3)``."""
    ex = expansion or e3_expansion(p)
    n = ex.n
    lhs = ex[n] + _x * _y * ex[n - 1]
    rhs = (_x + _y) ** (p - 3)
    return IdentityReport(lhs == rhs, lhs, rhs)


def check_conjecture(p: int, m_index: int, expansion: E3Expansion | None = None) -> IdentityReport:
    """``a_{n-m} + x y a_{n-m-1}`` against ``lc(a_{n-m}) (x+y)^(p-2m-3)``.

    ``lc`` is the leading coefficient in the canonical monomial order.
    """
    ex = expansion or e3_expansion(p)
    n = ex.n
    if not 0 <= m_index <= n - 1:
        raise ValueError(f"m_index must lie in [0, {n - 1}] for p={p}")
    a_top = ex[n - m_index]
    lhs = a_top + _x * _y * ex[n - m_index - 1]
    rhs = (_x + _y) ** (p - 2 * m_index - 3) * a_top.leading_coefficient()
    return IdentityReport(lhs == rhs, lhs, rhs)


def coefficient_claims(p: int, expansion: E3Expansion | None = None) -> dict:
    """First coefficient of ``a_{n-1}``, second coefficient of ``a_n`` and ``(p-3)/2``."""
    ex = expansion or e3_expansion(p)
    n = ex.n
    a_n_terms = ex[n].sorted_terms()
    first_prev = ex[n - 1].leading_coefficient()
    second_last = a_n_terms[1][1] if len(a_n_terms) > 1 else None
    return {
        "a_{n-1}^(1)": first_prev,
        "a_n^(2)": second_last,
        "(p-3)/2": Fraction(p - 3, 2),
        "first_equals_second": first_prev == second_last,
        "second_equals_half": second_last == Fraction(p - 3, 2),
    }


# -- Catalan ----------------------------------------------------------------

def complete_homog(m: int, power: int = 1) -> MPoly:
    """Sum of all degree-m monomials in x, y, z, evaluated at ``(x^power, y^power, z^power)``."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    one = XYZ.field.one
    return MPoly(XYZ, {(power * j, power * k, power * (m - j - k)): one
                       for j in range(m + 1) for k in range(m - j + 1)})


def _require_odd(n):
    if not isinstance(n, int) or n <= 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer greater than 3, got {n!r}")


def catalan_lhs(n: int) -> MPoly:
    """``((x+y+z)^n - x^n - y^n - z^n) / ((x+y)(y+z)(z+x))``, without any 1/n factor."""
    _require_odd(n)
    H = (_x + _y + _z) ** n - _x ** n - _y ** n - _z ** n
    q = exact_div(H, (_x + _y) * (_y + _z) * (_z + _x))
    _verify(q is not None, f"power gap of degree {n} is not divisible by (x+y)(y+z)(z+x)")
    return q


def catalan_rhs(n: int) -> MPoly:
    """``sum_{m=0}^{n-3} H_m P^(n-3-m) + 2 H_{(n-3)/2}(x^2, y^2, z^2)`` with ``P = x+y+z``."""
    _require_odd(n)
    P = _x + _y + _z
    acc = XYZ.zero()
    for m in range(n - 2):
        acc = acc * P + complete_homog(m)
    return acc + complete_homog((n - 3) // 2, power=2) * 2


def catalan_check(n: int) -> IdentityReport:
    lhs = catalan_lhs(n)
    rhs = catalan_rhs(n)
    return IdentityReport(lhs == rhs, lhs, rhs)
