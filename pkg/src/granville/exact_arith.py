"""Exact scalars: rationals and elements of cyclotomic fields Q(zeta_M).

Rationals are :class:`fractions.Fraction`, which already keeps the canonical
form (positive denominator, reduced, zero is 0/1).  A field element is the
residue ``c_0 + c_1 w + ... + c_{phi-1} w^{phi-1}`` modulo the M-th
cyclotomic polynomial, ``w = zeta_M``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, partial
from math import gcd

from .kernels import add_nums, mulmod_nums

Rational = Fraction

__all__ = [
    "Rational",
    "CycloField",
    "CycloNum",
    "FieldMismatchError",
    "cyclotomic_polynomial",
    "root_of_unity_order",
]


class FieldMismatchError(ValueError):
    """Raised when combining elements of two different cyclotomic fields."""


# -- dense univariate helpers, lowest degree first ---------------------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _udivmod(a, b):
    """Quotient and remainder of dense polynomials over Q (b nonzero)."""
    a = [Fraction(c) for c in a]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] / lead
        quot[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] -= c * b[j]
    return _trim(quot), _trim(a[:db])


def _usub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_M, lowest degree first.

    Computed as ``(w^M - 1) / prod(Phi_d for d | M, d < M)`` by exact division.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if not isinstance(M, int) or M < 1:
        raise ValueError(f"cyclotomic index must be a positive integer, got {M!r}")
    num = [-1] + [0] * (M - 1) + [1]
    den = [1]
    for d in range(1, M):
        if M % d == 0:
            den = _umul(den, list(cyclotomic_polynomial(d)))
    quot, rem = _udivmod(num, den)
    if rem:
        raise ArithmeticError(f"w^{M} - 1 not divisible by the lower cyclotomic factors")
    return tuple(int(c) for c in quot)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CycloField:
    """The field Q(zeta_M); ``M == 1`` (and ``M == 2``) is plain Q."""

    __slots__ = ("M", "modulus", "degree", "raw", "_zero", "_one")

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, M: int = 1):
        field = cls._cache.get(M)
        if field is None:
            modulus = cyclotomic_polynomial(M)
            field = super().__new__(cls)
            field.M = M
            field.modulus = modulus
            field.degree = len(modulus) - 1
            field.raw = partial(CycloNum._make, field)
            field._zero = None
            field._one = None
            cls._cache[M] = field
        return field

    def __reduce__(self):
        return (CycloField, (self.M,))

    def __repr__(self):
        return f"CycloField({self.M})"

    @property
    def zero(self) -> "CycloNum":
        if self._zero is None:
            self._zero = CycloNum(self, (Fraction(0),) * self.degree)
        return self._zero

    @property
    def one(self) -> "CycloNum":
        if self._one is None:
            self._one = self(1)
        return self._one

    @property
    def gen(self) -> "CycloNum":
        """zeta_M itself (for M <= 2 this is the rational 1 or -1)."""
        return self.from_poly([0, 1])

    def __call__(self, value) -> "CycloNum":
        if isinstance(value, CycloNum):
            if value.field is not self:
                raise FieldMismatchError(f"{value.field} element used in {self}")
            return value
        c = [Fraction(0)] * self.degree
        c[0] = Fraction(value)
        return CycloNum(self, tuple(c))

    def from_poly(self, coeffs) -> "CycloNum":
        """Reduce a polynomial in w (lowest degree first) modulo Phi_M."""
        coeffs = _trim([Fraction(c) for c in coeffs])
        if len(coeffs) > self.degree:
            _, coeffs = _udivmod(coeffs, list(self.modulus))
        coeffs = list(coeffs) + [Fraction(0)] * (self.degree - len(coeffs))
        return CycloNum(self, tuple(coeffs))

    def root_of_unity(self, k: int) -> "CycloNum":
        """zeta_M ** k."""
        return self.gen ** (k % self.M) if self.M > 1 else self.one


class CycloNum:
    """Immutable element of a :class:`CycloField`.

    Stored as integer numerators over one positive common denominator, reduced
    so that ``gcd(den, *nums) == 1``; :attr:`coeffs` gives the fraction view.
    """

    __slots__ = ("field", "nums", "den", "_hash")

    def __init__(self, field: CycloField, coeffs: tuple):
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        self.field = field
        self.nums = tuple(c.numerator * (den // c.denominator) for c in coeffs)
        self.den = den
        self._hash = None

    @classmethod
    def _make(cls, field, nums, den):
        g = gcd(den, *nums)
        if g != 1:
            nums = tuple([n // g for n in nums])
            den //= g
        self = object.__new__(cls)
        self.field = field
        self.nums = nums
        self.den = den
        self._hash = None
        return self

    @property
    def coeffs(self) -> tuple:
        d = self.den
        return tuple(Fraction(n, d) for n in self.nums)

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.field is not self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        nums, den = add_nums(self.nums, self.den, other.nums, other.den)
        return CycloNum._make(self.field, nums, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        nums, den = add_nums(self.nums, self.den, tuple([-n for n in other.nums]), other.den)
        return CycloNum._make(self.field, nums, den)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return CycloNum._make(self.field, tuple([-n for n in self.nums]), self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        nums = mulmod_nums(self.nums, other.nums, self.field.modulus)
        return CycloNum._make(self.field, nums, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_M."""
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if not any(self.nums[1:]):
            n = self.nums[0]
            sign = -1 if n < 0 else 1
            nums = (sign * self.den,) + (0,) * (self.field.degree - 1)
            return CycloNum._make(self.field, nums, abs(n))
        r0, r1 = [Fraction(c) for c in self.field.modulus], _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _udivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _usub(s0, _umul(q, s1))
        # r1 is a nonzero constant since Phi_M is irreducible
        c = r1[0]
        return self.field.from_poly([s / c for s in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self):
        return any(self.nums)

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            return (self.field is other.field and self.den == other.den
                    and self.nums == other.nums)
        if isinstance(other, (int, Fraction)):
            return not any(self.nums[1:]) and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.nums[1:]):
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.field.M, self.nums, self.den))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def is_integer(self) -> bool:
        return self.den == 1 and not any(self.nums[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def __repr__(self):
        return f"CycloNum({self.field.M}, {[str(c) for c in self.coeffs]})"


def root_of_unity_order(a: CycloNum) -> int | None:
    """Least ``k >= 1`` with ``a**k == 1``, or None when ``a`` is no root of unity.

    Every root of unity in Q(zeta_M) has order dividing lcm(2, M), so that is
    the search bound.
    """
    bound = _lcm(2, a.field.M)
    power = a
    for k in range(1, bound + 1):
        if power == 1:
            return k
        power = power * a
    return None
