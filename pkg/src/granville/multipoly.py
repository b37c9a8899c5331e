"""Sparse multivariate polynomials in ``x_1..x_n, z`` over a cyclotomic field.

Exponent tuples follow the variable order of the :class:`PolyContext`; the
last slot is the distinguished variable ``z``.  Monomials are compared
graded-lexicographically: total degree first, then the exponent tuples
left to right, so earlier variables rank higher within a degree.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_arith import CycloField, CycloNum
from .kernels import add_terms, divexact_cyclo_terms, leading_monomial, mul_cyclo_terms

__all__ = [
    "ContextMismatchError",
    "PolyContext",
    "MPoly",
    "degree_in_z",
    "eval_z_zero",
    "exact_div",
    "linear_coprime_witness",
    "monomial_key",
    "permute_vars",
    "poly_pow",
    "substitute_var",
    "substitute_z",
    "z_coefficients",
]


class ContextMismatchError(ValueError):
    pass


def _mul(field: CycloField, a: dict, b: dict) -> dict:
    return mul_cyclo_terms(a, b, field.modulus, field.raw)


def monomial_key(e):
    return (sum(e), e)


class PolyContext:
    """Variable names (x-block then z) and the coefficient field."""

    __slots__ = ("names", "field")

    def __init__(self, names, field: CycloField | int = 1):
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if not isinstance(field, CycloField):
            field = CycloField(field)
        self.names = names
        self.field = field

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def n(self) -> int:
        """Number of x-variables."""
        return len(self.names) - 1

    def __eq__(self, other):
        return (isinstance(other, PolyContext) and self.names == other.names
                and self.field is other.field)

    def __hash__(self):
        return hash((self.names, self.field.M))

    def __repr__(self):
        return f"PolyContext({list(self.names)}, M={self.field.M})"

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    def const(self, c) -> "MPoly":
        c = self.field(c)
        return MPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name_or_index) -> "MPoly":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): self.field.one})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    @property
    def z(self) -> "MPoly":
        return self.var(self.nvars - 1)

    def monomial(self, exps, coeff=1) -> "MPoly":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector {exps} does not fit {self}")
        c = self.field(coeff)
        return MPoly(self, {exps: c} if c else {})


class MPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero CycloNums."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: PolyContext, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    # -- coercion -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, MPoly):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"{other.ctx} vs {self.ctx}")
            return other
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.ctx.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly(self.ctx, add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly(self.ctx, add_terms(self.terms, other.terms, self.ctx.field(-1)))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return MPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            c = self.ctx.field(other)
            if not c:
                return self.ctx.zero()
            return MPoly(self.ctx, {e: v * c for e, v in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return MPoly(self.ctx, _mul(self.ctx.field, self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return poly_pow(self, k)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            inv = 1 / self.ctx.field(other)
            return self * inv
        return NotImplemented

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.terms == self.ctx.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return leading_monomial(self.terms)

    def leading_coefficient(self) -> CycloNum:
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        zero = (0,) * self.ctx.nvars
        return all(e == zero for e in self.terms)

    def constant_value(self) -> CycloNum:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.ctx.nvars, self.ctx.field.zero)

    def is_free_of_z(self) -> bool:
        return all(e[-1] == 0 for e in self.terms)

    def has_integer_coefficients(self) -> bool:
        return all(c.is_integer() for c in self.terms.values())

    def coefficient(self, exps) -> CycloNum:
        return self.terms.get(tuple(exps), self.ctx.field.zero)

    def evaluate(self, values):
        """Evaluate at a point given as one value per variable."""
        field = self.ctx.field
        total = field.zero
        values = [field(v) for v in values]
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def __str__(self):
        from .expr_io import format_poly
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def poly_pow(F: MPoly, k: int) -> MPoly:
    if k < 0:
        raise ValueError("negative polynomial power")
    result = F.ctx.one()
    base = F
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def exact_div(F: MPoly, D: MPoly) -> MPoly | None:
    """``Q`` with ``F == D*Q``, or None when ``D`` does not divide ``F``."""
    D = F._lift(D)
    if D.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    field = F.ctx.field
    q = divexact_cyclo_terms(F.terms, D.terms, field.modulus, field.raw, CycloNum.inverse)
    return None if q is None else MPoly(F.ctx, q)


def z_coefficients(F: MPoly) -> list[MPoly]:
    """``[c_0, ..., c_d]`` with ``F = sum c_k z^k`` and every ``c_k`` free of z."""
    d = degree_in_z(F)
    buckets = [{} for _ in range(max(d, 0) + 1)]
    for e, c in F.terms.items():
        buckets[e[-1]][e[:-1] + (0,)] = c
    return [MPoly(F.ctx, b) for b in buckets]


def substitute_var(F: MPoly, index: int, G: MPoly) -> MPoly:
    """Replace variable ``index`` by ``G`` everywhere in ``F`` (Horner scheme)."""
    G = F._lift(G)
    buckets: dict[int, dict] = {}
    for e, c in F.terms.items():
        k = e[index]
        buckets.setdefault(k, {})[e[:index] + (0,) + e[index + 1:]] = c
    if not buckets:
        return F.ctx.zero()
    top = max(buckets)
    acc: dict = {}
    for k in range(top, -1, -1):
        if acc:
            acc = _mul(F.ctx.field, acc, G.terms)
        if k in buckets:
            acc = add_terms(acc, buckets[k])
    return MPoly(F.ctx, acc)


def substitute_z(F: MPoly, p: MPoly) -> MPoly:
    """``F(x, p(x, z))``."""
    return substitute_var(F, F.ctx.nvars - 1, p)


def degree_in_z(F: MPoly) -> int:
    """Largest power of z in F; -1 for the zero polynomial."""
    return max((e[-1] for e in F.terms), default=-1)


def eval_z_zero(F: MPoly) -> MPoly:
    return MPoly(F.ctx, {e: c for e, c in F.terms.items() if e[-1] == 0})


def permute_vars(F: MPoly, perm) -> MPoly:
    """Move the exponent of slot ``i`` to slot ``perm[i]``."""
    perm = tuple(perm)
    n = F.ctx.nvars
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} variable slots")
    out = {}
    for e, c in F.terms.items():
        new = [0] * n
        for i, k in enumerate(e):
            new[perm[i]] = k
        out[tuple(new)] = c
    return MPoly(F.ctx, out)


def linear_coprime_witness(P: MPoly, Q: MPoly) -> MPoly:
    """Resultant in z of ``a z + c`` and ``a' z + c'``, i.e. ``a c' - a' c``.

    Nonzero exactly when the two are coprime in K(x)[z].
    """
    Q = P._lift(Q)
    if degree_in_z(P) != 1 or degree_in_z(Q) != 1:
        raise ValueError("linear_coprime_witness needs polynomials of degree 1 in z")
    c, a = z_coefficients(P)
    c2, a2 = z_coefficients(Q)
    return a * c2 - a2 * c
