"""Substitution maps ``z -> p(x, z)`` and the polynomials they leave fixed.

``T`` sends ``F(x, z)`` to ``F(x, p(x, z))``.  When ``p = q z + r(x)`` with
``q`` a primitive m-th root of unity, ``T^m`` is the identity, the orbit of
``z`` is ``p_k = q^k z + (1 + q + ... + q^{k-1}) r`` for ``0 <= k < m``, and
every fixed polynomial is a polynomial in ``b = p_0 p_1 ... p_{m-1}`` with
coefficients free of ``z``.  :func:`decompose` finds those coefficients by
repeatedly stripping ``F(x, 0)`` and dividing by ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exact_arith import CycloNum, root_of_unity_order
from .expr_io import format_monomial, format_scalar
from .multipoly import (
    MPoly,
    degree_in_z,
    eval_z_zero,
    exact_div,
    linear_coprime_witness,
    substitute_z,
    z_coefficients,
)

__all__ = [
    "AdequateMap",
    "Adequate",
    "Classification",
    "Decomposition",
    "Identity",
    "NonconstantLeading",
    "NonlinearInZ",
    "TranslationLike",
    "UnitNotRootOfUnity",
    "InvarianceError",
    "NotInvariantError",
    "BadGeneratorError",
    "InternalDivisibilityFailure",
    "SubstMap",
    "adequate_map_of",
    "apply_T",
    "classify_map",
    "coprimality_report",
    "decompose",
    "expand",
    "first_difference",
    "invariant_generator",
    "is_invariant",
    "iterate_p",
    "iterate_p_by_substitution",
    "lemma1_witnesses",
    "orbit",
]


class InvarianceError(ArithmeticError):
    pass


class NotInvariantError(InvarianceError):
    def __init__(self, message, monomial=None, before=None, after=None):
        super().__init__(message)
        self.monomial = monomial
        self.before = before
        self.after = after


class BadGeneratorError(InvarianceError):
    pass


class InternalDivisibilityFailure(InvarianceError):
    pass


@dataclass(frozen=True)
class SubstMap:
    p: MPoly


@dataclass(frozen=True)
class AdequateMap:
    """Validated ``z -> q z + r(x)`` with ``q`` of exact multiplicative order ``m``."""

    m: int
    q: CycloNum
    r: MPoly

    def __post_init__(self):
        if root_of_unity_order(self.q) != self.m:
            raise ValueError(f"q must be a primitive {self.m}-th root of unity")
        if not self.r.is_free_of_z():
            raise ValueError("r must not involve z")
        if self.m == 1 and self.r:
            raise ValueError("q = 1 with r != 0 is a translation, not an adequate map")
        if self.q.field is not self.r.ctx.field:
            raise ValueError("q and r live in different fields")

    @property
    def ctx(self):
        return self.r.ctx

    @property
    def p(self) -> MPoly:
        return self.ctx.z * self.q + self.r

    def subst(self) -> SubstMap:
        return SubstMap(self.p)


# -- classification --------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """``p = z``: every polynomial is fixed."""

    name = "Identity"
    adequate = True


@dataclass(frozen=True)
class Adequate:
    map: AdequateMap
    name = "Adequate"
    adequate = True


@dataclass(frozen=True)
class NonlinearInZ:
    degree: int
    name = "NonlinearInZ"
    adequate = False


@dataclass(frozen=True)
class UnitNotRootOfUnity:
    q: CycloNum
    name = "UnitNotRootOfUnity"
    adequate = False


@dataclass(frozen=True)
class TranslationLike:
    r: MPoly
    name = "TranslationLike"
    adequate = False


@dataclass(frozen=True)
class NonconstantLeading:
    q: MPoly
    name = "NonconstantLeading"
    adequate = False


Classification = Identity | Adequate | NonlinearInZ | UnitNotRootOfUnity | TranslationLike | NonconstantLeading


def classify_map(p: MPoly) -> Classification:
    """Sort ``z -> p`` into the case that decides whether non-trivial invariants exist.

    Only :class:`Identity` and :class:`Adequate` admit invariants outside K[x].
    """
    d = degree_in_z(p)
    if d != 1:
        return NonlinearInZ(d)
    r, q = z_coefficients(p)
    if not q.is_constant():
        return NonconstantLeading(q)
    qc = q.constant_value()
    m = root_of_unity_order(qc)
    if m is None:
        return UnitNotRootOfUnity(qc)
    if m == 1:
        return TranslationLike(r) if r else Identity()
    return Adequate(AdequateMap(m, qc, r))


def adequate_map_of(p: MPoly) -> AdequateMap:
    """The AdequateMap for ``p``; raises ValueError if ``p`` is not adequate."""
    cls = classify_map(p)
    if isinstance(cls, Identity):
        return AdequateMap(1, p.ctx.field.one, p.ctx.zero())
    if isinstance(cls, Adequate):
        return cls.map
    raise ValueError(f"map is {cls.name}, not adequate")


# -- the endomorphism T ----------------------------------------------------

def apply_T(F: MPoly, map_: SubstMap | AdequateMap) -> MPoly:
    return substitute_z(F, map_.p)


def first_difference(F: MPoly, G: MPoly):
    """Largest monomial where ``F`` and ``G`` differ, or None."""
    diff = F - G
    if diff.is_zero():
        return None
    return diff.leading_monomial()


def is_invariant(F: MPoly, map_: SubstMap | AdequateMap) -> bool:
    return apply_T(F, map_) == F


def _require_invariant(F, map_):
    TF = apply_T(F, map_)
    mono = first_difference(TF, F)
    if mono is not None:
        before, after = F.coefficient(mono), TF.coefficient(mono)
        raise NotInvariantError(
            f"polynomial is not invariant: coefficient of {format_monomial(F.ctx.names, mono)} "
            f"is {format_scalar(before)} in F but {format_scalar(after)} in TF",
            mono, before, after)


def iterate_p(map_: AdequateMap, k: int) -> MPoly:
    """``p_k = T^k z = q^k z + (q^{k-1} + ... + 1) r``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    geometric = map_.ctx.field.zero
    power = map_.ctx.field.one
    for _ in range(k):
        geometric = geometric + power
        power = power * map_.q
    return map_.ctx.z * power + map_.r * geometric


def iterate_p_by_substitution(map_: AdequateMap, k: int) -> MPoly:
    """``T^k z`` computed by k successive substitutions (cross-check for :func:`iterate_p`)."""
    F = map_.ctx.z
    for _ in range(k):
        F = apply_T(F, map_)
    return F


def invariant_generator(map_: AdequateMap) -> MPoly:
    """``b = p_0 p_1 ... p_{m-1}``; fixed by T and of degree m in z."""
    b = map_.ctx.one()
    for k in range(map_.m):
        b = b * iterate_p(map_, k)
    if degree_in_z(b) != map_.m or not is_invariant(b, map_):
        raise InternalDivisibilityFailure("orbit product is not an invariant of degree m")
    return b


# -- decomposition ---------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """``F = sum(coeffs[j] * generator**j)``; coefficients are free of z."""

    generator: MPoly
    coeffs: tuple


def _check_generator(gen: MPoly, map_: AdequateMap, canonical: MPoly):
    if gen.ctx != canonical.ctx:
        raise BadGeneratorError("generator lives in a different polynomial context")
    if degree_in_z(gen) != map_.m:
        raise BadGeneratorError(f"generator must have degree {map_.m} in z")
    if not is_invariant(gen, map_):
        raise BadGeneratorError("generator is not invariant under the map")
    ratio = exact_div(gen, canonical)
    if ratio is None or not ratio.is_constant() or ratio.is_zero():
        raise BadGeneratorError("generator is not a constant multiple of the orbit product")


def decompose(F: MPoly, map_: AdequateMap, generator: MPoly | None = None) -> Decomposition:
    """Write an invariant ``F`` as a polynomial in the generator.

    Raises :class:`NotInvariantError` if ``T F != F``.
    """
    canonical = invariant_generator(map_)
    if generator is None:
        generator = canonical
    else:
        _check_generator(generator, map_, canonical)
    _require_invariant(F, map_)
    coeffs = []
    rest = F
    while rest:
        a0 = eval_z_zero(rest)
        coeffs.append(a0)
        quotient = exact_div(rest - a0, generator)
        if quotient is None:
            raise InternalDivisibilityFailure(
                "invariant polynomial minus its z = 0 part is not divisible by the generator")
        rest = quotient
    return Decomposition(generator, tuple(coeffs))


def expand(dec: Decomposition) -> MPoly:
    """``sum(coeffs[j] * generator**j)`` by Horner's rule."""
    ctx = dec.generator.ctx
    acc = ctx.zero()
    for c in reversed(dec.coeffs):
        acc = acc * dec.generator + c
    return acc


def lemma1_witnesses(F: MPoly, map_: AdequateMap) -> list[MPoly]:
    """Quotients ``(F - F(x, 0)) / p_k`` for ``k = 0 .. m-1``."""
    _require_invariant(F, map_)
    W = F - eval_z_zero(F)
    out = []
    for k in range(map_.m):
        q = exact_div(W, iterate_p(map_, k))
        if q is None:
            raise InternalDivisibilityFailure(f"p_{k} does not divide F - F(x, 0)")
        out.append(q)
    return out


def coprimality_report(map_: AdequateMap) -> list[tuple[int, int, MPoly]]:
    """``(j, k, witness)`` for each pair of orbit elements; witness 0 means a common factor."""
    ps = [iterate_p(map_, k) for k in range(map_.m)]
    return [(j, k, linear_coprime_witness(ps[j], ps[k])) for j, k in combinations(range(map_.m), 2)]


def orbit(map_: AdequateMap) -> list[MPoly]:
    return [iterate_p(map_, k) for k in range(map_.m)]
