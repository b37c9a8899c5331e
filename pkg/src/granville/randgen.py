"""Seeded random adequate maps and invariant polynomials for property runs."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .exact_arith import CycloField
from .invariance import AdequateMap, Decomposition, expand, invariant_generator
from .multipoly import MPoly, PolyContext

X_NAMES = ("x", "y", "u")


def context(n_x: int, M: int) -> PolyContext:
    return PolyContext(X_NAMES[:n_x] + ("z",), CycloField(M))


def random_scalar(rng: random.Random, field: CycloField, rational_only=False):
    coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3))]
    if not rational_only:
        coeffs += [Fraction(rng.randint(-2, 2)) if rng.random() < 0.4 else 0
                   for _ in range(field.degree - 1)]
    return field.from_poly(coeffs)


def random_x_poly(rng: random.Random, ctx: PolyContext, max_deg: int, max_terms: int,
                  nonzero=False) -> MPoly:
    """Random polynomial in the x-variables only."""
    n = ctx.n
    while True:
        terms = {}
        for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
            deg = rng.randint(0, max_deg)
            e = [0] * n
            for _ in range(deg):
                if n:
                    e[rng.randrange(n)] += 1
            c = random_scalar(rng, ctx.field)
            if c:
                terms[tuple(e) + (0,)] = c
        F = MPoly(ctx, terms)
        if F or not nonzero:
            return F


def random_adequate_map(rng: random.Random, m: int, n_x: int, r_deg: int = 2,
                        r_terms: int = 2) -> AdequateMap:
    """``z -> zeta_m^j z + r`` over Q(zeta_m) with ``gcd(j, m) = 1``."""
    ctx = context(n_x, m)
    if m == 1:
        return AdequateMap(1, ctx.field.one, ctx.zero())
    j = rng.choice([k for k in range(1, m) if gcd(k, m) == 1])
    q = ctx.field.root_of_unity(j)
    r = random_x_poly(rng, ctx, r_deg, r_terms)
    return AdequateMap(m, q, r)


def random_coefficients(rng: random.Random, ctx: PolyContext, deg_G: int, max_deg: int = 2,
                        max_terms: int = 2) -> tuple:
    """x-only coefficient list of length ``deg_G + 1`` with nonzero last entry."""
    coeffs = [random_x_poly(rng, ctx, max_deg, max_terms) for _ in range(deg_G)]
    coeffs.append(random_x_poly(rng, ctx, max_deg, max_terms, nonzero=True))
    return tuple(coeffs)


def random_invariant(rng: random.Random, map_: AdequateMap, max_deg_G: int = 3):
    """``(F, coeffs)`` with ``F = sum coeffs[j] b^j`` for the orbit product ``b``."""
    b = invariant_generator(map_)
    coeffs = random_coefficients(rng, map_.ctx, rng.randint(0, max_deg_G))
    return expand(Decomposition(b, coeffs)), coeffs
