"""Pure-Python hot kernels.

A term map is a ``dict`` from exponent tuples to nonzero CycloNum
coefficients.  Products and quotients work on the raw ``(nums, den)`` pairs
and build coefficient objects only for the final terms.
:mod:`granville._kernels` mirrors these functions in Cython; both must agree
exactly.
"""

from heapq import heappop, heappush
from math import gcd

BACKEND = "python"


def add_terms(a, b, scale=None):
    """``a + scale * b`` (``scale=None`` means 1)."""
    out = dict(a)
    for e, c in b.items():
        if scale is not None:
            c = c * scale
        old = out.get(e)
        if old is None:
            out[e] = c
        else:
            s = old + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _order_key(e):
    # heap pops the smallest entry; negate for decreasing graded-lex order
    return (-sum(e), tuple([-i for i in e]))


def leading_monomial(terms):
    return max(terms, key=lambda e: (sum(e), e))


def add_nums(a, da, b, db):
    """``a/da + b/db`` for numerator tuples over a common denominator (unreduced)."""
    if da == db:
        return tuple([i + j for i, j in zip(a, b)]), da
    return tuple([i * db + j * da for i, j in zip(a, b)]), da * db


def mulmod_nums(a, b, mod):
    """Integer product of two residues modulo the monic ``mod`` (lowest degree first)."""
    deg = len(mod) - 1
    if deg == 1:
        return (a[0] * b[0],)
    if not any(b[1:]):
        s = b[0]
        return tuple([c * s for c in a])
    if not any(a[1:]):
        s = a[0]
        return tuple([c * s for c in b])
    prod = [0] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for k in range(2 * deg - 2, deg - 1, -1):
        c = prod[k]
        if c:
            for j in range(deg):
                if mod[j]:
                    prod[k - deg + j] -= c * mod[j]
    return tuple(prod[:deg])


def _add_raw(an, ad, bn, bd):
    if ad == bd:
        return tuple([i + j for i, j in zip(an, bn)]), ad
    g = gcd(ad, bd)
    fa, fb = bd // g, ad // g
    return tuple([i * fa + j * fb for i, j in zip(an, bn)]), ad * fa


def _reduce_raw(n, d):
    g = gcd(d, *n)
    if g == 1:
        return n, d
    return tuple([i // g for i in n]), d // g


def mul_cyclo_terms(a, b, mod, make):
    """Product of two term maps, accumulating raw numerators per monomial.

    ``mod`` is the field modulus; ``make(nums, den)`` builds the reduced
    coefficient object.
    """
    if len(a) < len(b):
        a, b = b, a
    braw = [(eb, cb.nums, cb.den) for eb, cb in b.items()]
    scalar = len(mod) == 2
    out = {}
    get = out.get
    for ea, ca in a.items():
        an, ad = ca.nums, ca.den
        for eb, bn, bd in braw:
            e = tuple([i + j for i, j in zip(ea, eb)])
            pn = (an[0] * bn[0],) if scalar else mulmod_nums(an, bn, mod)
            pd = ad * bd
            old = get(e)
            if old is None:
                out[e] = (pn, pd)
            elif scalar and old[1] == pd:
                out[e] = ((old[0][0] + pn[0],), pd)
            else:
                out[e] = _add_raw(old[0], old[1], pn, pd)
    return {e: make(n, d) for e, (n, d) in out.items() if any(n)}


def divexact_cyclo_terms(f, d, mod, make, inverse):
    """Quotient ``f / d`` of term maps, or None when ``d`` does not divide ``f``.

    Reduces by the leading term of ``d`` in decreasing monomial order and
    stops at the first term the leading monomial of ``d`` does not divide;
    a single divisor is its own Groebner basis, so that term could never be
    cancelled.  ``inverse(c)`` returns the field inverse of a coefficient.
    """
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    lm = leading_monomial(d)
    inv = inverse(d[lm])
    in_, id_ = inv.nums, inv.den
    tail = [(e, c.nums, c.den) for e, c in d.items() if e != lm]
    rem = {e: (c.nums, c.den) for e, c in f.items()}
    heap = [_order_key(e) for e in rem]
    heap.sort()
    queued = set(rem)
    quot = {}
    while heap:
        key = heappop(heap)
        mono = tuple([-i for i in key[1]])
        queued.discard(mono)
        c = rem.pop(mono, None)
        if c is None:
            continue
        qe = tuple([i - j for i, j in zip(mono, lm)])
        for i in qe:
            if i < 0:
                return None
        qn, qd = _reduce_raw(mulmod_nums(c[0], in_, mod), c[1] * id_)
        quot[qe] = (qn, qd)
        for de, dn, dd in tail:
            e = tuple([i + j for i, j in zip(qe, de)])
            pn = tuple([-i for i in mulmod_nums(qn, dn, mod)])
            pd = qd * dd
            old = rem.get(e)
            if old is None:
                rem[e] = (pn, pd)
            else:
                sn, sd = _reduce_raw(*_add_raw(old[0], old[1], pn, pd))
                if any(sn):
                    rem[e] = (sn, sd)
                else:
                    del rem[e]
                    continue
            if e not in queued:
                queued.add(e)
                heappush(heap, _order_key(e))
    return {e: make(n, d) for e, (n, d) in quot.items()}
