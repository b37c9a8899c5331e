# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`granville._kernels_py`.

Same contracts; exponent arithmetic runs on C long buffers and the residue
loops are typed, while coefficients themselves stay Python objects.
"""

from heapq import heappop, heappush

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport free, malloc
from math import gcd

BACKEND = "cython"

cdef enum:
    MAXVARS = 64


cdef inline tuple _pack(long *buf, Py_ssize_t n):
    cdef tuple t = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = buf[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(t, i, v)
    return t


cdef inline void _unpack(tuple e, long *buf, Py_ssize_t n):
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <long>e[i]


cdef inline tuple _order_key(long *buf, Py_ssize_t n):
    cdef long tot = 0
    cdef Py_ssize_t i
    cdef long neg[MAXVARS]
    for i in range(n):
        tot += buf[i]
        neg[i] = -buf[i]
    return (-tot, _pack(neg, n))


def add_terms(dict a, dict b, scale=None):
    cdef dict out = dict(a)
    cdef object e, c, old, s
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


def leading_monomial(dict terms):
    return max(terms, key=lambda e: (sum(e), e))


def add_nums(tuple a, da, tuple b, db):
    cdef Py_ssize_t i, n = len(a)
    cdef tuple out = PyTuple_New(n)
    cdef object v
    if da == db:
        for i in range(n):
            v = a[i] + b[i]
            Py_INCREF(v)
            PyTuple_SET_ITEM(out, i, v)
        return out, da
    for i in range(n):
        v = a[i] * db + b[i] * da
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out, da * db


def mulmod_nums(tuple a, tuple b, tuple mod):
    return _mulmod(a, b, mod)


cdef tuple _mulmod(tuple a, tuple b, tuple mod):
    cdef Py_ssize_t deg = len(mod) - 1, i, j, k
    cdef list prod
    cdef object ai, bj, c, s
    if deg == 1:
        return (a[0] * b[0],)
    if not any(b[1:]):
        s = b[0]
        return tuple([c * s for c in a])
    if not any(a[1:]):
        s = a[0]
        return tuple([c * s for c in b])
    prod = [0] * (2 * deg - 1)
    for i in range(deg):
        ai = a[i]
        if ai:
            for j in range(deg):
                bj = b[j]
                if bj:
                    prod[i + j] = prod[i + j] + ai * bj
    for k in range(2 * deg - 2, deg - 1, -1):
        c = prod[k]
        if c:
            for j in range(deg):
                if mod[j]:
                    prod[k - deg + j] = prod[k - deg + j] - c * mod[j]
    return tuple(prod[:deg])


cdef inline tuple _add_raw(tuple an, object ad, tuple bn, object bd):
    cdef Py_ssize_t i, n = len(an)
    cdef tuple out = PyTuple_New(n)
    cdef object v, g, fa, fb
    if ad == bd:
        for i in range(n):
            v = an[i] + bn[i]
            Py_INCREF(v)
            PyTuple_SET_ITEM(out, i, v)
        return (out, ad)
    g = gcd(ad, bd)
    fa = bd // g
    fb = ad // g
    for i in range(n):
        v = an[i] * fa + bn[i] * fb
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return (out, ad * fa)


cdef inline tuple _reduce_raw(tuple n, object d):
    cdef object g = gcd(d, *n)
    if g == 1:
        return (n, d)
    return (tuple([i // g for i in n]), d // g)


cdef inline bint _nonzero(tuple n):
    cdef object v
    for v in n:
        if v:
            return True
    return False


cdef inline tuple _neg(tuple n):
    return tuple([-i for i in n])


def mul_cyclo_terms(dict a, dict b, tuple mod, make):
    cdef dict out = {}
    cdef Py_ssize_t n, nb, i, k
    cdef bint scalar = len(mod) == 2
    cdef list bkeys, bnums, bdens
    cdef long *bexp
    cdef long ea[MAXVARS]
    cdef long buf[MAXVARS]
    cdef tuple key, an, bn, pn, old
    cdef object ea_t, ca, ad, pd
    if len(a) < len(b):
        a, b = b, a
    if not a or not b:
        return out
    n = len(next(iter(a)))
    if n > MAXVARS:
        raise ValueError("too many variables for the compiled kernel")
    nb = len(b)
    bkeys = list(b.keys())
    bnums = [c.nums for c in b.values()]
    bdens = [c.den for c in b.values()]
    bexp = <long *>malloc(sizeof(long) * (nb * n + 1))
    try:
        for k in range(nb):
            _unpack(<tuple>bkeys[k], bexp + k * n, n)
        for ea_t, ca in a.items():
            _unpack(<tuple>ea_t, ea, n)
            an = ca.nums
            ad = ca.den
            for k in range(nb):
                for i in range(n):
                    buf[i] = ea[i] + bexp[k * n + i]
                key = _pack(buf, n)
                bn = <tuple>bnums[k]
                if scalar:
                    pn = (an[0] * bn[0],)
                else:
                    pn = _mulmod(an, bn, mod)
                pd = ad * bdens[k]
                old = out.get(key)
                if old is None:
                    out[key] = (pn, pd)
                elif scalar and old[1] == pd:
                    out[key] = (((<tuple>old[0])[0] + pn[0],), pd)
                else:
                    out[key] = _add_raw(<tuple>old[0], old[1], pn, pd)
    finally:
        free(bexp)
    return {e: make(v[0], v[1]) for e, v in out.items() if _nonzero(<tuple>v[0])}


def divexact_cyclo_terms(dict f, dict d, tuple mod, make, inverse):
    cdef Py_ssize_t n, nt, i, k
    cdef long *texp
    cdef long lm[MAXVARS]
    cdef long buf[MAXVARS]
    cdef long qe[MAXVARS]
    cdef dict rem, quot
    cdef set queued
    cdef list heap, tail_n, tail_d, tail_e
    cdef tuple key, mono, e_t, qe_t, lm_t, c, old, qr, sr, in_, qn, pn
    cdef object e, cv, inv, id_, qd, pd
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_t = leading_monomial(d)
    inv = inverse(d[lm_t])
    in_ = inv.nums
    id_ = inv.den
    n = len(lm_t)
    if n > MAXVARS:
        raise ValueError("too many variables for the compiled kernel")
    tail_e = []
    tail_n = []
    tail_d = []
    for e, cv in d.items():
        if e != lm_t:
            tail_e.append(e)
            tail_n.append(cv.nums)
            tail_d.append(cv.den)
    nt = len(tail_e)
    rem = {e: (cv.nums, cv.den) for e, cv in f.items()}
    quot = {}
    queued = set(rem)
    heap = []
    texp = <long *>malloc(sizeof(long) * (nt * n + 1))
    try:
        _unpack(lm_t, lm, n)
        for k in range(nt):
            _unpack(<tuple>tail_e[k], texp + k * n, n)
        for e in rem:
            _unpack(<tuple>e, buf, n)
            heap.append(_order_key(buf, n))
        heap.sort()
        while heap:
            key = heappop(heap)
            for i in range(n):
                buf[i] = -(<long>(<tuple>key[1])[i])
            mono = _pack(buf, n)
            queued.discard(mono)
            c = rem.pop(mono, None)
            if c is None:
                continue
            for i in range(n):
                qe[i] = buf[i] - lm[i]
                if qe[i] < 0:
                    return None
            qe_t = _pack(qe, n)
            qr = _reduce_raw(_mulmod(<tuple>c[0], in_, mod), c[1] * id_)
            qn = <tuple>qr[0]
            qd = qr[1]
            quot[qe_t] = qr
            for k in range(nt):
                for i in range(n):
                    buf[i] = qe[i] + texp[k * n + i]
                e_t = _pack(buf, n)
                pn = _neg(_mulmod(qn, <tuple>tail_n[k], mod))
                pd = qd * tail_d[k]
                old = rem.get(e_t)
                if old is None:
                    rem[e_t] = (pn, pd)
                else:
                    sr = _add_raw(<tuple>old[0], old[1], pn, pd)
                    sr = _reduce_raw(<tuple>sr[0], sr[1])
                    if _nonzero(<tuple>sr[0]):
                        rem[e_t] = sr
                    else:
                        del rem[e_t]
                        continue
                if e_t not in queued:
                    queued.add(e_t)
                    heappush(heap, _order_key(buf, n))
    finally:
        free(texp)
    return {e: make(v[0], v[1]) for e, v in quot.items()}
