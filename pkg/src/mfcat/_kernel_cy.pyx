# cython: language_level=3, boundscheck=False, wraparound=False
"""Sparse exact row reduction: compiled kernel.

Same algorithm and contract as _kernel_py; see that module for the
documentation.  The two must produce identical output on identical input.
"""

from fractions import Fraction
from math import gcd


def rref_rows(rows, ncols, rational):
    if rational:
        return _rref_qq(rows, ncols)
    return _rref_generic(rows, ncols)


cdef tuple _mul(tuple a, tuple b):
    an, ad = a
    bn, bd = b
    g1 = gcd(an, bd)
    g2 = gcd(bn, ad)
    if g1 > 1:
        an //= g1
        bd //= g1
    if g2 > 1:
        bn //= g2
        ad //= g2
    return (an * bn, ad * bd)


cdef tuple _add(tuple a, tuple b):
    an, ad = a
    bn, bd = b
    if ad == bd:
        n, d = an + bn, ad
    else:
        g = gcd(ad, bd)
        if g > 1:
            bdr = bd // g
            n = an * bdr + bn * (ad // g)
            d = ad * bdr
        else:
            n = an * bd + bn * ad
            d = ad * bd
    if n == 0:
        return (0, 1)
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return (n, d)


cdef void _axpy(dict r, dict src, fn, fd):
    cdef tuple f = (fn, fd)
    cdef tuple nv
    for c, v in src.items():
        cur = r.get(c)
        if cur is None:
            r[c] = _mul(v, f)
        else:
            nv = _add(cur, _mul(v, f))
            if nv[0] == 0:
                del r[c]
            else:
                r[c] = nv


def _rref_qq(rows, Py_ssize_t ncols):
    cdef list work = []
    cdef dict r, row
    cdef Py_ssize_t col, idx, i, j, target
    for raw in rows:
        r = {}
        for c, v in raw.items():
            if v:
                r[c] = (v.numerator, v.denominator)
        if r:
            work.append(r)
    cdef list pivots = []
    cdef list pivot_rows = []
    for col in range(ncols):
        target = -1
        for idx in range(len(work)):
            if col in <dict>work[idx]:
                target = idx
                break
        if target < 0:
            continue
        row = <dict>work.pop(target)
        pn, pd = row[col]
        if pn > 0:
            inv = (pd, pn)
        else:
            inv = (-pd, -pn)
        row = {c: _mul(v, inv) for c, v in row.items()}
        live = []
        for r in work:
            f = r.get(col)
            if f is not None:
                _axpy(r, row, -f[0], f[1])
            if r:
                live.append(r)
        work = live
        pivots.append(col)
        pivot_rows.append(row)
    for i in range(len(pivot_rows) - 1, 0, -1):
        col = pivots[i]
        row = <dict>pivot_rows[i]
        for j in range(i):
            f = (<dict>pivot_rows[j]).get(col)
            if f is not None:
                _axpy(<dict>pivot_rows[j], row, -f[0], f[1])
    out = [{c: Fraction(n, d) for c, (n, d) in (<dict>row2).items()} for row2 in pivot_rows]
    return out, pivots


cdef void _gen_axpy(dict r, dict src, f):
    for c, v in src.items():
        cur = r.get(c)
        nv = (cur + f * v) if cur is not None else f * v
        if nv:
            r[c] = nv
        elif cur is not None:
            del r[c]


def _rref_generic(rows, Py_ssize_t ncols):
    cdef list work = []
    cdef dict r, row
    cdef Py_ssize_t col, idx, i, j, target
    for raw in rows:
        r = {c: v for c, v in raw.items() if v}
        if r:
            work.append(r)
    cdef list pivots = []
    cdef list pivot_rows = []
    for col in range(ncols):
        target = -1
        for idx in range(len(work)):
            if col in <dict>work[idx]:
                target = idx
                break
        if target < 0:
            continue
        row = <dict>work.pop(target)
        piv = row[col]
        row = {c: v / piv for c, v in row.items()}
        live = []
        for r in work:
            f = r.get(col)
            if f is not None:
                _gen_axpy(r, row, -f)
            if r:
                live.append(r)
        work = live
        pivots.append(col)
        pivot_rows.append(row)
    for i in range(len(pivot_rows) - 1, 0, -1):
        col = pivots[i]
        row = <dict>pivot_rows[i]
        for j in range(i):
            f = (<dict>pivot_rows[j]).get(col)
            if f is not None:
                _gen_axpy(<dict>pivot_rows[j], row, -f)
    return pivot_rows, pivots
