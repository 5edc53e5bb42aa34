"""Sparse exact row reduction: pure-Python kernel.

Rows are dicts mapping column index -> nonzero coefficient.  The rational
path represents coefficients as normalized (num, den) pairs of Python ints,
avoiding Fraction's per-operation overhead inside the elimination loop;
results convert back to Fraction at the end.  The compiled kernel
(_kernel_cy.pyx) implements the same algorithm and both must stay in
lockstep: callers rely on the (unique) reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref_rows(rows, ncols, rational):
    """Reduced row echelon form of a sparse matrix.

    rows: list of dicts {col: coeff}; coefficients are Fractions when
    rational is true, otherwise any field elements supporting +,-,*,/.
    Returns (reduced nonzero rows in pivot order, pivot column list).
    """
    if rational:
        return _rref_qq(rows, ncols)
    return _rref_generic(rows, ncols)


def _mul(a, b):
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


def _add(a, b):
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


def _axpy(r, src, fn, fd):
    # r += (fn/fd) * src, dropping entries that cancel to zero
    f = (fn, fd)
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


def _rref_qq(rows, ncols):
    work = []
    for row in rows:
        r = {}
        for c, v in row.items():
            if v:
                r[c] = (v.numerator, v.denominator)
        if r:
            work.append(r)
    pivots = []
    pivot_rows = []
    for col in range(ncols):
        target = -1
        for idx in range(len(work)):
            if col in work[idx]:
                target = idx
                break
        if target < 0:
            continue
        row = work.pop(target)
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
        row = pivot_rows[i]
        for j in range(i):
            f = pivot_rows[j].get(col)
            if f is not None:
                _axpy(pivot_rows[j], row, -f[0], f[1])
    out = [{c: Fraction(n, d) for c, (n, d) in row.items()} for row in pivot_rows]
    return out, pivots


def _gen_axpy(r, src, f):
    # r += f * src over a generic field
    for c, v in src.items():
        cur = r.get(c)
        nv = (cur + f * v) if cur is not None else f * v
        if nv:
            r[c] = nv
        elif cur is not None:
            del r[c]


def _rref_generic(rows, ncols):
    work = []
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        if r:
            work.append(r)
    pivots = []
    pivot_rows = []
    for col in range(ncols):
        target = -1
        for idx in range(len(work)):
            if col in work[idx]:
                target = idx
                break
        if target < 0:
            continue
        row = work.pop(target)
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
        row = pivot_rows[i]
        for j in range(i):
            f = pivot_rows[j].get(col)
            if f is not None:
                _gen_axpy(pivot_rows[j], row, -f)
    return pivot_rows, pivots
