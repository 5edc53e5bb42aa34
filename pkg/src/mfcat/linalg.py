"""Exact sparse linear algebra over the rationals or a prime field.

Thin wrappers around a row-reduction kernel.  Two interchangeable kernels
exist: a compiled one (_kernel_cy, built from the bundled .pyx) and a pure
Python one (_kernel_py).  The compiled kernel is preferred when importable;
set MFCAT_PURE=1 in the environment to force the pure kernel, e.g. to rule
the extension out when debugging.

Matrices are lists of sparse rows, each row a dict {column: coefficient}.
Coefficients live in a field object from mfcat.fields.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("MFCAT_PURE") == "1":
    _kernel = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel_cy as _kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _kernel = _kernel_py
        BACKEND = "python"


def set_backend(name):
    """Switch kernels at runtime ('python' or 'cython').  Benchmark helper."""
    global _kernel, BACKEND
    if name == "python":
        _kernel = _kernel_py
        BACKEND = "python"
    elif name == "cython":
        from . import _kernel_cy  # raises ImportError if not built

        _kernel = _kernel_cy
        BACKEND = "cython"
    else:
        raise ValueError("unknown backend %r" % (name,))


def rref(rows, ncols, field):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    return _kernel.rref_rows(rows, ncols, field.rational)


def rank(rows, ncols, field):
    _, pivots = rref(rows, ncols, field)
    return len(pivots)


def nullspace(rows, ncols, field):
    """Basis of the kernel as sparse column vectors {index: value}.

    One basis vector per free column, with that free coordinate set to 1.
    The basis is deterministic: free columns in increasing order.
    """
    red, pivots = rref(rows, ncols, field)
    pivot_set = set(pivots)
    one = field.one
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: one}
        for row, pcol in zip(red, pivots):
            v = row.get(free)
            if v is not None:
                vec[pcol] = -v
        basis.append(vec)
    return basis


def solve(rows, rhs, ncols, field):
    """One solution of the sparse system rows * x = rhs, or None.

    rhs is a list aligned with rows.  Free variables are set to zero, so
    the answer is deterministic.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[ncols] = b
        aug.append(r)
    red, pivots = rref(aug, ncols + 1, field)
    sol = {}
    for row, pcol in zip(red, pivots):
        if pcol == ncols:
            return None  # a row reduced to 0 = 1
        v = row.get(ncols)
        if v is not None:
            sol[pcol] = v
    return sol


def in_row_span(rows, vec, ncols, field):
    """Whether the sparse vector lies in the row span of rows."""
    red, pivots = rref(rows, ncols, field)
    r = {c: v for c, v in vec.items() if v}
    for row, pcol in zip(red, pivots):
        f = r.get(pcol)
        if f is not None:
            del r[pcol]
            for c, v in row.items():
                if c == pcol:
                    continue
                cur = r.get(c)
                nv = (cur - f * v) if cur is not None else -f * v
                if nv:
                    r[c] = nv
                elif cur is not None:
                    del r[c]
    return not r


def feasible_nonneg(rows, rhs):
    """Solve rows * x = rhs with x >= 0 over the rationals, exactly.

    rows: dense list of lists of Fractions, rhs: list of Fractions.
    Returns a list of Fractions (one per column) or None when infeasible.
    Phase-1 simplex with Bland's rule, which cannot cycle, so this always
    terminates and a None answer is a certificate of infeasibility.
    """
    from fractions import Fraction

    m = len(rows)
    n = len(rows[0]) if m else 0
    # tableau with artificial basis; make rhs nonnegative first
    tab = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        tab.append(row + [b])
    basis = list(range(n, n + m))  # artificial variable per row
    # objective: minimize sum of artificials; reduced costs via row sums
    cost = [Fraction(0)] * (n + 1)
    for i in range(m):
        for j in range(n):
            cost[j] -= tab[i][j]
        cost[n] -= tab[i][n]
    while True:
        enter = -1
        for j in range(n):  # Bland: first improving column
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][n] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            break  # unbounded direction; cannot happen with artificials
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if cost[enter]:
            f = cost[enter]
            cost = [v - f * w for v, w in zip(cost, tab[leave])]
        basis[leave] = enter
    # feasible iff all artificials can be driven to zero
    for i in range(m):
        if basis[i] >= n and tab[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][n]
    return x
