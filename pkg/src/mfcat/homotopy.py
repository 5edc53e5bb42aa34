"""Morphism spaces in the homotopy category of factorizations.

Everything here reduces to exact linear algebra.  With a quasi-homogeneous
potential, an internal degree pins every matrix entry of a chain map or a
homotopy to a finite set of monomials, so each question (dimension of the
degree-d hom space, existence of a null-homotopy, existence of a homotopy
inverse) becomes a finite linear system over the coefficient field.

Certification policy: an answer is marked certified only when the claim
rests on an exhaustively enumerated degree set.  A found witness is always
definitive.  Nonexistence is definitive in the graded case, where entry
degrees are forced.  Totals over a degree window are certified only for a
quasi-homogeneous potential with isolated critical point and a window
containing the default one; everything else is reported window-truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import GradingError, MfcatError, UsageError
from .factorization import Homotopy, MatrixFactorization, MfMorphism
from .matrices import PolyMatrix
from .poly import (
    Polynomial,
    monomials_of_weighted_degree,
    monomials_up_to_total_degree,
)


def _eadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def has_isolated_singularity(W, weights):
    """Exact finiteness test for the Jacobian quotient of W.

    The quotient by the partials vanishes above the socle bound exactly
    when it is finite-dimensional; if it is infinite-dimensional, some
    variable has all its powers surviving, so a window of length
    max(weights) just above the bound cannot be all zero.  Checking that
    window is therefore a complete test.
    """
    if W.homogeneous_weighted_degree(weights) != weights.degree:
        raise GradingError("potential is not quasi-homogeneous of the declared degree")
    grads = [W.partial(i) for i in range(W.nvars)]
    sb = weights.socle_bound()
    maxw = max(weights.weights)
    field = W.field
    for d in range(sb + 1, sb + maxw + 1):
        cols = monomials_of_weighted_degree(weights.weights, d)
        if not cols:
            continue
        col_index = {e: k for k, e in enumerate(cols)}
        rows = []
        for i, g in enumerate(grads):
            if g.is_zero():
                continue
            md = d - (weights.degree - weights.weights[i])
            for m in monomials_of_weighted_degree(weights.weights, md):
                row = {}
                for e2, c in g.terms.items():
                    row[col_index[_eadd(m, e2)]] = c
                rows.append(row)
        if linalg.rank(rows, len(cols), field) < len(cols):
            return False
    return True


def default_window(source, target):
    """Degree window covering the hom space support in the isolated case:
    socle bound padded by the generator-degree spread on both sides."""
    degs = (
        source.m0.degrees + source.m1.degrees
        + target.m0.degrees + target.m1.degrees
    )
    spread = (max(degs) - min(degs)) if degs else 0
    sb = source.weights.socle_bound()
    return (-spread, sb + spread)


@dataclass(frozen=True)
class _Block:
    even_uids: tuple
    even_index: dict
    zrows: tuple  # sparse rows over even columns: chain-map equations
    odd_uids: tuple
    dvecs: tuple  # per odd unknown, its boundary in even coordinates


class HomProblem:
    """Per-degree linear systems for maps between two fixed factorizations.

    Unknown ids are (kind, i, j, exponent) with kind "e0"/"e1" for the even
    components and "t0"/"t1" for the odd ones.  Blocks are cached per
    degree, so repeated queries (windows, character filters) stay cheap.
    """

    def __init__(self, source, target):
        if source.W != target.W:
            raise UsageError("objects factor different potentials")
        if source.weights is None or source.weights != target.weights:
            raise GradingError("graded computations need a shared weight system")
        self.source = source
        self.target = target
        self.ws = source.weights
        a_s = source.split_degree
        a_t = target.split_degree
        self.a_s = 0 if a_s is None else a_s
        self.a_t = 0 if a_t is None else a_t
        self._blocks = {}

    def degree_block(self, d):
        blk = self._blocks.get(d)
        if blk is not None:
            return blk
        s, t = self.source, self.target
        w = self.ws.weights
        dd = self.ws.degree
        off = self.a_t - self.a_s
        g0, g1 = s.m0.degrees, s.m1.degrees
        h0, h1 = t.m0.degrees, t.m1.degrees
        even_uids = []
        for i in range(t.m0.rank):
            for j in range(s.m0.rank):
                for e in monomials_of_weighted_degree(w, d + g0[j] - h0[i]):
                    even_uids.append(("e0", i, j, e))
        for i in range(t.m1.rank):
            for j in range(s.m1.rank):
                for e in monomials_of_weighted_degree(w, d + off + g1[j] - h1[i]):
                    even_uids.append(("e1", i, j, e))
        even_index = {u: k for k, u in enumerate(even_uids)}
        odd_uids = []
        for i in range(t.m1.rank):
            for j in range(s.m0.rank):
                for e in monomials_of_weighted_degree(
                    w, (d + self.a_t - dd) + g0[j] - h1[i]
                ):
                    odd_uids.append(("t0", i, j, e))
        for i in range(t.m0.rank):
            for j in range(s.m1.rank):
                for e in monomials_of_weighted_degree(
                    w, (d - self.a_s) + g1[j] - h0[i]
                ):
                    odd_uids.append(("t1", i, j, e))

        rows_map = {}
        for col, (kind, i, j, e) in enumerate(even_uids):
            if kind == "e0":
                for a in range(t.m1.rank):
                    _acc(rows_map, "r1", a, j, e, t.p0.entries[a][i], col, True)
                for b in range(s.m1.rank):
                    _acc(rows_map, "r2", i, b, e, s.p1.entries[j][b], col, False)
            else:
                for b in range(s.m0.rank):
                    _acc(rows_map, "r1", i, b, e, s.p0.entries[j][b], col, False)
                for a in range(t.m0.rank):
                    _acc(rows_map, "r2", a, j, e, t.p1.entries[a][i], col, True)
        zrows = tuple(r for r in rows_map.values() if r)

        dvecs = tuple(self._boundary_vector(u, even_index) for u in odd_uids)
        blk = _Block(tuple(even_uids), even_index, zrows, tuple(odd_uids), dvecs)
        self._blocks[d] = blk
        return blk

    def _boundary_vector(self, uid, even_index):
        kind, i, j, e = uid
        s, t = self.source, self.target
        acc = {}

        def put(kind2, a, b, poly):
            for e2, c in poly.terms.items():
                key = (kind2, a, b, _eadd(e, e2))
                cur = acc.get(key)
                nv = c if cur is None else cur + c
                if nv:
                    acc[key] = nv
                elif cur is not None:
                    del acc[key]

        if kind == "t0":
            for a in range(t.m0.rank):
                put("e0", a, j, t.p1.entries[a][i])
            for b in range(s.m1.rank):
                put("e1", i, b, s.p1.entries[j][b])
        else:
            for b in range(s.m0.rank):
                put("e0", i, b, s.p0.entries[j][b])
            for a in range(t.m1.rank):
                put("e1", a, j, t.p0.entries[a][i])
        out = {}
        for key, c in acc.items():
            col = even_index.get(key)
            if col is None:
                raise MfcatError(
                    "internal degree bookkeeping violation at %r" % (key,)
                )
            out[col] = c
        return out


def _acc(rows_map, tag, i, j, e, poly, col, negate):
    for e2, c in poly.terms.items():
        if negate:
            c = -c
        key = (tag, i, j, _eadd(e, e2))
        row = rows_map.setdefault(key, {})
        cur = row.get(col)
        nv = c if cur is None else cur + c
        if nv:
            row[col] = nv
        elif cur is not None:
            del row[col]


@dataclass(frozen=True)
class DegreeData:
    degree: int
    cycles: int
    boundaries: int
    dim: int
    representatives: tuple


@dataclass(frozen=True)
class HomSpace:
    source: MatrixFactorization
    target: MatrixFactorization
    window: tuple
    per_degree: tuple
    total: int
    certified: bool

    def dims_by_degree(self):
        return {p.degree: p.dim for p in self.per_degree}

    def to_json(self):
        return {
            "per_degree": [
                {"d": p.degree, "Z": p.cycles, "B": p.boundaries, "H": p.dim}
                for p in self.per_degree
            ],
            "total": self.total,
            "certified": self.certified,
        }


@lru_cache(maxsize=None)
def _certified_potential(W, weights):
    try:
        return has_isolated_singularity(W, weights)
    except GradingError:
        return False


def hom_space(source, target, window=None, *, problem=None, even_keep=None,
              odd_keep=None, want_reps=True):
    """Morphism space of the homotopy category, degree by degree.

    Per-degree numbers are exact.  The certified flag asserts that the
    window provably contains all degrees with nonzero classes, which we
    claim only for isolated quasi-homogeneous potentials with a window at
    least the default one.
    """
    if source.weights is None or target.weights is None:
        raise GradingError(
            "hom spaces need a weight system; use truncated_hom_space instead"
        )
    prob = problem if problem is not None else HomProblem(source, target)
    dflt = default_window(source, target)
    lo, hi = dflt if window is None else (int(window[0]), int(window[1]))
    certified = (
        lo <= dflt[0]
        and hi >= dflt[1]
        and _certified_potential(source.W, source.weights)
    )
    field = source.field
    per_degree = []
    total = 0
    for d in range(lo, hi + 1):
        blk = prob.degree_block(d)
        uids = blk.even_uids
        zrows = blk.zrows
        dvecs = blk.dvecs
        if even_keep is not None or odd_keep is not None:
            if even_keep is None:
                even_keep = lambda u: True
            kept = [k for k, u in enumerate(uids) if even_keep(u)]
            remap = {old: new for new, old in enumerate(kept)}
            uids = tuple(blk.even_uids[k] for k in kept)
            zrows = []
            for row in blk.zrows:
                nr = {remap[c]: v for c, v in row.items() if c in remap}
                if nr:
                    zrows.append(nr)
            dvecs = []
            for u, vec in zip(blk.odd_uids, blk.dvecs):
                if odd_keep is not None and not odd_keep(u):
                    continue
                nv = {}
                for c, v in vec.items():
                    nc = remap.get(c)
                    if nc is None:
                        raise MfcatError(
                            "boundary leaves the filtered coordinate space; "
                            "the filter is not compatible with the structure"
                        )
                    nv[nc] = v
                dvecs.append(nv)
        ncols = len(uids)
        if ncols == 0:
            continue
        zdim = ncols - linalg.rank(list(zrows), ncols, field)
        bdim = linalg.rank(list(dvecs), ncols, field)
        hdim = zdim - bdim
        if zdim == 0 and bdim == 0:
            continue
        reps = ()
        if want_reps and hdim > 0:
            null_basis = linalg.nullspace(list(zrows), ncols, field)
            vecs = _quotient_representatives(null_basis, list(dvecs), field)
            reps = tuple(
                _vector_to_morphism(source, target, uids, v, d) for v in vecs
            )
            if len(reps) != hdim:
                raise MfcatError("representative count disagrees with dimension")
        per_degree.append(DegreeData(d, zdim, bdim, hdim, reps))
        total += hdim
    return HomSpace(
        source=source,
        target=target,
        window=(lo, hi),
        per_degree=tuple(per_degree),
        total=total,
        certified=certified,
    )


def _quotient_representatives(null_basis, boundary_rows, field):
    """Vectors of null_basis that are independent modulo the boundary span."""
    acc = []

    def reduce_add(vec):
        r = dict(vec)
        for pcol, prow in acc:
            f = r.get(pcol)
            if f is not None:
                for c, v in prow.items():
                    cur = r.get(c)
                    nv = (cur - f * v) if cur is not None else -(f * v)
                    if nv:
                        r[c] = nv
                    elif cur is not None:
                        del r[c]
        if not r:
            return False
        pcol = min(r)
        piv = r[pcol]
        acc.append((pcol, {c: v / piv for c, v in r.items()}))
        return True

    for b in boundary_rows:
        reduce_add(b)
    return [v for v in null_basis if reduce_add(v)]


def _vector_to_morphism(source, target, uids, vec, degree):
    f0t = [[{} for _ in range(source.m0.rank)] for _ in range(target.m0.rank)]
    f1t = [[{} for _ in range(source.m1.rank)] for _ in range(target.m1.rank)]
    for col, c in vec.items():
        kind, i, j, e = uids[col]
        slot = f0t if kind == "e0" else f1t
        slot[i][j][e] = slot[i][j].get(e, source.field.zero) + c
    nvars, field = source.nvars, source.field

    def build(tab, nrows, ncols):
        return PolyMatrix(
            nrows, ncols, nvars, field,
            tuple(
                tuple(Polynomial(nvars, tab[i][j], field) for j in range(ncols))
                for i in range(nrows)
            ),
        )

    return MfMorphism(
        source=source,
        target=target,
        f0=build(f0t, target.m0.rank, source.m0.rank),
        f1=build(f1t, target.m1.rank, source.m1.rank),
        degree=degree,
        validate=False,
    )


def _vector_to_homotopy(source, target, uids, vec, degree):
    t0t = [[{} for _ in range(source.m0.rank)] for _ in range(target.m1.rank)]
    t1t = [[{} for _ in range(source.m1.rank)] for _ in range(target.m0.rank)]
    for col, c in vec.items():
        kind, i, j, e = uids[col]
        slot = t0t if kind == "t0" else t1t
        slot[i][j][e] = slot[i][j].get(e, source.field.zero) + c
    nvars, field = source.nvars, source.field

    def build(tab, nrows, ncols):
        return PolyMatrix(
            nrows, ncols, nvars, field,
            tuple(
                tuple(Polynomial(nvars, tab[i][j], field) for j in range(ncols))
                for i in range(nrows)
            ),
        )

    return Homotopy(
        source=source,
        target=target,
        t0=build(t0t, target.m1.rank, source.m0.rank),
        t1=build(t1t, target.m0.rank, source.m1.rank),
        degree=degree,
    )


def _even_coordinates(phi, prob):
    """Split a morphism into homogeneous pieces in unknown coordinates.

    Returns {hom_degree: {even_uid: coeff}}.
    """
    s, t = phi.source, phi.target
    ws = prob.ws
    off = prob.a_t - prob.a_s
    pieces = {}
    for i in range(t.m0.rank):
        for j in range(s.m0.rank):
            for e, c in phi.f0.entries[i][j].terms.items():
                d = ws.wdeg(e) + t.m0.degrees[i] - s.m0.degrees[j]
                pieces.setdefault(d, {})[("e0", i, j, e)] = c
    for i in range(t.m1.rank):
        for j in range(s.m1.rank):
            for e, c in phi.f1.entries[i][j].terms.items():
                d = ws.wdeg(e) - off + t.m1.degrees[i] - s.m1.degrees[j]
                pieces.setdefault(d, {})[("e1", i, j, e)] = c
    return pieces


def solve_null_homotopy(phi, bound=None):
    """Returns (homotopy or None, definitive flag)."""
    s, t = phi.source, phi.target
    graded = (
        s.weights is not None
        and t.weights is not None
        and s.weights == t.weights
    )
    if graded:
        return _null_homotopy_graded(phi)
    if bound is None:
        raise UsageError(
            "null-homotopy search without a grading needs an explicit bound"
        )
    return _null_homotopy_bounded(phi, bound)


def _null_homotopy_graded(phi):
    s, t = phi.source, phi.target
    prob = HomProblem(s, t)
    field = s.field
    pieces = _even_coordinates(phi, prob)
    if not pieces:
        return Homotopy(
            s, t,
            PolyMatrix.zero(t.m1.rank, s.m0.rank, s.nvars, field),
            PolyMatrix.zero(t.m0.rank, s.m1.rank, s.nvars, field),
            phi.degree,
        ), True
    t0_terms = [[{} for _ in range(s.m0.rank)] for _ in range(t.m1.rank)]
    t1_terms = [[{} for _ in range(s.m1.rank)] for _ in range(t.m0.rank)]
    for d, coords in sorted(pieces.items()):
        blk = prob.degree_block(d)
        rows_t = {}
        for odd_idx, vec in enumerate(blk.dvecs):
            for col, c in vec.items():
                rows_t.setdefault(col, {})[odd_idx] = c
        keys = set(rows_t)
        rhs_map = {}
        for uid, c in coords.items():
            col = blk.even_index.get(uid)
            if col is None:
                raise MfcatError("morphism entry outside its degree space")
            rhs_map[col] = c
        keys |= set(rhs_map)
        ordered = sorted(keys)
        rows = [rows_t.get(k, {}) for k in ordered]
        rhs = [rhs_map.get(k, field.zero) for k in ordered]
        sol = linalg.solve(rows, rhs, len(blk.odd_uids), field)
        if sol is None:
            return None, True
        for odd_idx, c in sol.items():
            if not c:
                continue
            kind, i, j, e = blk.odd_uids[odd_idx]
            slot = t0_terms if kind == "t0" else t1_terms
            slot[i][j][e] = slot[i][j].get(e, field.zero) + c
    nvars = s.nvars

    def build(tab, nrows, ncols):
        return PolyMatrix(
            nrows, ncols, nvars, field,
            tuple(
                tuple(Polynomial(nvars, tab[i][j], field) for j in range(ncols))
                for i in range(nrows)
            ),
        )

    h = Homotopy(
        source=s,
        target=t,
        t0=build(t0_terms, t.m1.rank, s.m0.rank),
        t1=build(t1_terms, t.m0.rank, s.m1.rank),
        degree=phi.degree,
    )
    bd = h.boundary()
    if not ((bd.f0 - phi.f0).is_zero() and (bd.f1 - phi.f1).is_zero()):
        raise MfcatError("homotopy solver produced a wrong witness")
    return h, True


def _null_homotopy_bounded(phi, bound):
    s, t = phi.source, phi.target
    field = s.field
    nvars = s.nvars
    monos = monomials_up_to_total_degree(nvars, bound)
    odd_uids = []
    for i in range(t.m1.rank):
        for j in range(s.m0.rank):
            for e in monos:
                odd_uids.append(("t0", i, j, e))
    for i in range(t.m0.rank):
        for j in range(s.m1.rank):
            for e in monos:
                odd_uids.append(("t1", i, j, e))
    rows_map = {}
    for col, (kind, i, j, e) in enumerate(odd_uids):
        if kind == "t0":
            for a in range(t.m0.rank):
                _acc(rows_map, "e0", a, j, e, t.p1.entries[a][i], col, False)
            for b in range(s.m1.rank):
                _acc(rows_map, "e1", i, b, e, s.p1.entries[j][b], col, False)
        else:
            for b in range(s.m0.rank):
                _acc(rows_map, "e0", i, b, e, s.p0.entries[j][b], col, False)
            for a in range(t.m1.rank):
                _acc(rows_map, "e1", a, j, e, t.p0.entries[a][i], col, False)
    rhs_map = {}
    for i in range(t.m0.rank):
        for j in range(s.m0.rank):
            for e, c in phi.f0.entries[i][j].terms.items():
                rhs_map[("e0", i, j, e)] = c
    for i in range(t.m1.rank):
        for j in range(s.m1.rank):
            for e, c in phi.f1.entries[i][j].terms.items():
                rhs_map[("e1", i, j, e)] = c
    keys = sorted(set(rows_map) | set(rhs_map))
    rows = [rows_map.get(k, {}) for k in keys]
    rhs = [rhs_map.get(k, field.zero) for k in keys]
    sol = linalg.solve(rows, rhs, len(odd_uids), field)
    if sol is None:
        return None, False
    h = _vector_to_homotopy(s, t, odd_uids, sol, phi.degree)
    bd = h.boundary()
    if not ((bd.f0 - phi.f0).is_zero() and (bd.f1 - phi.f1).is_zero()):
        raise MfcatError("homotopy solver produced a wrong witness")
    return h, True


def find_homotopy(phi, bound=None):
    """A homotopy bounding phi, or None.

    In the graded case None is a certificate of non-existence (the entry
    degrees are forced, so the search is exhaustive).  Without a grading,
    None only means nothing was found within the bound; use
    is_null_homotopic for the three-valued answer.
    """
    return solve_null_homotopy(phi, bound)[0]


def is_null_homotopic(phi, bound=None):
    """True, False (certified), or None (window-truncated unknown)."""
    h, definitive = solve_null_homotopy(phi, bound)
    if h is not None:
        return True
    return False if definitive else None


def is_contractible(mf, bound=None):
    return is_null_homotopic(MfMorphism.identity(mf), bound)


def hom_complex_differential(x):
    """The differential of the two-periodic morphism complex.

    Takes an even map to an odd one and vice versa; applying it twice
    gives zero exactly, whether or not the input commutes with the
    structure maps.
    """
    if isinstance(x, MfMorphism):
        s, t = x.source, x.target
        return Homotopy(
            source=s,
            target=t,
            t0=t.p0 @ x.f0 - x.f1 @ s.p0,
            t1=t.p1 @ x.f1 - x.f0 @ s.p1,
            degree=x.degree,
        )
    return x.boundary()


@dataclass(frozen=True)
class HomotopyEquivalence:
    inverse: MfMorphism
    source_homotopy: Homotopy  # bounds id - inverse after forward
    target_homotopy: Homotopy  # bounds id - forward after inverse


def homotopy_equivalence_data(phi, bound=None):
    """Homotopy inverse with both correcting homotopies, or None.

    One joint linear system in the inverse and the two homotopies; in the
    graded case its solvability is decided exactly.
    """
    s, t = phi.source, phi.target
    graded = (
        s.weights is not None
        and t.weights is not None
        and s.weights == t.weights
    )
    if graded:
        ws = s.weights
        a_s = s.split_degree or 0
        a_t = t.split_degree or 0
        dd = ws.degree
        d = phi.degree
        g0, g1 = s.m0.degrees, s.m1.degrees
        h0, h1 = t.m0.degrees, t.m1.degrees
        need = {
            "y0": lambda i, j: -d + h0[j] - g0[i],
            "y1": lambda i, j: -d + (a_s - a_t) + h1[j] - g1[i],
            "s0": lambda i, j: (a_s - dd) + g0[j] - g1[i],
            "s1": lambda i, j: -a_s + g1[j] - g0[i],
            "u0": lambda i, j: (a_t - dd) + h0[j] - h1[i],
            "u1": lambda i, j: -a_t + h1[j] - h0[i],
        }

        def mono_for(group, i, j):
            return monomials_of_weighted_degree(ws.weights, need[group](i, j))

    else:
        if bound is None:
            raise UsageError(
                "equivalence check without a grading needs an explicit bound"
            )
        monos = monomials_up_to_total_degree(s.nvars, bound)

        def mono_for(group, i, j):
            return monos

    sol, uids = _equivalence_system(phi, mono_for)
    if sol is None:
        return None
    field = s.field
    tabs = {
        g: [[{} for _ in range(nc)] for _ in range(nr)]
        for g, (nr, nc) in _equivalence_shapes(phi).items()
    }
    for col, c in sol.items():
        if not c:
            continue
        group, i, j, e = uids[col]
        tab = tabs[group]
        tab[i][j][e] = tab[i][j].get(e, field.zero) + c
    nvars = s.nvars

    def build(group):
        nr, nc = _equivalence_shapes(phi)[group]
        tab = tabs[group]
        return PolyMatrix(
            nr, nc, nvars, field,
            tuple(
                tuple(Polynomial(nvars, tab[i][j], field) for j in range(nc))
                for i in range(nr)
            ),
        )

    psi = MfMorphism(
        source=t, target=s, f0=build("y0"), f1=build("y1"),
        degree=-phi.degree, validate=False,
    )
    hs = Homotopy(source=s, target=s, t0=build("s0"), t1=build("s1"), degree=0)
    ht = Homotopy(source=t, target=t, t0=build("u0"), t1=build("u1"), degree=0)
    comp_s = psi @ phi
    ident_s = MfMorphism.identity(s)
    bs = hs.boundary()
    if not ((bs.f0 - (ident_s.f0 - comp_s.f0)).is_zero()
            and (bs.f1 - (ident_s.f1 - comp_s.f1)).is_zero()):
        raise MfcatError("equivalence solver produced a wrong source homotopy")
    comp_t = phi @ psi
    ident_t = MfMorphism.identity(t)
    bt = ht.boundary()
    if not ((bt.f0 - (ident_t.f0 - comp_t.f0)).is_zero()
            and (bt.f1 - (ident_t.f1 - comp_t.f1)).is_zero()):
        raise MfcatError("equivalence solver produced a wrong target homotopy")
    return HomotopyEquivalence(inverse=psi, source_homotopy=hs, target_homotopy=ht)


def _equivalence_shapes(phi):
    s, t = phi.source, phi.target
    return {
        "y0": (s.m0.rank, t.m0.rank),
        "y1": (s.m1.rank, t.m1.rank),
        "s0": (s.m1.rank, s.m0.rank),
        "s1": (s.m0.rank, s.m1.rank),
        "u0": (t.m1.rank, t.m0.rank),
        "u1": (t.m0.rank, t.m1.rank),
    }


def _equivalence_system(phi, mono_for):
    s, t = phi.source, phi.target
    field = s.field
    shapes = _equivalence_shapes(phi)
    uids = []
    for group in ("y0", "y1", "s0", "s1", "u0", "u1"):
        nr, nc = shapes[group]
        for i in range(nr):
            for j in range(nc):
                for e in mono_for(group, i, j):
                    uids.append((group, i, j, e))
    rows_map = {}
    for col, (group, i, j, e) in enumerate(uids):
        if group == "y0":
            # psi1 q0 - p0 psi0 = 0 and psi0 q1 - p1 psi1 = 0
            for a in range(s.m1.rank):
                _acc(rows_map, "a1", a, j, e, s.p0.entries[a][i], col, True)
            for b in range(t.m1.rank):
                _acc(rows_map, "a2", i, b, e, t.p1.entries[j][b], col, False)
            # id_P - psi phi = D(s)  ->  s1 p0 + p1 s0 + psi0 phi0 = id
            for b in range(s.m0.rank):
                _acc(rows_map, "b0", i, b, e, phi.f0.entries[j][b], col, False)
            # id_Q - phi psi = D(t)  ->  u1 q0 + q1 u0 + phi0 psi0 = id
            for a in range(t.m0.rank):
                _acc(rows_map, "c0", a, j, e, phi.f0.entries[a][i], col, False)
        elif group == "y1":
            for b in range(t.m0.rank):
                _acc(rows_map, "a1", i, b, e, t.p0.entries[j][b], col, False)
            for a in range(s.m0.rank):
                _acc(rows_map, "a2", a, j, e, s.p1.entries[a][i], col, True)
            for b in range(s.m1.rank):
                _acc(rows_map, "b1", i, b, e, phi.f1.entries[j][b], col, False)
            for a in range(t.m1.rank):
                _acc(rows_map, "c1", a, j, e, phi.f1.entries[a][i], col, False)
        elif group == "s0":
            for a in range(s.m0.rank):
                _acc(rows_map, "b0", a, j, e, s.p1.entries[a][i], col, False)
            for b in range(s.m1.rank):
                _acc(rows_map, "b1", i, b, e, s.p1.entries[j][b], col, False)
        elif group == "s1":
            for b in range(s.m0.rank):
                _acc(rows_map, "b0", i, b, e, s.p0.entries[j][b], col, False)
            for a in range(s.m1.rank):
                _acc(rows_map, "b1", a, j, e, s.p0.entries[a][i], col, False)
        elif group == "u0":
            for a in range(t.m0.rank):
                _acc(rows_map, "c0", a, j, e, t.p1.entries[a][i], col, False)
            for b in range(t.m1.rank):
                _acc(rows_map, "c1", i, b, e, t.p1.entries[j][b], col, False)
        else:  # u1
            for b in range(t.m0.rank):
                _acc(rows_map, "c0", i, b, e, t.p0.entries[j][b], col, False)
            for a in range(t.m1.rank):
                _acc(rows_map, "c1", a, j, e, t.p0.entries[a][i], col, False)
    rhs_map = {}
    one = field.one
    zero_e = (0,) * s.nvars
    for i in range(s.m0.rank):
        rhs_map[("b0", i, i, zero_e)] = one
    for i in range(s.m1.rank):
        rhs_map[("b1", i, i, zero_e)] = one
    for i in range(t.m0.rank):
        rhs_map[("c0", i, i, zero_e)] = one
    for i in range(t.m1.rank):
        rhs_map[("c1", i, i, zero_e)] = one
    keys = sorted(set(rows_map) | set(rhs_map))
    rows = [rows_map.get(k, {}) for k in keys]
    rhs = [rhs_map.get(k, field.zero) for k in keys]
    sol = linalg.solve(rows, rhs, len(uids), field)
    return sol, uids


def is_homotopy_equivalence(phi, bound=None):
    """True, False (certified, graded case), or None (truncated)."""
    s, t = phi.source, phi.target
    graded = (
        s.weights is not None
        and t.weights is not None
        and s.weights == t.weights
    )
    data = homotopy_equivalence_data(phi, bound)
    if data is not None:
        return True
    return False if graded else None


def random_chain_map(source, target, degree=0, rng=None, problem=None):
    """A reproducible chain map: an rng-weighted combination of a basis of
    the degree-d cycle space.  Zero when that space is zero."""
    import random as _random

    if rng is None:
        rng = _random.Random(20240901)
    prob = problem if problem is not None else HomProblem(source, target)
    blk = prob.degree_block(degree)
    field = source.field
    basis = linalg.nullspace(list(blk.zrows), len(blk.even_uids), field)
    if not basis:
        return MfMorphism.zero(source, target, degree)
    combo = {}
    coeffs = [rng.randint(-3, 3) for _ in basis]
    if not any(coeffs):
        coeffs[0] = 1
    for c, vec in zip(coeffs, basis):
        if c == 0:
            continue
        fc = field.coerce(c)
        for col, v in vec.items():
            cur = combo.get(col)
            nv = (cur + fc * v) if cur is not None else fc * v
            if nv:
                combo[col] = nv
            elif cur is not None:
                del combo[col]
    return _vector_to_morphism(source, target, blk.even_uids, combo, degree)


def truncated_hom_space(source, target, bound):
    """Hom dimensions with entries bounded in total degree; never certified.

    Cycles are genuine chain maps with bounded entries.  Boundaries are
    counted as combinations of bounded homotopies whose image stays inside
    the bounded coordinate space, so the quotient is exact on that space.
    """
    field = source.field
    nvars = source.nvars
    s, t = source, target
    monos = monomials_up_to_total_degree(nvars, bound)
    even_uids = []
    for i in range(t.m0.rank):
        for j in range(s.m0.rank):
            for e in monos:
                even_uids.append(("e0", i, j, e))
    for i in range(t.m1.rank):
        for j in range(s.m1.rank):
            for e in monos:
                even_uids.append(("e1", i, j, e))
    even_index = {u: k for k, u in enumerate(even_uids)}
    rows_map = {}
    for col, (kind, i, j, e) in enumerate(even_uids):
        if kind == "e0":
            for a in range(t.m1.rank):
                _acc(rows_map, "r1", a, j, e, t.p0.entries[a][i], col, True)
            for b in range(s.m1.rank):
                _acc(rows_map, "r2", i, b, e, s.p1.entries[j][b], col, False)
        else:
            for b in range(s.m0.rank):
                _acc(rows_map, "r1", i, b, e, s.p0.entries[j][b], col, False)
            for a in range(t.m0.rank):
                _acc(rows_map, "r2", a, j, e, t.p1.entries[a][i], col, True)
    ncols = len(even_uids)
    zdim = ncols - linalg.rank([r for r in rows_map.values() if r], ncols, field)
    # boundaries, tracked in an extended coordinate space
    ext_index = dict(even_index)
    brows = []
    for i in range(t.m1.rank):
        for j in range(s.m0.rank):
            for e in monos:
                acc = {}
                for a in range(t.m0.rank):
                    for e2, c in t.p1.entries[a][i].terms.items():
                        k = ("e0", a, j, _eadd(e, e2))
                        acc[k] = acc.get(k, field.zero) + c
                for b in range(s.m1.rank):
                    for e2, c in s.p1.entries[j][b].terms.items():
                        k = ("e1", i, b, _eadd(e, e2))
                        acc[k] = acc.get(k, field.zero) + c
                brows.append(acc)
    for i in range(t.m0.rank):
        for j in range(s.m1.rank):
            for e in monos:
                acc = {}
                for b in range(s.m0.rank):
                    for e2, c in s.p0.entries[j][b].terms.items():
                        k = ("e0", i, b, _eadd(e, e2))
                        acc[k] = acc.get(k, field.zero) + c
                for a in range(t.m1.rank):
                    for e2, c in t.p0.entries[a][i].terms.items():
                        k = ("e1", a, j, _eadd(e, e2))
                        acc[k] = acc.get(k, field.zero) + c
                brows.append(acc)
    for row in brows:
        for k in row:
            if k not in ext_index:
                ext_index[k] = len(ext_index)
    overflow_cols = set(range(ncols, len(ext_index)))
    b_full = []
    b_overflow = []
    for row in brows:
        full = {ext_index[k]: v for k, v in row.items() if v}
        if full:
            b_full.append(full)
        ov = {c: v for c, v in full.items() if c in overflow_cols}
        if ov:
            b_overflow.append(ov)
    next_total = len(ext_index)
    bdim = linalg.rank(b_full, next_total, field) - linalg.rank(
        b_overflow, next_total, field
    )
    hdim = zdim - bdim
    return HomSpace(
        source=source,
        target=target,
        window=(0, bound),
        per_degree=(DegreeData(0, zdim, bdim, hdim, ()),),
        total=hdim,
        certified=False,
    )
