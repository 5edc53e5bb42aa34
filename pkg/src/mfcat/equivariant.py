"""Group-equivariant structures on matrix factorizations.

For a diagonal abelian action, an equivariant structure is a character
per generator such that every entry of p0 and p1 is an eigenvector with
the character dictated by its row and column.  Since characters are
residue tuples, finding all structures is a difference-constraint problem
per cyclic factor, solved by weighted union-find; each graph component
contributes one free residue.

The Reynolds projection onto the equivariant part is a per-entry
character filter.  That form needs no division by the group order and no
roots of unity: projecting both sides of the chain-map identities onto a
fixed character piece is exact over any coefficient field, because the
structure maps of an equivariant factorization have pure characters.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from itertools import product

from .action import GroupAction, char_add, char_sub, normalize_char
from .errors import MfcatError, UsageError
from .factorization import Homotopy, MatrixFactorization, MfMorphism
from .homotopy import HomProblem, default_window, hom_space


def check_equivariant(mf, action):
    """List of violations of the character conditions; empty when valid."""
    problems = []
    if mf.m0.chars is None or mf.m1.chars is None:
        return ["factorization carries no generator characters"]
    if action.nvars != mf.nvars:
        return ["action and factorization have different variable counts"]
    if not action.is_invariant(mf.W):
        problems.append("potential is not invariant under the action")
    c0, c1 = mf.m0.chars, mf.m1.chars
    orders = action.orders
    for label, mat, rows_c, cols_c in (
        ("p0", mf.p0, c1, c0),
        ("p1", mf.p1, c0, c1),
    ):
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                f = mat.entries[i][j]
                if f.is_zero():
                    continue
                want = char_sub(rows_c[i], cols_c[j], orders)
                if not action.has_character(f, want):
                    problems.append(
                        "%s entry (%d,%d) is not a character eigenvector of "
                        "the required character" % (label, i, j)
                    )
    return problems


@dataclass(frozen=True)
class EquivariantStructure:
    """A factorization with generator characters valid for the action."""

    factorization: MatrixFactorization
    action: GroupAction
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        if validate:
            problems = check_equivariant(self.factorization, self.action)
            if problems:
                raise MfcatError(
                    "not an equivariant structure: " + "; ".join(problems[:6])
                )

    @property
    def chars0(self):
        return self.factorization.m0.chars

    @property
    def chars1(self):
        return self.factorization.m1.chars

    def twist(self, char):
        """Shift every generator character by the same amount."""
        orders = self.action.orders
        char = normalize_char(char, orders)
        mf = self.factorization.with_chars(
            tuple(char_add(c, char, orders) for c in self.chars0),
            tuple(char_add(c, char, orders) for c in self.chars1),
        )
        return EquivariantStructure(mf, self.action, validate=False)

    def forget(self):
        return self.factorization.strip_chars()


def _difference_components(nodes, edges, m):
    """Solve value(v) - value(u) = d (mod m) constraints.

    Returns {root: [(node, offset)]} or None when inconsistent.
    """
    parent = {v: v for v in nodes}
    offset = {v: 0 for v in nodes}

    def find(v):
        if parent[v] == v:
            return v, 0
        root, above = find(parent[v])
        parent[v] = root
        offset[v] = (offset[v] + above) % m
        return root, offset[v]

    for u, v, d in edges:
        ru, ou = find(u)
        rv, ov = find(v)
        if ru == rv:
            if (ov - ou - d) % m != 0:
                return None
        else:
            parent[rv] = ru
            offset[rv] = (ou + d - ov) % m
    comp = {}
    for v in nodes:
        root, off = find(v)
        comp.setdefault(root, []).append((v, off))
    return comp


def enumerate_structures(mf, action):
    """All equivariant structures on mf, in a deterministic order.

    Empty when none exist (entry with mixed characters, or an
    inconsistent cycle of constraints, or a non-invariant potential).
    """
    if action.nvars != mf.nvars:
        raise UsageError("action and factorization have different variable counts")
    if not action.is_invariant(mf.W):
        return ()
    nodes = [("g0", j) for j in range(mf.m0.rank)]
    nodes += [("g1", i) for i in range(mf.m1.rank)]
    if not nodes:
        return (
            EquivariantStructure(mf.with_chars((), ()), action, validate=False),
        )
    per_factor = []
    for f in range(action.nfactors):
        m = action.orders[f]
        edges = []
        consistent = True
        for i in range(mf.p0.nrows):
            for j in range(mf.p0.ncols):
                g = mf.p0.entries[i][j]
                if g.is_zero():
                    continue
                vals = {action.char_of_monomial(e)[f] for e in g.terms}
                if len(vals) > 1:
                    consistent = False
                    break
                edges.append((("g0", j), ("g1", i), vals.pop()))
            if not consistent:
                break
        if consistent:
            for i in range(mf.p1.nrows):
                for j in range(mf.p1.ncols):
                    g = mf.p1.entries[i][j]
                    if g.is_zero():
                        continue
                    vals = {action.char_of_monomial(e)[f] for e in g.terms}
                    if len(vals) > 1:
                        consistent = False
                        break
                    edges.append((("g1", j), ("g0", i), vals.pop()))
                if not consistent:
                    break
        if not consistent:
            return ()
        comp = _difference_components(nodes, edges, m)
        if comp is None:
            return ()
        roots = sorted(comp, key=lambda r: min(comp[r]))
        assignments = []
        for bases in product(range(m), repeat=len(roots)):
            val = {}
            for base, root in zip(bases, roots):
                for node, off in comp[root]:
                    val[node] = (base + off) % m
            assignments.append(val)
        per_factor.append(assignments)
    out = []
    for combo in product(*per_factor):
        chars0 = tuple(
            tuple(combo[f][("g0", j)] for f in range(action.nfactors))
            for j in range(mf.m0.rank)
        )
        chars1 = tuple(
            tuple(combo[f][("g1", i)] for f in range(action.nfactors))
            for i in range(mf.m1.rank)
        )
        out.append(
            EquivariantStructure(
                mf.with_chars(chars0, chars1), action, validate=False
            )
        )
    return tuple(out)


def twist_orbits(structures):
    """Group structures by global character twisting.

    Returns a tuple of orbits, each a tuple of structures, preserving the
    enumeration order within and between orbits.
    """
    seen = {}
    for st in structures:
        orders = st.action.orders
        allc = st.chars0 + st.chars1
        if allc:
            base = allc[0]
            key = tuple(char_sub(c, base, orders) for c in allc)
        else:
            key = ()
        seen.setdefault(key, []).append(st)
    return tuple(tuple(orbit) for orbit in seen.values())


def is_equivariant_map(phi, e_src, e_tgt, twist_char=None):
    """Whether every entry of phi has the character its slot requires."""
    _check_pair(phi, e_src, e_tgt)
    act = e_src.action
    orders = act.orders
    chi = (
        act.zero_char() if twist_char is None else normalize_char(twist_char, orders)
    )
    cp0, cp1 = e_src.chars0, e_src.chars1
    cq0, cq1 = e_tgt.chars0, e_tgt.chars1
    for mat, rows_c, cols_c in (
        (phi.f0, cq0, cp0),
        (phi.f1, cq1, cp1),
    ):
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                f = mat.entries[i][j]
                if f.is_zero():
                    continue
                want = char_sub(
                    char_sub(rows_c[i], cols_c[j], orders), chi, orders
                )
                if not act.has_character(f, want):
                    return False
    return True


def reynolds(phi, e_src, e_tgt):
    """Project a chain map onto its equivariant part.

    Keeps, in each entry, exactly the monomials of the character the slot
    requires.  The result is again a chain map because the structure maps
    have pure characters, so projecting the chain-map identities onto a
    character piece is compatible with multiplication by them.
    """
    _check_pair(phi, e_src, e_tgt)
    act = e_src.action
    orders = act.orders
    cp0, cp1 = e_src.chars0, e_src.chars1
    cq0, cq1 = e_tgt.chars0, e_tgt.chars1

    def filt(mat, rows_c, cols_c):
        return mat.map_entries_indexed(
            lambda i, j, f: act.project_character(
                f, char_sub(rows_c[i], cols_c[j], orders)
            )
        )

    return MfMorphism(
        source=phi.source,
        target=phi.target,
        f0=filt(phi.f0, cq0, cp0),
        f1=filt(phi.f1, cq1, cp1),
        degree=phi.degree,
        validate=False,
    )


def reynolds_homotopy(h, e_src, e_tgt):
    """Character filter on an odd map; the equivariant witness extractor."""
    act = e_src.action
    orders = act.orders
    cp0, cp1 = e_src.chars0, e_src.chars1
    cq0, cq1 = e_tgt.chars0, e_tgt.chars1
    t0 = h.t0.map_entries_indexed(
        lambda i, j, f: act.project_character(
            f, char_sub(cq1[i], cp0[j], orders)
        )
    )
    t1 = h.t1.map_entries_indexed(
        lambda i, j, f: act.project_character(
            f, char_sub(cq0[i], cp1[j], orders)
        )
    )
    return Homotopy(source=h.source, target=h.target, t0=t0, t1=t1, degree=h.degree)


def _check_pair(phi, e_src, e_tgt):
    if e_src.action != e_tgt.action:
        raise UsageError("structures live over different actions")
    if phi.source.strip_chars() != e_src.factorization.strip_chars():
        raise UsageError("morphism source does not match the source structure")
    if phi.target.strip_chars() != e_tgt.factorization.strip_chars():
        raise UsageError("morphism target does not match the target structure")


def equivariant_hom_space(e_src, e_tgt, window=None, twist_char=None, problem=None):
    """Hom space of maps with a fixed transformation character.

    twist_char None computes the invariant (strictly equivariant) part.
    Certification matches the underlying graded computation.
    """
    if e_src.action != e_tgt.action:
        raise UsageError("structures live over different actions")
    act = e_src.action
    orders = act.orders
    chi = (
        act.zero_char() if twist_char is None else normalize_char(twist_char, orders)
    )
    cp0, cp1 = e_src.chars0, e_src.chars1
    cq0, cq1 = e_tgt.chars0, e_tgt.chars1

    def even_keep(uid):
        kind, i, j, e = uid
        if kind == "e0":
            want = char_sub(cq0[i], cp0[j], orders)
        else:
            want = char_sub(cq1[i], cp1[j], orders)
        want = char_sub(want, chi, orders)
        return act.char_of_monomial(e) == want

    def odd_keep(uid):
        kind, i, j, e = uid
        if kind == "t0":
            want = char_sub(cq1[i], cp0[j], orders)
        else:
            want = char_sub(cq0[i], cp1[j], orders)
        want = char_sub(want, chi, orders)
        return act.char_of_monomial(e) == want

    return hom_space(
        e_src.factorization,
        e_tgt.factorization,
        window,
        problem=problem,
        even_keep=even_keep,
        odd_keep=odd_keep,
    )


def isotypic_decompose(e_src, e_tgt, window=None):
    """Hom space split by transformation character.

    Returns {character: HomSpace}.  The per-degree dimensions of the
    pieces must add up to the full hom space; that is checked and a
    failure raises, since it would mean the filter lost classes.
    """
    src = e_src.factorization
    tgt = e_tgt.factorization
    prob = HomProblem(src, tgt)
    if window is None:
        window = default_window(src, tgt)
    full = hom_space(src, tgt, window, problem=prob, want_reps=False)
    pieces = {}
    for chi in e_src.action.characters():
        pieces[chi] = equivariant_hom_space(
            e_src, e_tgt, window, twist_char=chi, problem=prob
        )
    for d in range(window[0], window[1] + 1):
        want = full.dims_by_degree().get(d, 0)
        got = sum(hs.dims_by_degree().get(d, 0) for hs in pieces.values())
        if want != got:
            raise MfcatError(
                "isotypic pieces of degree %d sum to %d, expected %d"
                % (d, got, want)
            )
    return pieces
