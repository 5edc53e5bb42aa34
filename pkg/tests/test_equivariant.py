"""Equivariant structures, the averaging projector, isotypic bookkeeping.

Enumeration is cross-checked against exhaustive search over all character
assignments, and the projector against a literal two-element group average.
"""

import random

import pytest

import oracles as orc
import suites
from mfcat import (
    EquivariantStructure,
    check_equivariant,
    cyclic_action,
    elementary_factorization,
    enumerate_structures,
    equivariant_hom_space,
    hom_space,
    is_equivariant_map,
    isotypic_decompose,
    parse_poly,
    random_chain_map,
    reynolds,
    reynolds_homotopy,
    twist_orbits,
    WeightSystem,
)
from mfcat.errors import MfcatError


def as_pairs(structures):
    return sorted((tuple(s.chars0), tuple(s.chars1)) for s in structures)


def test_power_structures_match_brute_force():
    act = suites.an_action(4)
    for k, mf in suites.an_objects(4).items():
        lib = as_pairs(enumerate_structures(mf, act))
        brute = orc.brute_force_structures(
            orc.mf_to_data(mf), act.orders, act.exponents)
        assert lib == brute, k
        assert len(lib) == 4, k


def test_quadric_structures_match_brute_force():
    q = suites.quadric()
    act = suites.quadric_action()
    lib = as_pairs(enumerate_structures(q, act))
    brute = orc.brute_force_structures(orc.mf_to_data(q), act.orders, act.exponents)
    assert lib == brute
    assert len(lib) == 2


def test_fermat_structures_match_brute_force():
    # exhaustive search over 3^8 assignments
    f = suites.fermat_cubic()
    act = suites.fermat_action()
    lib = as_pairs(enumerate_structures(f, act))
    brute = orc.brute_force_structures(orc.mf_to_data(f), act.orders, act.exponents)
    assert lib == brute
    assert len(lib) == 3


def test_no_structures_when_w_not_invariant():
    mf = elementary_factorization(
        parse_poly("x1", 1), parse_poly("x1^2", 1), WeightSystem((1,), 3))
    assert enumerate_structures(mf, cyclic_action(2, (1,), 1)) == ()


def test_no_structures_on_mixed_character_entry():
    ws = WeightSystem((1, 1), 2)
    mf = elementary_factorization(
        parse_poly("x1 + x2", 2), parse_poly("x1 - x2", 2), ws)
    act = cyclic_action(2, (1, 0), 2)
    assert act.is_invariant(mf.W)
    assert enumerate_structures(mf, act) == ()
    brute = orc.brute_force_structures(orc.mf_to_data(mf), act.orders, act.exponents)
    assert brute == []


def test_check_equivariant_reports_bad_chars():
    q = suites.quadric()
    act = suites.quadric_action()
    bad = q.with_chars(((0,), (1,)), ((1,), (0,)))
    problems = check_equivariant(bad, act)
    assert problems
    assert any("character eigenvector" in p for p in problems)
    good = q.with_chars(((0,), (0,)), ((1,), (1,)))
    assert check_equivariant(good, act) == []


def test_twist_orbits():
    act = suites.an_action(4)
    mf = suites.an_objects(4)[2]
    sts = enumerate_structures(mf, act)
    orbs = twist_orbits(sts)
    assert [len(o) for o in orbs] == [4]
    f = suites.fermat_cubic()
    sts_f = enumerate_structures(f, suites.fermat_action())
    assert [len(o) for o in twist_orbits(sts_f)] == [3]


def test_twist_is_a_structure():
    f = suites.fermat_cubic()
    act = suites.fermat_action()
    sts = enumerate_structures(f, act)
    all_pairs = as_pairs(sts)
    for s in sts:
        for chi in act.characters():
            assert (tuple(s.twist(chi).chars0),
                    tuple(s.twist(chi).chars1)) in all_pairs


def test_reynolds_matches_literal_average():
    q = suites.quadric()
    act = suites.quadric_action()
    sts = enumerate_structures(q, act)
    exps = act.exponents[0]
    for e_src in sts:
        for e_tgt in sts:
            for seed in range(5):
                phi = random_chain_map(q, q, rng=random.Random(300 + seed))
                pi = reynolds(phi, e_src, e_tgt)
                lit0 = orc.literal_reynolds_order2(
                    orc.matrix_to_data(phi.f0),
                    [c[0] for c in e_src.chars0],
                    [c[0] for c in e_tgt.chars0], exps)
                lit1 = orc.literal_reynolds_order2(
                    orc.matrix_to_data(phi.f1),
                    [c[0] for c in e_src.chars1],
                    [c[0] for c in e_tgt.chars1], exps)
                assert orc.matrix_to_data(pi.f0) == lit0
                assert orc.matrix_to_data(pi.f1) == lit1


def test_reynolds_is_projector_and_fixes_equivariants():
    f = suites.fermat_cubic()
    act = suites.fermat_action()
    sts = enumerate_structures(f, act)
    e = sts[0]
    hs = hom_space(f, f)
    reps = [r for p in hs.per_degree for r in p.representatives]
    assert reps
    for phi in reps:
        pi = reynolds(phi, e, e)
        assert pi.is_chain_map()
        assert reynolds(pi, e, e) == pi
        assert is_equivariant_map(pi, e, e)
        if is_equivariant_map(phi, e, e):
            assert pi == phi
        else:
            assert pi != phi
    for seed in range(5):
        phi = random_chain_map(f, f, rng=random.Random(900 + seed))
        pi = reynolds(phi, e, e)
        assert pi.is_chain_map()
        assert reynolds(pi, e, e) == pi


def test_reynolds_commutes_with_boundary():
    q = suites.quadric()
    act = suites.quadric_action()
    sts = enumerate_structures(q, act)
    e = sts[0]
    rng = random.Random(12)
    t = suites.random_homotopy(q, q, 0, rng)
    left = reynolds_homotopy(t, e, e).boundary()
    right = reynolds(t.boundary(), e, e)
    assert left == right


def test_equivariant_hom_dims_fermat():
    f = suites.fermat_cubic()
    sts = enumerate_structures(f, suites.fermat_action())
    e = sts[0]
    assert hom_space(f, f).total == 4
    assert equivariant_hom_space(e, e).total == 1
    iso = isotypic_decompose(e, e)
    assert {k: v.total for k, v in iso.items()} == {(0,): 1, (1,): 0, (2,): 3}


def test_isotypic_sums_to_full_dimension():
    act = suites.an_action(4)
    objs = suites.an_objects(4)
    structures = {k: enumerate_structures(mf, act) for k, mf in objs.items()}
    for a, src_list in structures.items():
        for b, tgt_list in structures.items():
            full = hom_space(objs[a], objs[b]).total
            e_src = src_list[0]
            for e_tgt in tgt_list:
                iso = isotypic_decompose(e_src, e_tgt)
                assert sum(v.total for v in iso.values()) == full, (a, b)


def test_isotypic_matches_trivial_twist():
    f = suites.fermat_cubic()
    act = suites.fermat_action()
    sts = enumerate_structures(f, act)
    e0, e1 = sts[0], sts[1]
    iso = isotypic_decompose(e0, e1)
    for chi in act.characters():
        direct = equivariant_hom_space(e0, e1, twist_char=chi)
        assert direct.total == iso[chi].total


def test_structure_requires_matching_action():
    q = suites.quadric()
    act = suites.quadric_action()
    e = enumerate_structures(q, act)[0]
    other = enumerate_structures(q, act)[1]
    phi = random_chain_map(q, q, rng=random.Random(1))
    wrong_action = cyclic_action(2, (1, 1, 0), 3)
    with pytest.raises(MfcatError):
        EquivariantStructure(q.strip_chars(), wrong_action)
    assert reynolds(phi, e, other).is_chain_map()
