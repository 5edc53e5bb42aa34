"""Factorization constructors, the shift, cones, bricks, and morphism algebra."""

import random

import pytest

import suites
from mfcat import (
    GradedFreeModule,
    MatrixFactorization,
    MfMorphism,
    PolyMatrix,
    WeightSystem,
    cone,
    direct_sum,
    elementary_factorization,
    format_poly,
    koszul_factorization,
    parse_poly,
    random_chain_map,
    trivial_brick,
    w_multiple_homotopy,
    zero_factorization,
)
from mfcat.errors import GradingError, MfcatError, UsageError


def fmt(matrix):
    return [[format_poly(e) for e in row] for row in matrix.entries]


def test_elementary_frozen():
    ws = WeightSystem((1,), 4)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    assert fmt(mf.p0) == [["x1"]]
    assert fmt(mf.p1) == [["x1^3"]]
    assert mf.m0.degrees == (0,)
    assert mf.m1.degrees == (0,)
    assert mf.split_degree == 1
    assert mf.verify()["ok"]


def test_elementary_rejects_mismatch():
    ws = WeightSystem((1,), 4)
    with pytest.raises(MfcatError):
        elementary_factorization(parse_poly("x1", 1), parse_poly("x1", 1), ws)


def test_koszul_quadric_frozen():
    q = suites.quadric()
    assert fmt(q.p0) == [["x1", "-x2"], ["x2", "x1"]]
    assert fmt(q.p1) == [["x1", "x2"], ["-x2", "x1"]]
    assert q.m0.degrees == (0, 0)
    assert q.m1.degrees == (-1, -1)
    assert q.split_degree == 0
    assert q.verify()["ok"]


def test_koszul_fermat_verifies():
    f = suites.fermat_cubic()
    assert f.m0.rank == 4 and f.m1.rank == 4
    rep = f.verify()
    assert rep["ok"], rep


def test_verify_catches_corruption():
    q = suites.quadric()
    bad_p1 = PolyMatrix.from_rows(
        [[parse_poly(s, 2) for s in row]
         for row in (["x1", "x2"], ["-x2", "x2"])], 2, q.W.field)
    bad = MatrixFactorization(
        W=q.W, weights=q.weights, m0=q.m0, m1=q.m1,
        p0=q.p0, p1=bad_p1, validate=False)
    rep = bad.verify()
    assert not rep["ok"]
    assert any("W times the identity" in p for p in rep["problems"])


def test_verify_catches_degree_corruption():
    q = suites.quadric()
    bad_m0 = GradedFreeModule(2, (0, 5), None)
    bad = MatrixFactorization(
        W=q.W, weights=q.weights, m0=bad_m0, m1=q.m1,
        p0=q.p0, p1=q.p1, validate=False)
    rep = bad.verify()
    assert not rep["ok"]
    assert any("degree" in p for p in rep["problems"])


def test_shift_frozen():
    ws = WeightSystem((1,), 4)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    s = mf.shift()
    assert fmt(s.p0) == [["-x1^3"]]
    assert fmt(s.p1) == [["-x1"]]
    assert s.split_degree == 3
    assert s.verify()["ok"]


def test_shift_is_involutive_everywhere():
    for label, mf in suites.full_suite():
        double = mf.shift().shift()
        assert double == mf, label
        assert double.to_json() == mf.to_json(), label


def test_direct_sum():
    ws = WeightSystem((1,), 4)
    a = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    b = elementary_factorization(parse_poly("x1^2", 1), parse_poly("x1^2", 1), ws)
    # summands carry different splitting degrees until one is adjusted
    with pytest.raises(GradingError):
        direct_sum(a, b)
    ds = direct_sum(a, a)
    assert ds.m0.rank == 2 and ds.m1.rank == 2
    assert ds.verify()["ok"]


def test_zero_factorization():
    ws = WeightSystem((1,), 2)
    z = zero_factorization(parse_poly("x1^2", 1), ws)
    assert z.m0.rank == 0 and z.m1.rank == 0
    assert z.verify()["ok"]


def test_morphism_algebra():
    q = suites.quadric()
    rng = random.Random(2)
    phi = random_chain_map(q, q, rng=rng)
    psi = random_chain_map(q, q, rng=rng)
    ident = MfMorphism.identity(q)
    assert ident.is_chain_map()
    assert (ident @ phi) == phi
    assert (phi @ ident) == phi
    assert (phi + psi).is_chain_map()
    assert (phi - phi).f0.is_zero()
    assert (phi.scale(2) - phi - phi).f0.is_zero()
    assert (psi @ phi).is_chain_map()
    assert phi.shift().is_chain_map()
    assert phi.shift().source == q.shift()


def test_morphism_degree_composition():
    ws = WeightSystem((1,), 4)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    rng = random.Random(9)
    phi = random_chain_map(mf, mf, degree=2, rng=rng)
    psi = random_chain_map(mf, mf, degree=4, rng=rng)
    assert (psi @ phi).degree == 6


def test_cone_structure():
    ws = WeightSystem((1,), 4)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    rng = random.Random(1)
    phi = random_chain_map(mf, mf, rng=rng)
    c = cone(phi)
    assert c.factorization.verify()["ok"]
    assert c.factorization.m0.rank == 2
    assert c.inclusion.is_chain_map()
    assert c.projection.is_chain_map()
    assert c.projection.target == mf.shift()
    comp = c.projection @ c.inclusion
    assert comp.f0.is_zero() and comp.f1.is_zero()
    # the attached homotopy witnesses inclusion o phi ~ 0 on the nose
    diff = c.splitting_homotopy.boundary() - (c.inclusion @ phi)
    assert diff.f0.is_zero() and diff.f1.is_zero()


def test_cone_of_identity_frozen():
    ws = WeightSystem((1,), 2)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1", 1), ws)
    c = cone(MfMorphism.identity(mf)).factorization
    assert fmt(c.p0) == [["x1", "1"], ["0", "-x1"]]
    assert c.verify()["ok"]


def test_trivial_brick_frozen():
    ws = WeightSystem((1,), 4)
    mf = elementary_factorization(parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
    b = trivial_brick(mf)
    assert b.m0.degrees == (2, -1)
    assert b.m1.degrees == (0, -1)
    assert b.split_degree == 1
    assert fmt(b.p1) == [["-x1", "1"], ["0", "x1^3"]]
    assert fmt(b.p0) == [["-x1^3", "1"], ["0", "x1"]]
    assert b.verify()["ok"]


def test_brick_verifies_everywhere():
    for label, mf in suites.full_suite():
        assert trivial_brick(mf).verify()["ok"], label


def test_w_multiple_homotopy():
    for label, mf in [("elem", None), ("quadric", suites.quadric())]:
        if mf is None:
            ws = WeightSystem((1,), 4)
            mf = elementary_factorization(
                parse_poly("x1", 1), parse_poly("x1^3", 1), ws)
        rng = random.Random(7)
        phi = random_chain_map(mf, mf, rng=rng)
        wphi = MfMorphism(
            mf, mf, phi.f0.poly_mul(mf.W), phi.f1.poly_mul(mf.W),
            degree=phi.degree + mf.weights.degree)
        h = w_multiple_homotopy(phi)
        assert h.boundary() == wphi, label


def test_json_round_trips():
    q = suites.quadric()
    back = MatrixFactorization.from_json(q.to_json(), 2, q.W.field)
    assert back == q
    rng = random.Random(3)
    phi = random_chain_map(q, q, rng=rng)
    data = phi.to_json()
    assert sorted(data.keys()) == ["degree", "f0", "f1"]


def test_module_validation():
    with pytest.raises(UsageError):
        GradedFreeModule(2, (0,), None)
    with pytest.raises(UsageError):
        GradedFreeModule(1, (0,), ((0,), (1,)))
