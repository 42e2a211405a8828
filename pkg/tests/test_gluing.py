from itertools import product

import pytest

from oracles import distributive_failures, glued_order, glued_ortho, order_isomorphic, orthomodular_failures
from omlat import (
    BadBlock, BlockCount, BlockMismatch, BlockedLattice, CoconeMismatch,
    CounterReport, LatticeHom, compose, enumerate_boolean_homs, forget, glue,
    glue_hom, glue_n, hasse_covers, identity, is_boolean_hom, is_distributive,
    is_ortholattice, is_orthomodular, mediate, powerset, two, universal_audit,
)
from omlat.gluing import blocked_coproduct, certify_unique, horizontal_sum, proof_shape_witness
from omlat.lattice import build_lattice, is_isomorphic, ranks

ATOMS = [1, 2, 3]
PAIRS = list(product(ATOMS, repeat=2))


def mo2_by_hand():
    # 0 < a, a', b, b' < 1, nothing else
    leq = [[i == j or i == 0 or j == 5 for j in range(6)] for i in range(6)]
    return build_lattice(6, leq, 0, 5)


@pytest.mark.parametrize("a,b", PAIRS)
def test_order_matches_definition(a, b):
    P = glue(powerset(a), powerset(b))
    n, leq, elems = glued_order([a, b])
    assert P.carrier.n == n
    assert P.carrier.leq.tolist() == leq
    assert list(P.carrier.ortho) == glued_ortho([a, b], elems)


def test_mo2():
    P = glue(powerset(2), powerset(2))
    assert P.carrier.n == 6
    assert order_isomorphic(P.carrier.leq.tolist(), mo2_by_hand().leq.tolist())
    for x in (1, 2):
        for y in (3, 4):
            assert not P.carrier.leq[x, y] and not P.carrier.leq[y, x]


def test_cube_glued_with_square():
    P = glue(powerset(3), powerset(2))
    assert P.carrier.n == 10
    assert len(hasse_covers(P.carrier)) == 12 + 4
    r = ranks(P.carrier)
    assert r[P.carrier.top] == 3
    assert sorted(r[x] for x in P.blocks[1] if x not in (0, 9)) == [1, 1]
    assert [len(b) for b in P.blocks] == [8, 4]


def test_unit_behaviour():
    for k in ATOMS:
        B = powerset(k)
        assert is_isomorphic(glue(two(), B).carrier, B.lattice)
        assert is_isomorphic(glue(B, two()).carrier, B.lattice)


@pytest.mark.parametrize("a,b", PAIRS)
def test_glued_is_orthomodular(a, b):
    P = glue(powerset(a), powerset(b))
    c = P.carrier
    assert is_ortholattice(c.lattice, c.ortho)
    assert is_orthomodular(c)
    lq, M, J = c.leq.tolist(), c.meet.tolist(), c.join.tolist()
    assert orthomodular_failures(c.n, lq, M, J, list(c.ortho)) == []


@pytest.mark.parametrize("a,b", PAIRS)
def test_distributivity_fails_iff_both_nontrivial(a, b):
    P = glue(powerset(a), powerset(b))
    c = P.carrier
    expect_fail = a >= 2 and b >= 2
    assert (not is_distributive(c.lattice)) == expect_fail
    oracle = distributive_failures(c.n, c.meet.tolist(), c.join.tolist())
    assert bool(oracle) == expect_fail
    w = proof_shape_witness(P)
    if expect_fail:
        x, y, z = w
        assert x in P.blocks[0] and y in P.blocks[1] and z in P.blocks[1]
        assert c.meet[x, c.join[y, z]] == x != 0
        assert c.join[c.meet[x, y], c.meet[x, z]] == 0
    else:
        assert w is None


@pytest.mark.parametrize("ks", [[1], [2], [3], [2, 2], [3, 2], [1, 3], [2, 2, 2], [3, 1, 2]])
def test_structural_invariants(ks):
    P = glue_n([powerset(k) for k in ks])
    c = P.carrier
    assert c.n == sum(2 ** k - 2 for k in ks) + 2
    for i, bi in enumerate(P.blocks):
        for j, bj in enumerate(P.blocks):
            if i < j:
                assert set(bi) & set(bj) == {c.bottom, c.top}
    assert set().union(*map(set, P.blocks)) == set(range(c.n))
    for inj, B, blk in zip(P.injections, P.provenance, P.blocks):
        assert len(set(inj.map)) == B.size
        assert set(inj.map) == set(blk)
        assert is_boolean_hom(inj) and inj.preserves_ortho
        assert {c.ortho[x] for x in blk} == set(blk)


def test_glue_n_examples():
    mo3 = glue_n([powerset(2)] * 3)
    assert mo3.carrier.n == 8
    assert is_orthomodular(mo3.carrier) and not is_distributive(mo3.carrier.lattice)
    for k in ATOMS:
        assert is_isomorphic(glue_n([powerset(k)]).carrier, powerset(k).lattice)
    assert glue_n([powerset(2), powerset(3)]) == glue(powerset(2), powerset(3))


@pytest.mark.parametrize("ks", [(2, 2, 2), (3, 2, 1), (2, 3, 2)])
def test_glue_n_associative(ks):
    A, B, C = (powerset(k) for k in ks)
    left, _ = horizontal_sum([glue(A, B).carrier, C.lattice])
    right, _ = horizontal_sum([A.lattice, glue(B, C).carrier])
    assert is_isomorphic(glue_n([A, B, C]).carrier, left)
    assert is_isomorphic(glue_n([A, B, C]).carrier, right)


def test_same_algebra_twice_gives_two_blocks():
    B = powerset(2)
    P = glue(B, B)
    assert len(P.blocks) == 2 and P.blocks[0] != P.blocks[1]


def test_injection_commutation():
    for a, b in PAIRS:
        B1, B2 = powerset(a), powerset(b)
        P = glue(B1, B2)
        (f,) = enumerate_boolean_homs(two(), B1)
        (g,) = enumerate_boolean_homs(two(), B2)
        i1, i2 = P.injections
        assert compose(i1, f) == compose(i2, g)


# glue_hom

def test_glue_hom_identity():
    for a, b in PAIRS:
        B1, B2 = powerset(a), powerset(b)
        assert glue_hom(identity(B1.lattice), identity(B2.lattice)) == identity(glue(B1, B2).carrier)


def test_glue_hom_automorphisms_of_mo2():
    autos = [f for f in enumerate_boolean_homs(powerset(2), powerset(2)) if f.bound_reflecting]
    assert len(autos) == 2
    for f1, f2 in product(autos, repeat=2):
        h = glue_hom(f1, f2)
        assert h.is_ortho_hom and len(set(h.map)) == 6


def test_glue_hom_collapsing_fails_on_cross_block_pair():
    B = powerset(2)
    homs = enumerate_boolean_homs(B, powerset(1))
    f1 = next(h for h in homs if not h.bound_reflecting)
    # extend 2^2 -> 2^1 on the first block, identity on the second
    h = glue_hom(f1, identity(B.lattice))
    assert not h.is_lattice_hom
    law, (x, y), _ = h.violation()
    P = glue(B, powerset(2))
    assert law == "join"
    assert (x in P.blocks[0]) != (y in P.blocks[0])


def reflecting(a, b):
    return [f for f in enumerate_boolean_homs(powerset(a), powerset(b)) if f.bound_reflecting]


def test_functor_composition_exhaustive():
    checked = 0
    for a1, a2, b1, b2, c1, c2 in product([1, 2], repeat=6):
        for f1, f2 in product(reflecting(a1, b1), reflecting(a2, b2)):
            for g1, g2 in product(reflecting(b1, c1), reflecting(b2, c2)):
                left = glue_hom(compose(g1, f1), compose(g2, f2))
                right = compose(glue_hom(g1, g2), glue_hom(f1, f2))
                assert left == right and left.is_ortho_hom
                checked += 1
    assert checked > 0


def test_glue_hom_block_mismatch():
    f = identity(powerset(2).lattice)
    with pytest.raises(BlockMismatch):
        glue_hom(f, f, source=glue(powerset(3), powerset(2)))


# forget

def test_forget_round_trip():
    for a, b in PAIRS:
        B1, B2 = powerset(a), powerset(b)
        P = glue(B1, B2)
        (C1, e1), (C2, e2) = forget(P)
        assert (C1, C2) == (B1, B2)
        assert e1 == P.injections[0] and e2 == P.injections[1]


def test_forget_on_mo2_blocks():
    P = glue(powerset(2), powerset(2))
    L = BlockedLattice(P.carrier, P.blocks)
    (C1, _), (C2, _) = forget(L)
    assert C1.size == C2.size == 4


def test_forget_needs_two_blocks():
    with pytest.raises(BlockCount):
        forget(glue_n([powerset(2)] * 3))


def test_blocked_lattice_rejects_non_boolean_block():
    P = glue(powerset(2), powerset(2))
    with pytest.raises(BadBlock):
        BlockedLattice(P.carrier, (tuple(range(6)), P.blocks[1]))
    with pytest.raises(BadBlock):
        BlockedLattice(P.carrier, ((0, 1, 3, 5), P.blocks[1]))
    with pytest.raises(BadBlock):
        BlockedLattice(P.carrier, ((1, 2), P.blocks[1]))


# mediate

def test_mediate_identity():
    P = glue(powerset(2), powerset(3))
    u = mediate(P, *P.injections, P.carrier)
    assert u == identity(P.carrier)
    assert certify_unique(P, u, P.injections)


def test_mediate_bound_reflecting_into_glued_is_glue_hom():
    count = 0
    for a1, a2, c1, c2 in product([1, 2], repeat=4):
        P, Q = glue(powerset(a1), powerset(a2)), glue(powerset(c1), powerset(c2))
        for f1, f2 in product(reflecting(a1, c1), reflecting(a2, c2)):
            h1, h2 = compose(Q.injections[0], f1), compose(Q.injections[1], f2)
            u = mediate(P, h1, h2, Q)
            assert not isinstance(u, CounterReport)
            assert u == glue_hom(f1, f2)
            assert certify_unique(P, u, (h1, h2))
            count += 1
    assert count > 0


def test_mediate_into_boolean_codomain_fails():
    B = powerset(2)
    P = glue(B, B)
    r = mediate(P, identity(B.lattice), identity(B.lattice), B.lattice)
    assert isinstance(r, CounterReport)
    assert r.law == "join" and r.witness == (1, 3)
    assert r.to_dict()["candidate"] == [0, 1, 2, 1, 2, 3]


def test_mediate_cocone_mismatch():
    B = powerset(1)
    P = glue(B, B)
    h1 = LatticeHom(B.lattice, B.lattice, (0, 1))
    h2 = LatticeHom(B.lattice, B.lattice, (1, 1))
    with pytest.raises(CoconeMismatch):
        mediate(P, h1, h2, B.lattice)


def test_mediate_rejects_wrong_legs():
    P = glue(powerset(2), powerset(2))
    with pytest.raises(BlockMismatch):
        mediate(P, identity(powerset(3).lattice), identity(powerset(2).lattice), powerset(2).lattice)


# universal audit

def test_universal_audit_mo2():
    B = powerset(2)
    mo2 = glue(B, B)
    report = universal_audit(B, B, [("mo2", mo2)])
    rows = [r for r in report["rows"] if r["class"] == "glued:bound-reflecting/separated"]
    assert rows and all(r["mediates"] and r["unique"] for r in rows)
    assert report["summary"]["glued:bound-reflecting/separated"]["confirmed"]


def test_universal_audit_coproduct_fails():
    B = powerset(2)
    report = universal_audit(B, B, [("2^4", blocked_coproduct(B, B))])
    assert any(not r["mediates"] for r in report["rows"])
    assert not report["summary"]["boolean:bound-reflecting/separated"]["confirmed"]


def test_universal_audit_empty_corpus():
    report = universal_audit(powerset(2), powerset(2), [])
    assert report["rows"] == [] and report["summary"] == {}
