"""Table-level algebras: validation, products, center, intervals, decomposition."""

import random

import numpy as np
import pytest

import mvkit as mv
from mvkit.errors import (
    DecompositionError,
    MVAxiomError,
    NotCentralError,
    ResourceCapError,
    SchemaError,
)

from conftest import build_family, exists_isomorphism, shuffled

MAX_OPLUS_DOC = dict(
    size=3, zero=0,
    oplus_table=[[0, 1, 2], [1, 1, 2], [2, 2, 2]],   # join instead of truncated sum
    neg_table=[2, 1, 0],
)


def revalidate(algebra):
    return mv.from_tables(*mv.as_tables(algebra), labels=algebra.labels)


def test_chain_tables_accepted():
    for n in range(2, 8):
        revalidate(mv.chain_algebra(n))


def test_chain_tables_match_chain_arithmetic():
    for n in range(2, 7):
        alg = mv.chain_algebra(n)
        chain = mv.Chain(n)
        for i in range(n):
            assert alg.neg(i) == chain.element(i).neg().numerator
            for j in range(n):
                a, b = chain.element(i), chain.element(j)
                assert alg.op(i, j) == a.oplus(b).numerator
                assert alg.dist(i, j) == a.distance(b).numerator
                assert alg.join(i, j) == a.join(b).numerator
                assert alg.meet(i, j) == a.meet(b).numerator
                assert alg.leq(i, j) == a.leq(b)


def test_max_oplus_pseudo_algebra_rejected_with_witness():
    with pytest.raises(MVAxiomError) as info:
        mv.from_tables(**MAX_OPLUS_DOC)
    err = info.value
    assert err.axiom == "mv2"
    assert sorted(err.witness) == [1, 2]
    # the reported witness genuinely falsifies neg(neg x (+) y) (+) y = neg(neg y (+) x) (+) x
    O = MAX_OPLUS_DOC["oplus_table"]
    N = MAX_OPLUS_DOC["neg_table"]
    x, y = err.witness
    assert O[N[O[N[x]][y]]][y] != O[N[O[N[y]][x]]][x]


def test_trivial_tables_accepted():
    alg = mv.from_tables(1, 0, [[0]], [0])
    assert alg.size == 1 and alg.one == 0


def test_malformed_tables_raise_schema_errors():
    with pytest.raises(SchemaError):
        mv.from_tables(2, 0, [[0, 1]], [1, 0])            # wrong shape
    with pytest.raises(SchemaError):
        mv.from_tables(2, 0, [[0, 1], [1, 5]], [1, 0])    # out of range
    with pytest.raises(SchemaError):
        mv.from_tables(2, 3, [[0, 1], [1, 1]], [1, 0])    # bad zero
    with pytest.raises(SchemaError):
        mv.from_tables(2, 0, [[0, 1], [1, 1]], [1, 0], labels=("a",))


def test_each_axiom_detected():
    with pytest.raises(MVAxiomError) as info:
        mv.from_tables(3, 0, [[0, 1, 2], [2, 1, 2], [2, 2, 2]], [2, 1, 0])
    assert info.value.axiom == "commutative"
    with pytest.raises(MVAxiomError) as info:
        mv.from_tables(3, 1, [[0, 1, 2], [1, 1, 2], [2, 2, 2]], [2, 1, 0])
    assert info.value.axiom == "identity"
    with pytest.raises(MVAxiomError) as info:
        # negation that is not an involution
        mv.from_tables(3, 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], [2, 2, 0])
    assert info.value.axiom == "involution"
    with pytest.raises(MVAxiomError) as info:
        # identity negation is an involution but breaks neg 0 (+) x = neg 0
        mv.from_tables(3, 0, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], [0, 1, 2])
    assert info.value.axiom == "mv1"


def test_from_tables_respects_cap():
    alg = mv.chain_algebra(6)
    with pytest.raises(ResourceCapError):
        mv.from_tables(*mv.as_tables(alg), max_size=5)


def test_product_examples():
    assert mv.product([mv.chain_algebra(2), mv.chain_algebra(3)]).size == 6
    assert mv.product([]).size == 1
    square = mv.product([mv.chain_algebra(2)] * 2)
    members, atoms = mv.boolean_center(square)
    assert len(members) == 4 and len(atoms) == 2          # Boolean 2x2


def test_product_cap():
    with pytest.raises(ResourceCapError):
        mv.product([mv.chain_algebra(5)] * 6, max_size=4096)


def test_family_products_pass_validation(family):
    for combo, algebra in family:
        revalidate(algebra)


def test_boolean_center_examples():
    A = mv.product([mv.chain_algebra(2), mv.chain_algebra(3)])
    members, atoms = mv.boolean_center(A)
    assert {A.label(m) for m in members} == {"(0,0)", "(0,1)", "(1,0)", "(1,1)"}
    assert {A.label(a) for a in atoms} == {"(0,1)", "(1,0)"}

    L5 = mv.chain_algebra(5)
    members, atoms = mv.boolean_center(L5)
    assert members == (0, 4) and atoms == (4,)

    cube = mv.product([mv.chain_algebra(2)] * 3)
    members, atoms = mv.boolean_center(cube)
    assert len(members) == 8 and len(atoms) == 3


def test_center_size_counts_factors(family):
    for combo, algebra in family:
        members, atoms = mv.boolean_center(algebra)
        assert len(members) == 2 ** len(combo)
        assert len(atoms) == len(combo)


def test_interval_algebra_examples():
    A = mv.product([mv.chain_algebra(2), mv.chain_algebra(3)])
    label_to_index = {lbl: i for i, lbl in enumerate(A.labels)}

    sub, emb = mv.interval_algebra(A, label_to_index["(0,1)"])
    assert mv.are_isomorphic(sub, mv.chain_algebra(3))
    revalidate(sub)

    whole, _ = mv.interval_algebra(A, A.one)
    assert whole.size == A.size and mv.are_isomorphic(whole, A)

    bottom, _ = mv.interval_algebra(A, A.zero)
    assert bottom.size == 1

    with pytest.raises(NotCentralError):
        mv.interval_algebra(A, label_to_index["(0,1/2)"])


def test_interval_algebras_reproduce_factors(family):
    for combo, algebra in family:
        dec = mv.decompose(algebra)
        for atom, order in zip(dec.atoms, dec.chain_orders):
            sub, _ = mv.interval_algebra(algebra, atom)
            assert mv.are_isomorphic(sub, mv.chain_algebra(order))


def test_decompose_examples():
    assert mv.decompose(mv.chain_algebra(7)).sorted_orders == (7,)
    cube = mv.product([mv.chain_algebra(2)] * 3)
    assert mv.decompose(cube).sorted_orders == (2, 2, 2)
    with pytest.raises(DecompositionError):
        mv.decompose(mv.trivial_algebra())


def test_decompose_iso_is_bijective_homomorphism(family):
    for combo, algebra in family:
        dec = mv.decompose(algebra)
        assert len(set(dec.iso)) == algebra.size
        for x in range(algebra.size):
            assert dec.iso_inverse[dec.iso[x]] == x
        # spot-check the homomorphism law on a sample of pairs
        rng = random.Random(7)
        for _ in range(20):
            x, y = rng.randrange(algebra.size), rng.randrange(algebra.size)
            expected = tuple(
                min(a + b, n - 1)
                for a, b, n in zip(dec.iso[x], dec.iso[y], dec.chain_orders)
            )
            assert dec.iso[algebra.op(x, y)] == expected


def test_decompose_recovers_orders_after_shuffles(family):
    rng = random.Random(20260808)
    for combo, algebra in family:
        for _ in range(3):
            twisted = shuffled(algebra, rng)
            assert mv.decompose(twisted).sorted_orders == tuple(sorted(combo))


def test_relabel_by_inverse_restores_tables():
    A = mv.product([mv.chain_algebra(3), mv.chain_algebra(4)])
    rng = random.Random(5)
    perm = list(range(A.size))
    rng.shuffle(perm)
    twisted = mv.relabel(A, perm)
    inverse = [0] * A.size
    for x, y in enumerate(perm):
        inverse[y] = x
    back = mv.relabel(twisted, inverse)
    assert np.array_equal(back.oplus_table, A.oplus_table)
    assert np.array_equal(back.neg_table, A.neg_table)
    assert back.zero == A.zero


def test_are_isomorphic_examples():
    A = mv.product([mv.chain_algebra(2), mv.chain_algebra(3)])
    B = mv.product([mv.chain_algebra(3), mv.chain_algebra(2)])
    assert mv.are_isomorphic(A, B)
    assert mv.are_isomorphic(A, A)
    assert not mv.are_isomorphic(mv.chain_algebra(4),
                                 mv.product([mv.chain_algebra(2)] * 2))
    assert not mv.are_isomorphic(mv.chain_algebra(6), A)


def test_are_isomorphic_agrees_with_search_oracle():
    candidates = [alg for combo, alg in build_family() if alg.size <= 12]
    rng = random.Random(99)
    candidates += [shuffled(a, rng) for a in candidates if a.size <= 9]
    for a in candidates:
        for b in candidates:
            assert mv.are_isomorphic(a, b) == exists_isomorphism(a, b), (
                a.size, b.size)


def test_decompose_guards_table_corruption():
    # constructed directly, bypassing the axiom sweep
    pseudo = mv.FiniteMVAlgebra(3, 0, [[0, 1, 2], [1, 1, 2], [2, 2, 2]], [2, 1, 0])
    with pytest.raises(DecompositionError):
        mv.decompose(pseudo)

    broken = np.array(mv.chain_algebra(4).oplus_table)
    broken[1, 2] = broken[2, 1] = 1
    corrupt = mv.FiniteMVAlgebra(4, 0, broken, [3, 2, 1, 0])
    with pytest.raises(DecompositionError):
        mv.decompose(corrupt)


def test_derived_order_is_a_distributive_lattice():
    for alg in (mv.product([mv.chain_algebra(2), mv.chain_algebra(3)]),
                mv.chain_algebra(4),
                mv.product([mv.chain_algebra(2)] * 3)):
        leq = alg.leq_matrix
        n = alg.size
        assert all(leq[x, x] for x in range(n))
        for x in range(n):
            for y in range(n):
                if leq[x, y] and leq[y, x]:
                    assert x == y
                for z in range(n):
                    if leq[x, y] and leq[y, z]:
                        assert leq[x, z]
                    j, m = alg.join(y, z), alg.meet(y, z)
                    assert alg.meet(x, j) == alg.join(alg.meet(x, y), alg.meet(x, z))
        for x in range(n):
            for y in range(n):
                j, m = alg.join(x, y), alg.meet(x, y)
                assert leq[x, j] and leq[y, j] and leq[m, x] and leq[m, y]
                for z in range(n):
                    if leq[x, z] and leq[y, z]:
                        assert leq[j, z]
                    if leq[z, x] and leq[z, y]:
                        assert leq[z, m]
