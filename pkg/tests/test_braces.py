import itertools
import random

import numpy as np
import pytest

from oracles import brace_automorphism_count, units
from ybrace.braces import (
    FAMILIES,
    brace_automorphisms,
    brace_cyc_4q,
    brace_cyc_p2q,
    brace_dih1_4p,
    brace_dih2_4p,
    brace_dih3_4p,
    brace_from_table,
    brace_isomorphic,
    brace_noncyc_4q,
    brace_noncyc_p2q,
    brace_pq,
    brace_semi_p2q,
    family_brace,
    materialize,
    trivial_brace,
    verify_brace_axioms,
)
from ybrace.errors import BraceAxiomError, DomainError
from ybrace.groups import AbelianGroup, identify_group, semidirect_group

ALL_FAMILY_BRACES = [
    brace_pq(3, 2), brace_pq(7, 3), brace_pq(5, 2),
    brace_cyc_4q(3), brace_cyc_4q(5),
    brace_cyc_p2q(3, 2), brace_cyc_p2q(5, 2),
    brace_noncyc_4q(3), brace_noncyc_4q(5),
    brace_noncyc_p2q(3, 2), brace_noncyc_p2q(3, 5),
    brace_semi_p2q(3, 2), brace_semi_p2q(5, 2),
    brace_dih1_4p(3), brace_dih2_4p(3), brace_dih3_4p(3),
    brace_dih1_4p(5), brace_dih2_4p(5), brace_dih3_4p(5),
]  # fmt: skip


# products: worked examples


def test_pq_examples():
    B = brace_pq(3, 2, 2)
    assert B.mul((1, 1), (2, 1)) == (2, 0)
    for c, d in itertools.product(range(3), range(2)):
        assert B.mul((0, 0), (c, d)) == (c, d)
    assert brace_pq(7, 3, 2).mul((1, 1), (1, 0)) == (3, 1)


def test_cyc4q_examples():
    B = brace_cyc_4q(3)
    assert B.mul((0, 1, 1), (0, 1, 1)) == (1, 0, 2)
    assert B.mult_order((0, 1, 1)) == 12


def test_cyc_p2q_examples():
    B = brace_cyc_p2q(3, 2)
    assert B.mul((1, 1), (1, 1)) == (5, 0)
    assert B.mult_order((1, 1)) == 18


def test_noncyc4q_examples():
    B = brace_noncyc_4q(3)
    assert B.mul((1, 1), (0, 1)) == (1, 0)
    assert all(2 * 3 % B.mult_order(x) == 0 for x in B.elements if x[1] != 0)


def test_noncyc_p2q_examples():
    B = brace_noncyc_p2q(3, 2)
    assert B.mul((1, 1, 0), (0, 1, 0)) == (2, 2, 0)
    assert B.mult_order((0, 1, 0)) == 3


def test_semi_p2q_examples():
    B = brace_semi_p2q(3, 2, 8)
    assert B.mul((1, 1), (1, 0)) == (0, 1)
    assert str(identify_group(B.mult_group)) == "D18"


def test_dihedral_family_examples():
    assert brace_dih1_4p(3).mul((1, 1), (1, 1)) == (0, 0)
    assert brace_dih2_4p(3).mul((1, 2), (1, 0)) == (0, 2)
    assert brace_dih3_4p(3).mul((1, 0, 1), (1, 0, 1)) == (0, 0, 0)
    for B in (brace_dih1_4p(3), brace_dih2_4p(3), brace_dih3_4p(3)):
        assert str(identify_group(B.mult_group)) == "D12"


def test_lambda_examples():
    assert brace_pq(3, 2).lam((0, 1), (1, 0)) == (2, 0)
    assert brace_cyc_4q(3).lam((0, 1, 0), (1, 1, 1)) == (0, 1, 1)


def test_trivial_brace():
    B = trivial_brace(AbelianGroup((6,)))
    assert all(B.mul(a, b) == B.add(a, b) for a in B.elements for b in B.elements)
    assert all(B.lam(a, b) == b for a in B.elements for b in B.elements)
    assert verify_brace_axioms(trivial_brace(AbelianGroup((2, 2))))


# parameter checks


@pytest.mark.parametrize(
    "build",
    [
        lambda: brace_pq(5, 3),
        lambda: brace_pq(3, 2, 1),
        lambda: brace_cyc_4q(2),
        lambda: brace_cyc_p2q(2, 3),
        lambda: brace_noncyc_4q(2),
        lambda: brace_noncyc_p2q(2, 3),
        lambda: brace_semi_p2q(5, 3),
        lambda: brace_dih1_4p(2),
        lambda: brace_dih2_4p(2),
        lambda: brace_dih3_4p(2),
        lambda: brace_pq(4, 3),
    ],
)
def test_inadmissible_parameters(build):
    with pytest.raises(DomainError):
        build()


def test_congruence_message():
    with pytest.raises(DomainError, match=r"p ≡ 1 \(mod q\) required"):
        brace_pq(5, 3)


# axioms


@pytest.mark.parametrize("B", ALL_FAMILY_BRACES, ids=lambda B: B.label)
def test_family_axioms(B):
    assert verify_brace_axioms(B)


@pytest.mark.parametrize("B", ALL_FAMILY_BRACES, ids=lambda B: B.label)
def test_lambda_is_an_action_by_automorphisms(B):
    A = B.additive
    lam = B.lambda_table
    M = B.mult_table
    add = A.add_table
    n = B.order
    for a in range(n):
        assert sorted(lam[a]) == list(range(n))
        assert np.array_equal(lam[a][add], add[lam[a]][:, lam[a]])
        for b in range(n):
            assert np.array_equal(lam[M[a, b]], lam[a][lam[b]])


def test_additive_table_as_mult_is_trivial():
    A = AbelianGroup((2, 3))
    B = brace_from_table(A, A.add_table)
    assert brace_isomorphic(B, trivial_brace(A)) is not None


def test_materialized_pq_matches_formula():
    B = brace_pq(3, 2, 2)
    T = materialize(B)
    A = B.additive
    for (a, b), (c, d) in itertools.product(A.elements, repeat=2):
        expect = ((a + 2**b * c) % 3, (b + d) % 2)
        assert A.decode(T.mult_table[A.encode((a, b)), A.encode((c, d))]) == expect


def test_latin_square_is_rejected():
    A = AbelianGroup((4,))
    # the product a o b = a - b is a Latin square but not associative
    table = np.array([[(a - b) % 4 for b in range(4)] for a in range(4)])
    with pytest.raises(BraceAxiomError):
        brace_from_table(A, table)


def test_incompatible_group_is_rejected():
    # Z4 transported along the non-additive bijection swapping 1 and 2: a group, not a brace
    A = AbelianGroup((4,))
    pi = [0, 2, 1, 3]
    table = np.array([[pi[(pi[a] + pi[b]) % 4] for b in range(4)] for a in range(4)])
    with pytest.raises(BraceAxiomError):
        brace_from_table(A, table)


def test_corrupted_table_reports_triple():
    B = materialize(brace_pq(3, 2))
    table = B.mult_table.copy()
    table[1, 2], table[1, 3] = table[1, 3], table[1, 2]
    with pytest.raises(BraceAxiomError) as exc:
        brace_from_table(B.additive, table)
    assert exc.value.triple is not None


# automorphisms


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3), (13, 3)])
def test_aut_pq(p, q):
    assert len(brace_automorphisms(brace_pq(p, q))) == p - 1


@pytest.mark.parametrize("q", [3, 5, 7])
def test_aut_cyc4q(q):
    assert len(brace_automorphisms(brace_cyc_4q(q))) == 2 * (q - 1)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_aut_noncyc4q(q):
    assert len(brace_automorphisms(brace_noncyc_4q(q))) == units(4 * q)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (3, 5)])
def test_aut_noncyc_p2q(p, q):
    assert len(brace_automorphisms(brace_noncyc_p2q(p, q))) == p * (p - 1) * (q - 1)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (7, 3)])
def test_aut_semi_p2q(p, q):
    assert len(brace_automorphisms(brace_semi_p2q(p, q))) == units(p * p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_aut_dihedral(p):
    assert len(brace_automorphisms(brace_dih1_4p(p))) == units(4 * p)
    assert len(brace_automorphisms(brace_dih2_4p(p))) == p - 1


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (5, 3)])
def test_aut_cyc_p2q_matches_brute_force(p, q):
    """Multiplicativity only forces alpha = 1 (mod p), so there are p(q-1) automorphisms."""
    B = brace_cyc_p2q(p, q)
    oracle = brace_automorphism_count(B.additive.moduli, B.mul)
    assert len(brace_automorphisms(B)) == oracle == p * (q - 1)


@pytest.mark.xfail(strict=True, reason="stated value q-1 conflicts with the brute-force count p(q-1); see ledger")
def test_aut_cyc_p2q_stated_value():
    assert len(brace_automorphisms(brace_cyc_p2q(3, 2))) == 1


@pytest.mark.parametrize(
    "B", [brace_pq(3, 2), brace_cyc_4q(3), brace_noncyc_4q(3), brace_dih1_4p(3), brace_dih3_4p(3)], ids=lambda B: B.label
)
def test_automorphisms_match_brute_force(B):
    assert len(brace_automorphisms(B)) == brace_automorphism_count(B.additive.moduli, B.mul)


def test_automorphisms_are_multiplicative():
    B = brace_noncyc_p2q(3, 2)
    M = B.mult_table
    for f in brace_automorphisms(B):
        fm = f.mapping
        assert np.array_equal(fm[M], M[fm][:, fm])


# isomorphism


def test_isomorphic_to_itself():
    B = brace_pq(3, 2)
    w = brace_isomorphic(B, B)
    assert w is not None and w.is_bijective()


def test_isomorphic_after_relabeling():
    B = materialize(brace_pq(3, 2, 2))
    n = B.order
    A = B.additive
    # relabel through an additive automorphism: x -> (2a, b)
    f = [A.encode(((2 * a) % 3, b)) for a, b in A.elements]
    finv = [0] * n
    for i, j in enumerate(f):
        finv[j] = i
    table = np.array([[f[B.mult_table[finv[x], finv[y]]] for y in range(n)] for x in range(n)])
    C = brace_from_table(A, table)
    assert brace_isomorphic(B, C) is not None


def test_non_isomorphic_braces():
    assert brace_isomorphic(trivial_brace(AbelianGroup((6,))), brace_pq(3, 2)) is None
    assert brace_isomorphic(brace_dih1_4p(3), brace_dih2_4p(3)) is None


def test_pq_generators_give_isomorphic_braces():
    assert brace_isomorphic(brace_pq(7, 3, 2), brace_pq(7, 3, 4)) is not None


# multiplicative groups


@pytest.mark.parametrize(
    "B,expected",
    [
        (brace_pq(7, 3, 2), lambda: str(identify_group(semidirect_group(7, 3, 2)))),
        (brace_cyc_4q(5), lambda: "C20"),
        (brace_cyc_p2q(3, 2), lambda: "C18"),
        (brace_noncyc_4q(5), lambda: "C2xC10"),
        (brace_noncyc_p2q(3, 5), lambda: "C3xC15"),
        (brace_semi_p2q(7, 3), lambda: str(identify_group(semidirect_group(49, 3, 18)))),
        (brace_semi_p2q(5, 2), lambda: "D50"),
        (brace_dih2_4p(5), lambda: "D20"),
    ],
    ids=lambda v: getattr(v, "label", ""),
)
def test_multiplicative_groups(B, expected):
    assert str(identify_group(B.mult_group)) == expected()


def test_family_round_trip_by_tag():
    for B in ALL_FAMILY_BRACES:
        C = family_brace(B.family, additive=B.additive, **B.params)
        assert np.array_equal(B.mult_table, C.mult_table)
    assert set(FAMILIES) >= {B.family for B in ALL_FAMILY_BRACES}


def test_random_triples_on_large_brace():
    B = brace_pq(13, 3)
    rng = random.Random(0)
    for _ in range(200):
        a, b, c = (rng.choice(B.elements) for _ in range(3))
        assert B.mul(a, B.add(b, c)) == B.add(B.mul(a, b), B.add(B.additive.neg(a), B.mul(a, c)))
