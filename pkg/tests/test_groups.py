import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import additive_automorphism_count, repeated_addition_order, table_subgroups
from ybrace.config import configured
from ybrace.errors import DomainError, ResourceBoundError, UsageError
from ybrace.groups import (
    AbelianGroup,
    abelian_automorphisms,
    abelian_group_table,
    abelian_types,
    cyclic_group,
    dihedral_group,
    dihedral_split,
    element_order,
    generate_perm_group,
    holomorph,
    identify_group,
    invariant_factors_from_orders,
    is_transitive,
    normal_core,
    perm_from_cycles,
    random_relabeling,
    semidirect_group,
    small_groups,
    subgroups,
    verify_group_table,
)

EXPECTED = json.loads((Path(__file__).parent / "fixtures" / "expected.json").read_text())


# element orders


@pytest.mark.parametrize(
    "moduli,g,order",
    [((3, 2), (0, 0), 1), ((3, 2), (1, 1), 6), ((9, 2), (3, 1), 6)],
)
def test_element_order_examples(moduli, g, order):
    assert element_order(AbelianGroup(moduli), g) == order


def test_element_order_rejects_non_members():
    with pytest.raises(DomainError):
        element_order(AbelianGroup((3, 2)), (3, 0))
    with pytest.raises(DomainError):
        element_order(AbelianGroup((3, 2)), (1,))


@given(st.lists(st.integers(2, 9), min_size=1, max_size=3).flatmap(
    lambda ms: st.tuples(st.just(tuple(ms)), st.tuples(*(st.integers(0, m - 1) for m in ms)))
))
def test_element_order_matches_repeated_addition(case):
    moduli, g = case
    assert element_order(AbelianGroup(moduli), g) == repeated_addition_order(moduli, g)


@given(st.lists(st.integers(2, 6), min_size=0, max_size=3), st.data())
def test_encode_decode_round_trip(moduli, data):
    A = AbelianGroup(tuple(moduli))
    i = data.draw(st.integers(0, A.order - 1))
    assert A.encode(A.decode(i)) == i


def test_encoding_is_row_major():
    A = AbelianGroup((3, 2))
    assert [A.decode(i) for i in range(6)] == [(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]


# permutation groups


def test_generate_perm_group_examples():
    assert generate_perm_group([(0, 1, 2)]).order == 1
    assert generate_perm_group([perm_from_cycles(3, [(0, 1, 2)])]).order == 3
    S3 = generate_perm_group([perm_from_cycles(3, [(0, 1)]), perm_from_cycles(3, [(0, 1, 2)])])
    assert S3.order == 6


def test_generate_perm_group_needs_degree_without_generators():
    with pytest.raises(UsageError):
        generate_perm_group([])
    assert generate_perm_group([], degree=3).order == 1


def test_generate_perm_group_is_deterministic():
    gens = [perm_from_cycles(4, [(0, 1)]), perm_from_cycles(4, [(0, 1, 2, 3)])]
    assert generate_perm_group(gens).elements == generate_perm_group(gens).elements


def test_is_transitive_examples():
    assert is_transitive(generate_perm_group([], degree=1))
    assert not is_transitive(generate_perm_group([], degree=2))
    assert is_transitive(generate_perm_group([perm_from_cycles(5, [(0, 1, 2, 3, 4)])]))


# subgroups and cores


def test_subgroup_counts():
    assert len(subgroups(cyclic_group(6))) == 4
    assert len(subgroups(dihedral_group(3))) == 6
    assert len(subgroups(cyclic_group(1))) == 1


@pytest.mark.parametrize(
    "order,name",
    [(6, "C6"), (6, "D6"), (4, "C2xC2"), (8, "C8"), (8, "D8"), (8, "G8(ab=C2xC2)"), (9, "C3xC3"), (10, "D10")],
)
def test_subgroups_match_closed_subsets(order, name):
    G = dict(small_groups(order))[name]
    assert {frozenset(H) for H in subgroups(G)} == table_subgroups(G.rows)


def test_subgroups_bound():
    with configured(subgroups=5):
        with pytest.raises(ResourceBoundError, match="subgroups=5"):
            subgroups(cyclic_group(6))


def test_normal_core_examples():
    D6 = dihedral_group(3)
    assert normal_core(D6, range(6)) == frozenset(range(6))
    assert normal_core(D6, [D6.identity]) == frozenset([D6.identity])
    s = next(g for g in range(6) if D6.orders[g] == 2)
    assert normal_core(D6, [D6.identity, s]) == frozenset([D6.identity])


def test_normal_core_rejects_non_subgroup():
    D6 = dihedral_group(3)
    s = [g for g in range(6) if D6.orders[g] == 2]
    with pytest.raises(DomainError):
        normal_core(D6, [D6.identity] + s[:2])


# automorphisms and holomorphs


@pytest.mark.parametrize("moduli", [(3, 2), (2, 2), (2,), (4,), (2, 4), (3, 3)])
def test_abelian_automorphisms_match_brute_force(moduli):
    assert len(abelian_automorphisms(AbelianGroup(moduli))) == additive_automorphism_count(moduli)


def test_abelian_automorphism_examples():
    assert len(abelian_automorphisms(AbelianGroup((3, 2)))) == 2
    assert len(abelian_automorphisms(AbelianGroup((2, 2)))) == 6
    assert len(abelian_automorphisms(AbelianGroup((2,)))) == 1


@pytest.mark.parametrize("moduli,order", [((2,), 2), ((3,), 6), ((9, 2), 108)])
def test_holomorph_orders(moduli, order):
    H = holomorph(AbelianGroup(moduli))
    assert H.order == order
    assert verify_group_table(H) is None


def test_holomorph_bound():
    with configured(holomorph=50):
        with pytest.raises(ResourceBoundError, match="holomorph=50"):
            holomorph(AbelianGroup((9, 2)))


def test_abelian_types():
    assert [A.moduli for A in abelian_types(12)] == [(12,), (2, 6)]
    assert [A.moduli for A in abelian_types(8)] == [(8,), (2, 4), (2, 2, 2)]


def test_invariant_factors_from_orders():
    A = AbelianGroup((3, 3, 2))
    assert invariant_factors_from_orders(A.order, A.orders) == [3, 6]


# identification


def test_identify_examples():
    assert str(identify_group(cyclic_group(18))) == "C18"
    assert str(identify_group(abelian_group_table(AbelianGroup((3, 3, 2))))) == "C3xC6"
    s = perm_from_cycles(3, [(1, 2)])
    r = perm_from_cycles(3, [(0, 1, 2)])
    assert str(identify_group(generate_perm_group([s, r]))) == "D6"


def test_small_group_names():
    for n, names in EXPECTED["group_names"].items():
        listed = small_groups(int(n))
        assert [name for name, _ in listed] == names
        assert [str(identify_group(G)) for _, G in listed] == names


def test_semidirect_descriptor_is_canonical():
    # both generators of the order-3 units mod 7 give the same group
    assert str(identify_group(semidirect_group(7, 3, 2))) == str(identify_group(semidirect_group(7, 3, 4)))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(n, name) for n in (6, 8, 12) for name, _ in small_groups(n)]), st.integers(0, 10**6))
def test_identify_group_is_relabeling_invariant(case, seed):
    n, name = case
    G = dict(small_groups(n))[name]
    H = random_relabeling(G, random.Random(seed))
    assert str(identify_group(H)) == name


def test_dihedral_split_examples():
    for n in (3, 6):
        rot, refl = dihedral_split(dihedral_group(n))
        assert len(rot) == n and len(refl) == n
        assert str(identify_group(dihedral_group(n))) == f"D{2 * n}"


def test_dihedral_split_d4_needs_rotations():
    D4 = dihedral_group(2)
    with pytest.raises(DomainError):
        dihedral_split(D4)
    r = next(g for g in range(4) if g != D4.identity)
    rot, refl = dihedral_split(D4, rotations=[D4.identity, r])
    assert len(rot) == 2 and len(refl) == 2


def test_dihedral_split_rejects_non_dihedral():
    with pytest.raises(DomainError):
        dihedral_split(cyclic_group(6))
