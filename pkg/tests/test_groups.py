import numpy as np
import pytest

from reptower.errors import ValidationError
from reptower.groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    commutator_subgroup,
    core,
    coset_system,
    generated_subgroup,
    group_from_permutations,
    load_group,
    quotient_group,
    subgroups_up_to_conjugacy,
)


def test_load_group_xor_table():
    G = load_group({"mult": [[0, 1], [1, 0]]})
    assert G.order == 2
    assert G.identity == 0
    assert G.inv == (0, 1)


def test_load_group_from_permutation_generators():
    # transposition and a 3-cycle generate the full permutation group on 3 points
    G = load_group({"permutations": [[1, 0, 2], [1, 2, 0]]})
    assert G.order == 6


def test_load_group_rejects_repeated_row():
    with pytest.raises(ValidationError, match="Latin square"):
        load_group({"mult": [[0, 1], [0, 1]]})


def test_load_group_rejects_non_associative_latin_square():
    # a Latin square that is not a group table (order-5 quasigroup)
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValidationError, match="associative"):
        load_group({"mult": table})


def test_load_group_declared_order_mismatch():
    with pytest.raises(ValidationError, match="order"):
        load_group({"order": 3, "mult": [[0, 1], [1, 0]]})


def test_generator_closure_cap():
    with pytest.raises(ValidationError, match="cap"):
        group_from_permutations([[1, 2, 3, 4, 0]], max_order=3)


def test_all_subgroups_z2(z2):
    subs = all_subgroups(z2)
    assert [H.order for H in subs] == [1, 2]


def test_all_subgroups_s3(s3):
    subs = all_subgroups(s3)
    assert len(subs) == 6
    assert sorted(H.order for H in subs) == [1, 2, 2, 2, 3, 6]


def test_all_subgroups_v4(v4):
    assert len(all_subgroups(v4)) == 5


def test_all_subgroups_q8(q8):
    # 1 + 1 (center) + 3 cyclic of order 4 + whole group
    assert [H.order for H in all_subgroups(q8)] == [1, 2, 4, 4, 4, 8]


def test_subgroup_enumeration_cap(s3):
    with pytest.raises(ValidationError, match="cap"):
        all_subgroups(s3, max_order=4)


def test_subgroup_validation_rejects_non_closed(s3):
    with pytest.raises(ValidationError, match="closed"):
        Subgroup(s3, (s3.identity, s3.index_of_label("(123)")))


def test_core_of_whole_group(s3):
    H = Subgroup(s3, tuple(range(6)))
    assert core(s3, H).elements == tuple(range(6))


def test_core_of_transposition_subgroup_is_trivial(s3, s3_transposition_subgroup):
    assert core(s3, s3_transposition_subgroup).elements == (s3.identity,)


def test_core_of_normal_subgroup_is_itself(s3, s3_rotation_subgroup):
    H = s3_rotation_subgroup
    assert H.is_normal()
    assert core(s3, H).elements == H.elements


def test_core_is_normal_exhaustive(s3, d4, q8):
    for G in (s3, d4, q8):
        for H in all_subgroups(G):
            N = core(G, H)
            members = set(N.elements)
            assert all(
                G.conjugate(g, x) in members for g in range(G.order) for x in N.elements
            )
            assert members <= set(H.elements)


def test_coset_system_whole_group(s3):
    H = Subgroup(s3, tuple(range(6)))
    system = coset_system(s3, H)
    assert system.reps == (s3.identity,)


def test_coset_system_index_two(s3, s3_rotation_subgroup):
    system = coset_system(s3, s3_rotation_subgroup)
    assert system.n_cosets == 2
    assert system.reps[0] == s3.identity


def test_factorize_inside_subgroup(s3, s3_transposition_subgroup):
    for h in s3_transposition_subgroup.elements:
        k, hh = coset_system(s3, s3_transposition_subgroup).factorize(h)
        assert k == s3.identity
        assert hh == h


def test_coset_factorization_roundtrip_exhaustive(s3, d4, q8):
    for G in (s3, d4, q8):
        for H in all_subgroups(G):
            system = coset_system(G, H)
            for g in range(G.order):
                k, h = system.factorize(g)
                assert k in system.reps
                assert h in H
                assert G.mul(k, h) == g


def test_cosets_partition(d4):
    for H in all_subgroups(d4):
        system = coset_system(d4, H)
        assert len(system.reps) * H.order == d4.order
        counts = [0] * system.n_cosets
        for g in range(d4.order):
            counts[system.coset_of[g]] += 1
        assert all(c == H.order for c in counts)


def test_conjugacy_classes_s3(s3):
    data = s3.conjugacy
    assert data.classes[0] == (s3.identity,)
    assert sorted(data.class_sizes) == [1, 2, 3]
    for cls in data.classes:
        rep = cls[0]
        orbit = {s3.conjugate(g, rep) for g in range(6)}
        assert orbit == set(cls)


def test_subgroups_up_to_conjugacy_s3(s3):
    reps = subgroups_up_to_conjugacy(s3)
    assert [H.order for H in reps] == [1, 2, 3, 6]


def test_commutator_subgroup_s3(s3, s3_rotation_subgroup):
    assert commutator_subgroup(s3).elements == s3_rotation_subgroup.elements


def test_quotient_by_rotations_is_order_two(s3, s3_rotation_subgroup):
    Q, proj = quotient_group(s3, s3_rotation_subgroup)
    assert Q.order == 2
    assert proj[s3.identity] == Q.identity


def test_quotient_requires_normal(s3, s3_transposition_subgroup):
    with pytest.raises(ValidationError, match="normal"):
        quotient_group(s3, s3_transposition_subgroup)


def test_generated_subgroup(s3):
    H = generated_subgroup(s3, [s3.index_of_label("(12)")])
    assert H.order == 2
    full = generated_subgroup(s3, [s3.index_of_label("(12)"), s3.index_of_label("(123)")])
    assert full.order == 6


def test_subgroup_local_group_roundtrip(d4):
    for H in all_subgroups(d4):
        local = H.local
        assert local.order == H.order
        for i in range(H.order):
            for j in range(H.order):
                a, b = H.to_parent(i), H.to_parent(j)
                assert H.to_parent(local.mul(i, j)) == d4.mul(a, b)


def test_mult_table_is_immutable(z2):
    with pytest.raises(ValueError):
        z2.mult[0, 0] = 1


def test_labels_must_be_distinct():
    with pytest.raises(ValidationError, match="distinct"):
        FiniteGroup([[0, 1], [1, 0]], labels=["x", "x"])
