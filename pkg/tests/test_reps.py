import numpy as np
import pytest

from reptower.characters import character_table
from reptower.errors import ValidationError
from reptower.groups import Subgroup
from reptower.reps import (
    ProjectiveRep,
    character,
    commutant_dimension,
    conjugate,
    direct_sum,
    kernel_of,
    linear_characters,
    multiplicity,
    on_local,
    on_subgroup,
    projective_kernel,
    projectively_identical,
    regular_rep,
    rep_from_generators,
    restriction,
    strictly_equivalent,
    tensor,
    trivial_rep,
    twist_equivalent,
    validate,
)
from reptower.standard import pauli_rep, whole_group


def random_unitary(rng, n):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(A)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def test_ordinary_rep_has_trivial_cocycle(s3):
    assert regular_rep(s3).cocycle.is_trivial()


def test_pauli_is_projective_with_expected_cocycle(v4):
    psi = pauli_rep(v4)
    assert not psi.cocycle.is_trivial()
    g10, g01 = v4.index_of_label("(1,0)"), v4.index_of_label("(0,1)")
    assert abs(psi.cocycle.value(g10, g01) - (-1j)) < 1e-9
    psi.cocycle.check()


def test_perturbed_matrix_rejected(v4):
    mats = {g: pauli_rep(v4).matrix(g).copy() for g in range(4)}
    mats[1][0, 0] += 1e-3
    with pytest.raises(ValidationError):
        ProjectiveRep(v4, mats)


def test_non_unitary_rejected(z2):
    with pytest.raises(ValidationError, match="unitary"):
        ProjectiveRep(z2, {0: np.eye(2), 1: np.diag([2.0, 0.5])})


def test_identity_matrix_normalized(z3):
    w = np.exp(2j * np.pi / 3)
    mats = {0: 1j * np.eye(1), 1: np.array([[w]]), 2: np.array([[w ** 2]])}
    rep = ProjectiveRep(z3, mats)
    assert np.allclose(rep.matrix(0), np.eye(1))


def test_nonscalar_identity_rejected(z2):
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    with pytest.raises(ValidationError, match="scalar"):
        ProjectiveRep(z2, {0: X, 1: np.eye(2)})


def test_conjugate_of_real_rep_is_itself(s3):
    reg = regular_rep(s3)
    conj = conjugate(reg)
    assert np.allclose(conj.mats, reg.mats)


def test_conjugate_tensor_sum_cocycles(v4):
    psi = pauli_rep(v4)
    assert conjugate(psi).cocycle.close_to(psi.cocycle.conjugate())
    prod = tensor(conjugate(psi), psi)
    assert prod.cocycle.is_trivial()
    two = direct_sum(psi, psi)
    assert two.cocycle.close_to(psi.cocycle)
    assert two.dim == 4


def test_randomized_cocycle_predictions(v4, s3):
    rng = np.random.default_rng(5)
    psi = pauli_rep(v4)
    for _ in range(4):
        U = random_unitary(rng, 2)
        other = ProjectiveRep(v4, {g: U @ psi.matrix(g) @ U.conj().T for g in range(4)})
        assert other.cocycle.close_to(psi.cocycle)
        assert tensor(psi, other).cocycle.close_to(
            psi.cocycle.product(other.cocycle)
        )
        assert validate(direct_sum(psi, other)).close_to(psi.cocycle)


def test_direct_sum_requires_equal_cocycles(v4):
    psi = pauli_rep(v4)
    with pytest.raises(ValidationError, match="cocycle"):
        direct_sum(psi, trivial_rep(v4, 2))


def test_pauli_square_character_is_regular(v4):
    prod = tensor(conjugate(pauli_rep(v4)), pauli_rep(v4))
    chi = character(prod)
    assert abs(chi.values[0] - 4) < 1e-9
    assert all(abs(v) < 1e-9 for v in chi.values[1:])


def test_tensor_of_sign_characters(z2):
    sign = linear_characters(z2)[1]
    prod = tensor(sign, sign)
    chi = character(prod)
    assert all(abs(v - 1) < 1e-9 for v in chi.values)


def test_character_of_trivial_and_regular(s3):
    assert all(abs(v - 1) < 1e-9 for v in character(trivial_rep(s3)).values)
    reg = character(regular_rep(s3))
    assert abs(reg.values[0] - 6) < 1e-9
    assert all(abs(v) < 1e-9 for v in reg.values[1:])


def test_character_requires_trivial_cocycle(v4):
    with pytest.raises(ValidationError, match="cocycle"):
        character(pauli_rep(v4))


def test_multiplicities_in_regular_rep(s3):
    table = character_table(s3)
    reg = regular_rep(s3)
    assert multiplicity(table.rows[0], reg) == 1
    two_dim = next(row for row, d in zip(table.rows, table.degrees) if d == 2)
    assert multiplicity(two_dim, reg) == 2


def test_multiplicity_of_trivial_in_pauli_square(v4):
    table = character_table(v4)
    prod = tensor(conjugate(pauli_rep(v4)), pauli_rep(v4))
    assert multiplicity(table.rows[0], prod) == 1


def test_multiplicity_degree_sum(s3, d4):
    for G in (s3, d4):
        table = character_table(G)
        reg = regular_rep(G)
        chi = character(reg)
        mults = [multiplicity(row, chi) for row in table.rows]
        assert all(m >= 0 for m in mults)
        assert sum(m * d for m, d in zip(mults, table.degrees)) == reg.dim


def test_commutant_dimension_examples(v4, z2, s3):
    assert commutant_dimension(pauli_rep(v4)) == 1
    assert commutant_dimension(regular_rep(z2)) == 2
    # cross-check against the character computation (sum of squares)
    table = character_table(s3)
    reg = regular_rep(s3)
    chi = character(reg)
    mults = [multiplicity(row, chi) for row in table.rows]
    assert commutant_dimension(reg) == sum(m * m for m in mults)


def test_commutant_matches_characters_on_sums(s3):
    table = character_table(s3)
    reps = [trivial_rep(s3), regular_rep(s3)]
    combined = direct_sum(reps[0], reps[1])
    chi = character(combined)
    mults = [multiplicity(row, chi) for row in table.rows]
    assert commutant_dimension(combined) == sum(m * m for m in mults)


def test_projective_kernel_examples(v4, z4, s3):
    assert projective_kernel(trivial_rep(s3)).elements == tuple(range(6))
    assert projective_kernel(pauli_rep(v4)).elements == (v4.identity,)
    faithful = next(
        ch
        for ch in linear_characters(z4)
        if kernel_of(ch).elements == (z4.identity,)
    )
    assert projective_kernel(faithful).elements == tuple(range(4))


def test_projective_kernel_invariant_under_equivalence(v4):
    rng = np.random.default_rng(11)
    psi = pauli_rep(v4)
    U = random_unitary(rng, 2)
    other = ProjectiveRep(v4, {g: U @ psi.matrix(g) @ U.conj().T for g in range(4)})
    assert projective_kernel(other).elements == projective_kernel(psi).elements


def test_projective_kernel_restricted(s3, s3_rotation_subgroup):
    sign = linear_characters(s3)[1]
    ker = projective_kernel(sign, restrict_to=s3_rotation_subgroup)
    assert ker.elements == s3_rotation_subgroup.elements  # 1x1 matrices are scalar


def test_strictly_equivalent_self(s3):
    reg = regular_rep(s3)
    ok, U = strictly_equivalent(reg, reg)
    assert ok
    assert np.allclose(U @ U.conj().T, np.eye(reg.dim), atol=1e-8)
    for g in range(6):
        assert np.allclose(U @ reg.matrix(g), reg.matrix(g) @ U, atol=1e-7)


def test_faithful_z3_characters_twist_but_not_strict(z3):
    chars = linear_characters(z3)
    a, b = chars[1], chars[2]
    ok, _ = strictly_equivalent(a, b)
    assert not ok
    ok_twist, idx, _ = twist_equivalent(a, b)
    assert ok_twist
    assert idx is not None and idx != 0


def test_trivial_vs_sign_not_equivalent(s3):
    chars = linear_characters(s3)
    triv, sign = chars[0], chars[1]
    assert not strictly_equivalent(triv, sign)[0]
    assert not twist_equivalent(triv, sign)[0]


def test_unitary_conjugates_are_strictly_equivalent(v4):
    rng = np.random.default_rng(3)
    psi = pauli_rep(v4)
    U = random_unitary(rng, 2)
    other = ProjectiveRep(v4, {g: U @ psi.matrix(g) @ U.conj().T for g in range(4)})
    ok, W = strictly_equivalent(psi, other)
    assert ok
    for g in range(4):
        assert np.allclose(W @ psi.matrix(g), other.matrix(g) @ W, atol=1e-7)


def test_equivalence_requires_same_dimension(s3):
    with pytest.raises(ValidationError, match="dimension"):
        strictly_equivalent(trivial_rep(s3, 1), trivial_rep(s3, 2))


def test_equivalence_requires_equal_cocycles(v4):
    with pytest.raises(ValidationError, match="cocycle"):
        strictly_equivalent(pauli_rep(v4), trivial_rep(v4, 2))


def test_linear_characters_count_and_order(s3, v4, q8):
    assert len(linear_characters(s3)) == 2
    assert len(linear_characters(v4)) == 4
    assert len(linear_characters(q8)) == 4
    for G in (s3, v4, q8):
        first = linear_characters(G)[0]
        assert all(np.allclose(first.matrix(g), np.eye(1)) for g in range(G.order))


def test_linear_characters_of_subgroup_keyed_by_parent(s3, s3_rotation_subgroup):
    chars = linear_characters(s3_rotation_subgroup)
    assert len(chars) == 3
    for ch in chars:
        assert set(ch.element_ids) == set(s3_rotation_subgroup.elements)


def test_rep_from_generators_builds_pauli(v4):
    psi = pauli_rep(v4)
    gens = {
        v4.index_of_label("(1,0)"): psi.matrix(v4.index_of_label("(1,0)")),
        v4.index_of_label("(0,1)"): psi.matrix(v4.index_of_label("(0,1)")),
    }
    built = rep_from_generators(v4, gens)
    assert projectively_identical(built, psi)


def test_rep_from_generators_detects_inconsistency(z2):
    # an order-2 element mapped to a matrix of order 4
    bad = {1: np.array([[0, -1], [1, 0]], dtype=complex) * np.exp(0.3j)}
    with pytest.raises(ValidationError):
        rep_from_generators(z2, bad)


def test_restriction_and_rekeying(s3, s3_rotation_subgroup):
    reg = regular_rep(s3)
    res = restriction(reg, s3_rotation_subgroup)
    assert res.dim == 6
    assert set(res.element_ids) == set(s3_rotation_subgroup.elements)
    local = on_local(res)
    assert local.group is s3_rotation_subgroup.local
    back = on_subgroup(s3_rotation_subgroup, local)
    for g in s3_rotation_subgroup.elements:
        assert np.allclose(back.matrix(g), res.matrix(g))


def test_kernel_of_regular_rep_is_trivial(s3):
    assert kernel_of(regular_rep(s3)).elements == (s3.identity,)
