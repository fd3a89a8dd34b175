import numpy as np
import pytest

from reptower.characters import (
    ClassFunction,
    character_table,
    decompose,
    fusion_matrix,
    trivial_character,
)
from reptower.errors import ValidationError
from reptower.standard import cyclic, dihedral, direct_product, klein_four, quaternion, symmetric

ALL_GROUPS = [
    ("z2", cyclic(2)),
    ("z3", cyclic(3)),
    ("z4", cyclic(4)),
    ("z6", cyclic(6)),
    ("z12", cyclic(12)),
    ("v4", klein_four()),
    ("s3", symmetric(3)),
    ("d4", dihedral(4)),
    ("q8", quaternion()),
    ("s4", symmetric(4)),
    ("z2xz4", direct_product(cyclic(2), cyclic(4))),
    ("d6", dihedral(6)),
]


def test_z2_rows(z2):
    table = character_table(z2)
    assert table.degrees == (1, 1)
    arr = table.as_array().real
    assert np.allclose(arr[0], [1, 1])
    assert np.allclose(arr[1], [1, -1])


def test_v4_has_four_sign_characters(v4):
    table = character_table(v4)
    assert table.degrees == (1, 1, 1, 1)
    arr = table.as_array()
    assert np.allclose(np.abs(arr), 1)
    assert np.allclose(arr.imag, 0)


def test_s3_degrees(s3):
    table = character_table(s3)
    assert table.degrees == (1, 1, 2)
    assert sum(d * d for d in table.degrees) == 6


@pytest.mark.parametrize("name,G", ALL_GROUPS, ids=[n for n, _ in ALL_GROUPS])
def test_orthogonality_and_degree_sum(name, G):
    table = character_table(G)
    arr = table.as_array()
    sizes = np.array(G.conjugacy.class_sizes, dtype=float)
    gram = (arr * sizes) @ arr.conj().T / G.order
    assert np.max(np.abs(gram - np.eye(len(arr)))) < 1e-8
    assert sum(d * d for d in table.degrees) == G.order
    # second orthogonality at the identity column
    assert abs(sum(abs(v) ** 2 for v in arr[:, 0]) - sum(d * d for d in table.degrees)) < 1e-8


def test_trivial_character_is_row_zero():
    for _, G in ALL_GROUPS:
        table = character_table(G)
        assert all(abs(v - 1) < 1e-9 for v in table.rows[0].values)
        assert table.degrees[0] == 1


def test_table_deterministic_for_fixed_seed(s3):
    t1 = character_table(s3, seed=7)
    t2 = character_table(s3, seed=7)
    assert np.array_equal(t1.as_array(), t2.as_array())


def test_s4_table_values():
    G = symmetric(4)
    table = character_table(G)
    assert sorted(table.degrees) == [1, 1, 2, 3, 3]


def test_decompose_regular_character(s3):
    table = character_table(s3)
    k = len(table.rows)
    reg = ClassFunction(
        s3, tuple(6.0 + 0j if i == 0 else 0j for i in range(k))
    )
    mults = decompose(reg, table)
    assert mults == tuple(table.degrees)


def test_decompose_rejects_non_integer(s3):
    table = character_table(s3)
    bad = ClassFunction(s3, (1.5 + 0j, 0j, 0j))
    with pytest.raises(ValidationError, match="multiplicity"):
        decompose(bad, table)


def test_fusion_matrix_trivial_row(s3):
    table = character_table(s3)
    F = fusion_matrix(table, trivial_character(s3))
    assert np.array_equal(F, np.eye(3, dtype=np.int64))


def test_class_function_inner_products(s3):
    table = character_table(s3)
    for i, a in enumerate(table.rows):
        for j, b in enumerate(table.rows):
            got = a.inner(b)
            assert abs(got - (1 if i == j else 0)) < 1e-9


def test_class_function_requires_full_length(s3):
    with pytest.raises(ValidationError):
        ClassFunction(s3, (1.0 + 0j,))
