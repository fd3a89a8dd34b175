import pytest

from reptower.groups import Subgroup
from reptower.reps import ProjectiveRep
from reptower.standard import (
    cyclic,
    dihedral,
    klein_four,
    pauli_rep,
    quaternion,
    symmetric,
    whole_group,
)


@pytest.fixture(scope="session")
def z2():
    return cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic(4)


@pytest.fixture(scope="session")
def v4():
    return klein_four()


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def d4():
    return dihedral(4)


@pytest.fixture(scope="session")
def q8():
    return quaternion()


@pytest.fixture(scope="session")
def pauli(v4):
    """The Pauli projective representation, keyed by the whole group as a
    subgroup of itself (the shape classification code consumes)."""
    H = whole_group(v4)
    base = pauli_rep(v4)
    return ProjectiveRep(H, {g: base.matrix(g) for g in range(v4.order)})


@pytest.fixture(scope="session")
def s3_transposition_subgroup(s3):
    return Subgroup(s3, tuple(sorted([s3.identity, s3.index_of_label("(12)")])))


@pytest.fixture(scope="session")
def s3_rotation_subgroup(s3):
    return Subgroup(
        s3,
        tuple(
            sorted(
                [s3.identity, s3.index_of_label("(123)"), s3.index_of_label("(132)")]
            )
        ),
    )
