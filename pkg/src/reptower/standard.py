"""Stock groups and representations used by fixtures and tests.

Element orders and labels are fixed here so that representation builders can
key matrices by label.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ValidationError
from .groups import FiniteGroup, Subgroup
from .reps import ProjectiveRep

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def cyclic(n: int) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, labels=[str(a) for a in range(n)])


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Product group with element index a * |B| + b and labels '(la,lb)'."""
    nb = B.order
    n = A.order * nb
    table = [[0] * n for _ in range(n)]
    for a1, b1 in itertools.product(range(A.order), range(nb)):
        for a2, b2 in itertools.product(range(A.order), range(nb)):
            table[a1 * nb + b1][a2 * nb + b2] = A.mul(a1, a2) * nb + B.mul(b1, b2)
    labels = [
        f"({A.labels[a]},{B.labels[b]})"
        for a in range(A.order)
        for b in range(nb)
    ]
    return FiniteGroup(table, labels=labels)


def klein_four() -> FiniteGroup:
    return direct_product(cyclic(2), cyclic(2))


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points; elements are the sorted permutation
    tuples, labeled in cycle notation on points 1..n ('1' for the identity)."""
    perms = sorted(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    table = [
        [pos[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
    ]
    return FiniteGroup(table, labels=[cycle_label(p) for p in perms])


def cycle_label(p: tuple[int, ...]) -> str:
    n = len(p)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        parts.append("(" + "".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) if parts else "1"


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^k and reflections s·r^k."""
    if n < 2:
        raise ValidationError("dihedral groups need n >= 2")
    elements = [("r", k) for k in range(n)] + [("s", k) for k in range(n)]
    pos = {e: i for i, e in enumerate(elements)}

    def mul(x, y):
        (tx, a), (ty, b) = x, y
        if tx == "r" and ty == "r":
            return ("r", (a + b) % n)
        if tx == "r" and ty == "s":
            return ("s", (b - a) % n)  # r^a (s r^b) = s r^(b-a)
        if tx == "s" and ty == "r":
            return ("s", (a + b) % n)
        return ("r", (b - a) % n)  # (s r^a)(s r^b) = r^(b-a)

    table = [[pos[mul(x, y)] for y in elements] for x in elements]
    labels = [f"r{k}" if t == "r" else f"sr{k}" for t, k in elements]
    return FiniteGroup(table, labels=labels)


def quaternion() -> FiniteGroup:
    """The quaternion group {1,-1,i,-i,j,-j,k,-k}."""
    units = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    mats = {u: m for u, m in zip(units, _quaternion_matrices())}
    pos = {u: idx for idx, u in enumerate(units)}

    def find(M):
        for u, N in mats.items():
            if np.allclose(M, N):
                return u
        raise AssertionError

    table = [[pos[find(mats[a] @ mats[b])] for b in units] for a in units]
    return FiniteGroup(table, labels=units)


def _quaternion_matrices() -> list[np.ndarray]:
    one = np.eye(2, dtype=complex)
    i = 1j * PAULI_Z
    j = 1j * PAULI_Y
    k = 1j * PAULI_X
    return [one, -one, i, -i, j, -j, k, -k]


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def pauli_rep(v4: FiniteGroup) -> ProjectiveRep:
    """The 2-dimensional projective representation of the Klein four-group by
    the Pauli matrices, keyed by the labels of klein_four()."""
    by_label = {
        "(0,0)": np.eye(2, dtype=complex),
        "(1,0)": PAULI_X,
        "(0,1)": PAULI_Y,
        "(1,1)": PAULI_Z,
    }
    return rep_by_labels(v4, by_label)


def rep_by_labels(G: FiniteGroup, by_label: dict[str, np.ndarray]) -> ProjectiveRep:
    try:
        mats = {G.index_of_label(name): m for name, m in by_label.items()}
    except ValidationError as err:
        raise ValidationError(f"labels do not match the group: {err}") from None
    return ProjectiveRep(G, mats)


def standard_rep_symmetric(G: FiniteGroup, n: int) -> ProjectiveRep:
    """The (n-1)-dimensional standard representation of symmetric(n):
    permutation matrices compressed to the complement of the all-ones vector."""
    perms = sorted(itertools.permutations(range(n)))
    if G.order != len(perms):
        raise ValidationError("group is not symmetric(n) for the given n")
    Q = _complement_basis(n)
    mats = []
    for p in perms:
        P = np.zeros((n, n))
        for x in range(n):
            P[p[x], x] = 1.0
        mats.append(Q.T @ P @ Q)
    return ProjectiveRep(G, np.array(mats, dtype=complex))


def _complement_basis(n: int) -> np.ndarray:
    """Orthonormal basis of the hyperplane orthogonal to (1,...,1)."""
    A = np.eye(n)[:, 1:] - np.full((n, n - 1), 1.0 / n)
    Q, _ = np.linalg.qr(A)
    return Q


def rotation_rep_dihedral(G: FiniteGroup, n: int) -> ProjectiveRep:
    """The 2-dimensional rotation-reflection representation of dihedral(n)."""
    if G.order != 2 * n:
        raise ValidationError("group is not dihedral(n) for the given n")
    flip = np.array([[1, 0], [0, -1]], dtype=complex)
    by_label = {}
    for k in range(n):
        t = 2 * np.pi * k / n
        R = np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]], dtype=complex)
        by_label[f"r{k}"] = R
        by_label[f"sr{k}"] = flip @ R  # label sr{k} is s * r^k
    return rep_by_labels(G, by_label)


def spin_rep_quaternion(G: FiniteGroup) -> ProjectiveRep:
    """The 2-dimensional irreducible representation of the quaternion group."""
    mats = dict(zip(["1", "-1", "i", "-i", "j", "-j", "k", "-k"], _quaternion_matrices()))
    return rep_by_labels(G, mats)
