"""Class functions and numerically computed character tables.

The table is obtained by diagonalizing a random real combination of the
class-multiplication matrices of the class algebra; the common eigenvectors
are rescaled into irreducible characters and verified against orthogonality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, ValidationError
from .groups import FiniteGroup

DEFAULT_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-8
INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class ClassFunction:
    """A function on conjugacy classes, stored in class order."""

    group: FiniteGroup
    values: tuple[complex, ...]

    def __post_init__(self):
        if len(self.values) != len(self.group.conjugacy.classes):
            raise ValidationError("one value per conjugacy class required")

    def on_element(self, g: int) -> complex:
        return self.values[self.group.conjugacy.class_of[g]]

    def mul(self, other: ClassFunction) -> ClassFunction:
        _same_group(self, other)
        return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def conjugate(self) -> ClassFunction:
        """The class function of the contragredient: g -> conj(f(g))."""
        return ClassFunction(self.group, tuple(complex(v).conjugate() for v in self.values))

    def inner(self, other: ClassFunction) -> complex:
        """(1/|G|) sum_g self(g) conj(other(g))."""
        _same_group(self, other)
        sizes = self.group.conjugacy.class_sizes
        total = sum(
            s * a * complex(b).conjugate() for s, a, b in zip(sizes, self.values, other.values)
        )
        return total / self.group.order

    def is_real(self, tol: float = DEFAULT_TOL) -> bool:
        return all(abs(complex(v).imag) < tol for v in self.values)


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of a group; row 0 is the trivial character."""

    group: FiniteGroup
    rows: tuple[ClassFunction, ...]
    degrees: tuple[int, ...]

    @property
    def n_irreducibles(self) -> int:
        return len(self.rows)

    def as_array(self) -> np.ndarray:
        return np.array([[complex(v) for v in row.values] for row in self.rows])


def _same_group(a, b) -> None:
    if a.group is not b.group:
        raise ValidationError("class functions belong to different groups")


def _class_mult_matrices(G: FiniteGroup) -> list[np.ndarray]:
    """A_i with (A_i)[j,l] = #{x in C_i : x^-1 z_l in C_j} for a fixed z_l in C_l.

    Each class-algebra character w satisfies A_i w = w_i w.
    """
    data = G.conjugacy
    k = len(data.classes)
    reps = [cls[0] for cls in data.classes]
    mats = []
    for i in range(k):
        A = np.zeros((k, k))
        for l, z in enumerate(reps):
            for x in data.classes[i]:
                y = G.mul(G.inv[x], z)
                A[data.class_of[y], l] += 1.0
        mats.append(A)
    return mats


def character_table(
    G: FiniteGroup, seed: int = 0, tol: float = DEFAULT_TOL, max_tries: int = 8
) -> CharacterTable:
    """Compute the character table; retries with fresh random combinations
    when the spectrum of the sampled class-algebra element is degenerate."""
    data = G.conjugacy
    k = len(data.classes)
    sizes = np.array(data.class_sizes, dtype=float)
    mats = _class_mult_matrices(G)
    rng = np.random.default_rng(seed)
    last_err: Exception | None = None
    for _ in range(max_tries):
        coeffs = rng.uniform(1.0, 2.0, size=k)
        A = sum(c * M for c, M in zip(coeffs, mats))
        try:
            return _table_from_eigenvectors(G, A, sizes, tol)
        except DegeneracyError as err:
            last_err = err
    raise DegeneracyError(
        f"character table of order-{G.order} group did not converge "
        f"in {max_tries} attempts: {last_err}"
    )


def _table_from_eigenvectors(
    G: FiniteGroup, A: np.ndarray, sizes: np.ndarray, tol: float
) -> CharacterTable:
    k = A.shape[0]
    _, vecs = np.linalg.eig(A)
    chars = []
    for s in range(k):
        u = vecs[:, s]
        if abs(u[0]) < 1e-12:
            raise DegeneracyError("eigenvector vanishes on the identity class")
        u = u / u[0]
        norm = float(np.sum(np.abs(u) ** 2 / sizes).real)
        degree = np.sqrt(G.order / norm)
        if abs(degree - round(degree)) > INTEGRALITY_TOL or round(degree) < 1:
            raise DegeneracyError(f"non-integral character degree {degree}")
        degree = int(round(degree))
        chi = degree * u / sizes
        chars.append((degree, chi))

    table = np.array([chi for _, chi in chars])
    gram = (table * sizes) @ table.conj().T / G.order
    if np.max(np.abs(gram - np.eye(k))) > ORTHOGONALITY_TOL:
        raise DegeneracyError("character rows are not orthonormal")
    if sum(d * d for d, _ in chars) != G.order:
        raise DegeneracyError("degree squares do not sum to the group order")

    chars = [_clean(chi) for _, chi in chars]
    chars.sort(key=_row_sort_key)
    trivial = tuple([1.0 + 0.0j] * k)
    rows = [ClassFunction(G, trivial)]
    degrees = [1]
    for chi in chars:
        if all(abs(v - 1) < 1e-7 for v in chi):
            continue  # the trivial character was inserted first
        rows.append(ClassFunction(G, chi))
        degrees.append(int(round(chi[0].real)))
    if len(rows) != k:
        raise DegeneracyError("trivial character not found exactly once")
    return CharacterTable(group=G, rows=tuple(rows), degrees=tuple(degrees))


def _clean(chi: np.ndarray) -> tuple[complex, ...]:
    out = []
    for v in chi:
        re, im = float(v.real), float(v.imag)
        if abs(re - round(re)) < 1e-9:
            re = float(round(re))
        if abs(im - round(im)) < 1e-9:
            im = float(round(im))
        out.append(complex(re, im))
    return tuple(out)


def _row_sort_key(chi: tuple[complex, ...]):
    degree = round(chi[0].real)
    return (degree, tuple((round(v.real, 7), round(v.imag, 7)) for v in chi))


def decompose(cf: ClassFunction, table: CharacterTable) -> tuple[int, ...]:
    """Multiplicities of each irreducible in a character; must be integral."""
    mults = []
    for row in table.rows:
        m = cf.inner(row)
        if abs(m.imag) > INTEGRALITY_TOL or abs(m.real - round(m.real)) > INTEGRALITY_TOL:
            raise ValidationError(f"non-integer multiplicity {m}; upstream numerical failure")
        r = int(round(m.real))
        if r < 0:
            raise ValidationError(f"negative multiplicity {m}")
        mults.append(r)
    return tuple(mults)


def fusion_matrix(table: CharacterTable, cf: ClassFunction) -> np.ndarray:
    """F[i][j] = multiplicity of irreducible j in (irreducible i) tensor cf."""
    k = table.n_irreducibles
    F = np.zeros((k, k), dtype=np.int64)
    for i, row in enumerate(table.rows):
        F[i, :] = decompose(row.mul(cf), table)
    return F


def trivial_character(G: FiniteGroup) -> ClassFunction:
    return ClassFunction(G, tuple([1.0 + 0.0j] * len(G.conjugacy.classes)))


_TABLE_CACHE: dict[int, CharacterTable] = {}


def cached_character_table(G: FiniteGroup, seed: int = 0) -> CharacterTable:
    """Per-group memoized character table (keyed by object identity)."""
    key = id(G)
    got = _TABLE_CACHE.get(key)
    if got is None or got.group is not G:
        got = character_table(G, seed=seed)
        _TABLE_CACHE[key] = got
    return got
