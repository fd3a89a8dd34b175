"""Induced representations from explicit coset factorization.

The induced space is K (x) l2(G/H) with basis ordered (base index, coset
index) lexicographically, coset order following the coset system.  The
matrix action sends xi (x) delta_kH to pi(h(gk)) xi (x) delta_gkH, where
g k = k' h(gk) is the unique representative factorization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import ClassFunction
from .errors import ValidationError
from .groups import CosetSystem, Subgroup, coset_system
from .reps import (
    ProjectiveRep,
    character,
    conjugate,
    kernel_of,
    tensor,
)


@dataclass(frozen=True)
class InducedRep:
    """An induced representation together with its construction data."""

    base: ProjectiveRep  # representation of the subgroup, trivial cocycle
    cosets: CosetSystem
    total: ProjectiveRep  # representation of the ambient group

    @property
    def dim(self) -> int:
        return self.total.dim

    def block(self, g: int, to_coset: int, from_coset: int) -> np.ndarray:
        """The (to_coset <- from_coset) block of the matrix of g."""
        n = self.cosets.n_cosets
        return self.total.matrix(g)[to_coset::n, from_coset::n]


def induce(rep: ProjectiveRep, system: CosetSystem) -> InducedRep:
    """Induce an ordinary representation of H up to the parent group."""
    H = system.subgroup
    if rep.group is not H:
        raise ValidationError("representation is not keyed by the coset system's subgroup")
    tol = max(rep.tol, 1e-9)
    if not rep.is_ordinary(tol=tol):
        raise ValidationError("only ordinary representations (trivial cocycle) are induced")
    G = H.parent
    d, n = rep.dim, system.n_cosets
    mats = np.zeros((G.order, d * n, d * n), dtype=complex)
    for g in range(G.order):
        M = mats[g].reshape(d, n, d, n)
        for i, k in enumerate(system.reps):
            gk = G.mul(g, k)
            j = system.coset_of[gk]
            h = G.mul(G.inv[system.reps[j]], gk)
            M[:, j, :, i] = rep.matrix(h)
    total = ProjectiveRep(G, mats, tol=tol)
    if not total.is_ordinary(tol=tol):
        raise ValidationError("induction produced a nontrivial cocycle")
    return InducedRep(base=rep, cosets=system, total=total)


def frobenius_character(rep: ProjectiveRep, system: CosetSystem) -> ClassFunction:
    """Character of the induced representation by the transversal sum
    chi(g) = sum over representatives k with k^-1 g k in H of chi_base(k^-1 g k).

    Computed directly from traces of the base matrices; independent of the
    induced matrices themselves.
    """
    H = system.subgroup
    if rep.group is not H:
        raise ValidationError("representation is not keyed by the coset system's subgroup")
    if not rep.is_ordinary():
        raise ValidationError("Frobenius character requires a trivial cocycle")
    G = H.parent
    values = []
    for cls in G.conjugacy.classes:
        g = cls[0]
        total = 0.0 + 0.0j
        for k in system.reps:
            x = G.mul(G.mul(G.inv[k], g), k)
            if x in H:
                total += np.trace(rep.matrix(x))
        values.append(complex(total))
    return ClassFunction(G, tuple(values))


def build_sigma(H: Subgroup, psi: ProjectiveRep, system: CosetSystem | None = None) -> InducedRep:
    """The canonical generator: the induction of conj(psi) (x) psi, which is
    an ordinary representation of H of dimension r^2."""
    if psi.group is not H:
        raise ValidationError("psi is not keyed by the given subgroup")
    base = tensor(conjugate(psi), psi)
    if not base.is_ordinary():
        raise ValidationError("conj(psi) (x) psi failed the trivial-cocycle check")
    if system is None:
        system = coset_system(H.parent, H)
    return induce(base, system)


def kernel(rep: ProjectiveRep, tol: float = 1e-9) -> Subgroup:
    """{g : pi(g) = identity} for an ordinary representation; normal in G."""
    if not rep.is_ordinary():
        raise ValidationError("kernels are computed for trivial cocycles only")
    return kernel_of(rep, tol=tol)


def induced_character(ind: InducedRep) -> ClassFunction:
    """Trace character of the induced matrices (the non-oracle route)."""
    return character(ind.total)
