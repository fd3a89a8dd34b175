"""Ordinary and projective unitary representations.

A representation may live on a FiniteGroup or on a Subgroup; in the latter
case matrices are keyed by parent element ids, which lets kernels and
restrictions return honest subgroups of the ambient group.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .characters import ClassFunction, character_table
from .errors import ValidationError
from .groups import FiniteGroup, Subgroup, commutator_subgroup, quotient_group

DEFAULT_TOL = 1e-9
GroupLike = FiniteGroup | Subgroup


@dataclass(frozen=True)
class Cocycle:
    """A two-cocycle with values in the circle group, indexed like the
    group's element_ids."""

    group: GroupLike
    values: np.ndarray  # (n, n) complex

    def value(self, g: int, h: int) -> complex:
        pos = _positions(self.group)
        return complex(self.values[pos[g], pos[h]])

    def is_trivial(self, tol: float = DEFAULT_TOL) -> bool:
        return bool(np.max(np.abs(self.values - 1.0)) < tol)

    def conjugate(self) -> Cocycle:
        return Cocycle(self.group, self.values.conj())

    def product(self, other: Cocycle) -> Cocycle:
        _require_same_group(self.group, other.group)
        return Cocycle(self.group, self.values * other.values)

    def close_to(self, other: Cocycle, tol: float = 1e-7) -> bool:
        return bool(np.max(np.abs(self.values - other.values)) < tol)

    def check(self, tol: float = DEFAULT_TOL) -> None:
        """Unit modulus and the two-cocycle identity
        c(g,h) c(gh,k) = c(g,hk) c(h,k)."""
        if np.max(np.abs(np.abs(self.values) - 1.0)) > tol:
            raise ValidationError("cocycle values must have modulus one")
        ids = list(self.group.element_ids)
        pos = _positions(self.group)
        mul = self.group.mul
        v = self.values
        for a, g in enumerate(ids):
            for b, h in enumerate(ids):
                gh = pos[mul(g, h)]
                for c, k in enumerate(ids):
                    hk = pos[mul(h, k)]
                    lhs = v[a, b] * v[gh, c]
                    rhs = v[a, hk] * v[b, c]
                    if abs(lhs - rhs) > 10 * tol:
                        raise ValidationError("two-cocycle identity fails")


def _positions(group: GroupLike) -> dict[int, int]:
    return {g: i for i, g in enumerate(group.element_ids)}


def _require_same_group(a: GroupLike, b: GroupLike) -> None:
    if a is not b:
        raise ValidationError("representations live on different groups")


class ProjectiveRep:
    """Unitary (projective) representation with pi(e) = identity.

    matrices: either a dict {element_id: (r,r) array} covering every element
    or an array aligned with group.element_ids.  The cocycle is recovered
    during construction and all defining identities are checked.
    """

    def __init__(
        self,
        group: GroupLike,
        matrices,
        *,
        expected_cocycle: np.ndarray | None = None,
        tol: float = DEFAULT_TOL,
    ):
        self.group = group
        ids = list(group.element_ids)
        self._pos = {g: i for i, g in enumerate(ids)}
        if isinstance(matrices, dict):
            missing = [g for g in ids if g not in matrices]
            if missing:
                raise ValidationError(f"missing matrices for elements {missing}")
            mats = np.array([np.asarray(matrices[g], dtype=complex) for g in ids])
        else:
            mats = np.array(matrices, dtype=complex)  # copy: construction may normalize
        if mats.ndim != 3 or mats.shape[0] != len(ids) or mats.shape[1] != mats.shape[2]:
            raise ValidationError("matrices must form an (n_elements, r, r) stack")
        self.dim = int(mats.shape[1])
        self.mats = mats
        self.tol = tol
        self._normalize_identity()
        self.cocycle = self._recover_cocycle()
        if expected_cocycle is not None:
            given = np.asarray(expected_cocycle, dtype=complex)
            if given.shape != self.cocycle.values.shape or not self.cocycle.close_to(
                Cocycle(group, given), tol=1e-7
            ):
                raise ValidationError("provided cocycle does not match the recovered one")
        self.mats.setflags(write=False)

    # -- construction helpers ----------------------------------------------

    def _normalize_identity(self) -> None:
        e = self._pos[self.group.identity]
        r = self.dim
        M = self.mats[e]
        if np.max(np.abs(M - np.eye(r))) > self.tol:
            scalar = np.trace(M) / r
            if np.max(np.abs(M - scalar * np.eye(r))) > self.tol or abs(abs(scalar) - 1) > self.tol:
                raise ValidationError("matrix at the identity is not scalar")
            self.mats[e] = np.eye(r)

    def _recover_cocycle(self) -> Cocycle:
        ids = list(self.group.element_ids)
        n, r = len(ids), self.dim
        eye = np.eye(r)
        for i in range(n):
            M = self.mats[i]
            if np.max(np.abs(M @ M.conj().T - eye)) > self.tol:
                raise ValidationError(
                    f"matrix for element {self.group.label(ids[i])} is not unitary"
                )
        values = np.empty((n, n), dtype=complex)
        for a, g in enumerate(ids):
            prods = self.mats[a] @ self.mats  # (n, r, r)
            targets = np.array([self._pos[self.group.mul(g, h)] for h in ids])
            Q = self.mats[targets]
            c = np.einsum("nij,nij->n", Q, prods.conj()) / r
            resid = np.max(np.abs(Q - c[:, None, None] * prods), axis=(1, 2))
            bad = np.nonzero((resid > self.tol) | (np.abs(np.abs(c) - 1) > self.tol))[0]
            if bad.size:
                h = ids[int(bad[0])]
                raise ValidationError(
                    f"not projective: product at ({self.group.label(g)}, "
                    f"{self.group.label(h)}) is not a scalar multiple of the table product"
                )
            values[a, :] = c
        return Cocycle(self.group, values)

    # -----------------------------------------------------------------------

    def matrix(self, g: int) -> np.ndarray:
        return self.mats[self._pos[g]]

    @property
    def element_ids(self) -> tuple[int, ...]:
        return tuple(self.group.element_ids)

    def is_ordinary(self, tol: float = DEFAULT_TOL) -> bool:
        return self.cocycle.is_trivial(tol=max(tol, 1e-9))

    def __repr__(self) -> str:
        kind = "ordinary" if self.is_ordinary() else "projective"
        return f"ProjectiveRep({kind}, dim={self.dim}, group order {len(self.element_ids)})"


def validate(rep: ProjectiveRep, tol: float = DEFAULT_TOL) -> Cocycle:
    """Re-derive and re-check the cocycle of a representation."""
    fresh = ProjectiveRep(rep.group, np.array(rep.mats), tol=tol)
    fresh.cocycle.check(tol=1e-7)
    return fresh.cocycle


def conjugate(rep: ProjectiveRep) -> ProjectiveRep:
    """Contragredient: entrywise conjugated matrices, conjugated cocycle."""
    return ProjectiveRep(rep.group, rep.mats.conj(), tol=rep.tol)


def tensor(r1: ProjectiveRep, r2: ProjectiveRep) -> ProjectiveRep:
    _require_same_group(r1.group, r2.group)
    mats = np.einsum("nab,ncd->nacbd", r1.mats, r2.mats).reshape(
        r1.mats.shape[0], r1.dim * r2.dim, r1.dim * r2.dim
    )
    return ProjectiveRep(r1.group, mats, tol=max(r1.tol, r2.tol))


def direct_sum(r1: ProjectiveRep, r2: ProjectiveRep) -> ProjectiveRep:
    _require_same_group(r1.group, r2.group)
    if not r1.cocycle.close_to(r2.cocycle):
        raise ValidationError("direct sum requires equal cocycles")
    n = r1.mats.shape[0]
    d = r1.dim + r2.dim
    mats = np.zeros((n, d, d), dtype=complex)
    mats[:, : r1.dim, : r1.dim] = r1.mats
    mats[:, r1.dim :, r1.dim :] = r2.mats
    return ProjectiveRep(r1.group, mats, tol=max(r1.tol, r2.tol))


def character(rep: ProjectiveRep) -> ClassFunction:
    """Trace class function; only defined for trivial cocycle.

    For a subgroup representation the result lives on the subgroup's local
    group (its own conjugacy classes, not the ambient ones).
    """
    if not rep.is_ordinary():
        raise ValidationError("characters are only computed for trivial cocycles")
    if isinstance(rep.group, Subgroup):
        return character(on_local(rep))
    G = rep.group
    traces = {g: np.trace(rep.matrix(g)) for g in G.element_ids}
    values = []
    for cls in G.conjugacy.classes:
        vals = [traces[g] for g in cls]
        if max(abs(v - vals[0]) for v in vals) > 1e-7:
            raise ValidationError("trace is not constant on a conjugacy class")
        values.append(complex(vals[0]))
    return ClassFunction(G, tuple(values))


def multiplicity(chi_irr: ClassFunction, rep: ProjectiveRep | ClassFunction) -> int:
    """Multiplicity of an irreducible character in an ordinary representation."""
    cf = rep if isinstance(rep, ClassFunction) else character(rep)
    m = cf.inner(chi_irr)
    if abs(m.imag) > 1e-6 or abs(m.real - round(m.real)) > 1e-6:
        raise ValidationError(f"non-integer multiplicity {m}; upstream numerical failure")
    r = int(round(m.real))
    if r < 0:
        raise ValidationError(f"negative multiplicity {m}")
    return r


def _ambient_group(group: GroupLike) -> FiniteGroup:
    return group.parent if isinstance(group, Subgroup) else group


def commutant_dimension(rep: ProjectiveRep, tol: float = 1e-8) -> int:
    """dim {A : A pi(g) = pi(g) A for all g} via the stacked linear system."""
    return len(intertwiner_basis(rep, rep, tol=tol))


def intertwiner_basis(
    r1: ProjectiveRep, r2: ProjectiveRep, tol: float = 1e-8
) -> list[np.ndarray]:
    """Basis of {T : T pi1(g) = pi2(g) T}, via the null space of the stacked
    commutation system."""
    _require_same_group(r1.group, r2.group)
    d1, d2 = r1.dim, r2.dim
    eye1, eye2 = np.eye(d1), np.eye(d2)
    blocks = [
        np.kron(eye2, r1.mats[i].T) - np.kron(r2.mats[i], eye1)
        for i in range(r1.mats.shape[0])
    ]
    S = np.vstack(blocks)
    _, sv, vh = np.linalg.svd(S)
    cutoff = tol * max(1.0, float(sv[0]) if sv.size else 1.0)
    null = [vh[i].reshape(d2, d1) for i in range(len(vh)) if i >= len(sv) or sv[i] < cutoff]
    return null


def projective_kernel(
    rep: ProjectiveRep, restrict_to: Subgroup | None = None, tol: float = DEFAULT_TOL
) -> Subgroup:
    """Elements whose matrix is scalar (off-diagonal max and diagonal spread
    below tolerance), restricted to a subgroup of the ambient group."""
    if restrict_to is not None:
        parent = restrict_to.parent
        rep_ids = set(rep.element_ids)
        if not set(restrict_to.elements) <= rep_ids:
            raise ValidationError("restriction subgroup is not inside the representation domain")
        candidates = restrict_to.elements
    else:
        parent = _ambient_group(rep.group)
        candidates = rep.element_ids
    kernel = [g for g in candidates if _is_scalar(rep.matrix(g), tol)]
    return Subgroup(parent, tuple(kernel))


def _is_scalar(M: np.ndarray, tol: float) -> bool:
    r = M.shape[0]
    diag = np.diagonal(M)
    off = M - np.diag(diag)
    if np.max(np.abs(off)) >= tol:
        return False
    return bool(np.max(np.abs(diag - diag[0])) < tol)


def kernel_of(rep: ProjectiveRep, tol: float = DEFAULT_TOL) -> Subgroup:
    """{g : pi(g) = identity}; a normal subgroup for ordinary representations."""
    parent = _ambient_group(rep.group)
    eye = np.eye(rep.dim)
    members = [g for g in rep.element_ids if np.max(np.abs(rep.matrix(g) - eye)) < tol]
    return Subgroup(parent, tuple(members))


def strictly_equivalent(
    r1: ProjectiveRep,
    r2: ProjectiveRep,
    *,
    seed: int = 0,
    tol: float = 1e-8,
    n_trials: int = 8,
) -> tuple[bool, np.ndarray | None]:
    """Whether an invertible intertwiner U pi1 U* = pi2 exists (no phase
    twist); returns (flag, unitary witness or None).

    Requires equal cocycles.  A random element of the intertwiner space is
    invertible with probability one whenever any invertible one exists.
    """
    _require_same_group(r1.group, r2.group)
    if r1.dim != r2.dim:
        raise ValidationError("representations have different dimensions")
    if not r1.cocycle.close_to(r2.cocycle):
        raise ValidationError("strict equivalence requires equal cocycles")
    basis = intertwiner_basis(r1, r2, tol=tol)
    if not basis:
        return False, None
    rng = np.random.default_rng(seed)
    stack = np.array(basis)
    for _ in range(n_trials):
        coeff = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        T = np.tensordot(coeff, stack, axes=1)
        sv = np.linalg.svd(T, compute_uv=False)
        if sv[0] > 0 and sv[-1] > 1e-6 * sv[0]:
            U = _polar_unitary(T)
            if _intertwines(U, r1, r2):
                return True, U
    return False, None


def _polar_unitary(T: np.ndarray) -> np.ndarray:
    W, _, Vh = np.linalg.svd(T)
    return W @ Vh


def _intertwines(U: np.ndarray, r1: ProjectiveRep, r2: ProjectiveRep, tol: float = 1e-7) -> bool:
    return all(
        np.max(np.abs(U @ r1.matrix(g) - r2.matrix(g) @ U)) < tol for g in r1.element_ids
    )


def twist_equivalent(
    r1: ProjectiveRep, r2: ProjectiveRep, *, seed: int = 0
) -> tuple[bool, int | None, np.ndarray | None]:
    """Equivalence up to a twist by a degree-1 ordinary character mu:
    tries U pi1 U* = mu(g) pi2(g) for each linear character in turn.

    Returns (flag, index of the twisting character or None, witness or None).
    """
    for idx, mu in enumerate(linear_characters(r1.group)):
        ok, U = strictly_equivalent(r1, tensor(r2, mu), seed=seed)
        if ok:
            return True, idx, U
    return False, None, None


def projectively_identical(
    r1: ProjectiveRep, r2: ProjectiveRep, tol: float = 1e-6
) -> bool:
    """Same matrices element-by-element up to unit scalars (U = identity,
    arbitrary phase function)."""
    _require_same_group(r1.group, r2.group)
    if r1.dim != r2.dim:
        return False
    r = r1.dim
    for g in r1.element_ids:
        A, B = r1.matrix(g), r2.matrix(g)
        c = np.trace(B @ A.conj().T) / r
        if abs(abs(c) - 1) > tol or np.max(np.abs(B - c * A)) > tol:
            return False
    return True


# -- constructions ---------------------------------------------------------


def trivial_rep(group: GroupLike, dim: int = 1) -> ProjectiveRep:
    n = len(group.element_ids)
    mats = np.tile(np.eye(dim, dtype=complex), (n, 1, 1))
    return ProjectiveRep(group, mats)


def regular_rep(G: FiniteGroup) -> ProjectiveRep:
    """Left-translation permutation matrices."""
    n = G.order
    mats = np.zeros((n, n, n), dtype=complex)
    for g in range(n):
        for h in range(n):
            mats[g, G.mul(g, h), h] = 1.0
    return ProjectiveRep(G, mats)


def linear_characters(group: GroupLike) -> list[ProjectiveRep]:
    """Degree-1 ordinary representations, from the abelianization.

    Ordering follows the character table of the quotient (trivial first),
    so it is deterministic.
    """
    if isinstance(group, Subgroup):
        local_chars = linear_characters(group.local)
        out = []
        for ch in local_chars:
            mats = {g: ch.matrix(i) for i, g in enumerate(group.elements)}
            out.append(ProjectiveRep(group, mats))
        return out
    G = group
    D = commutator_subgroup(G)
    Q, proj = quotient_group(G, D)
    table = character_table(Q)
    out = []
    for row in table.rows:
        mats = np.array(
            [[[row.on_element(proj[g])]] for g in range(G.order)], dtype=complex
        )
        out.append(ProjectiveRep(G, mats))
    return out


def rep_from_generators(
    group: GroupLike, generator_mats: dict[int, np.ndarray], tol: float = DEFAULT_TOL
) -> ProjectiveRep:
    """Extend matrices given on a generating set to the whole group by
    breadth-first products; conflicting words must agree up to a unit scalar."""
    ids = list(group.element_ids)
    dims = {np.asarray(m).shape for m in generator_mats.values()}
    if len(dims) != 1:
        raise ValidationError("generator matrices have mixed shapes")
    (r, r2) = dims.pop()
    if r != r2:
        raise ValidationError("generator matrices must be square")
    known: dict[int, np.ndarray] = {group.identity: np.eye(r, dtype=complex)}
    for g, m in generator_mats.items():
        if g not in ids:
            raise ValidationError(f"generator element {g} is outside the group")
        _check_consistent(known, g, np.asarray(m, dtype=complex), tol)
    frontier = list(known)
    gens = list(generator_mats)
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = group.mul(a, s)
                cand = known[a] @ known[s]
                if b in known:
                    _check_consistent(known, b, cand, tol)
                else:
                    known[b] = cand
                    nxt.append(b)
        frontier = nxt
    if len(known) != len(ids):
        raise ValidationError("generator matrices do not cover the group")
    return ProjectiveRep(group, known)


def _check_consistent(known: dict[int, np.ndarray], g: int, M: np.ndarray, tol: float) -> None:
    if g not in known:
        known[g] = M
        return
    have = known[g]
    r = have.shape[0]
    c = np.trace(M @ have.conj().T) / r
    if abs(abs(c) - 1) > 1e3 * tol or np.max(np.abs(M - c * have)) > 1e3 * tol:
        raise ValidationError(
            "two words for the same element give matrices that are not proportional"
        )


def restriction(rep: ProjectiveRep, H: Subgroup) -> ProjectiveRep:
    """Restrict a representation of the ambient group to a subgroup."""
    if not set(H.elements) <= set(rep.element_ids):
        raise ValidationError("subgroup is not inside the representation domain")
    mats = {g: rep.matrix(g) for g in H.elements}
    return ProjectiveRep(H, mats)


def on_subgroup(H: Subgroup, local_rep: ProjectiveRep) -> ProjectiveRep:
    """Re-key a representation of H.local by parent element ids."""
    if local_rep.group is not H.local:
        raise ValidationError("representation is not on the local group of this subgroup")
    mats = {H.to_parent(i): local_rep.matrix(i) for i in range(H.order)}
    return ProjectiveRep(H, mats)


def on_local(rep: ProjectiveRep) -> ProjectiveRep:
    """Re-key a subgroup representation by local indices 0..|H|-1."""
    H = rep.group
    if not isinstance(H, Subgroup):
        raise ValidationError("representation is not on a subgroup")
    mats = {i: rep.matrix(g) for i, g in enumerate(H.elements)}
    return ProjectiveRep(H.local, mats)
