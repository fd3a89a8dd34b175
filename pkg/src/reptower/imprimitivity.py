"""Recognition of induced structure inside a representation.

Given an ordinary representation sigma of G and an invariant matrix
*-algebra B whose center meets the fixed points only in scalars, the group
permutes the minimal central projections of B transitively.  This module
recovers the stabilizer subgroup H, a unitary U identifying the space with
(internal space) (x) l2(G/H), and the pair of projective representations
rho, psi with conjugate cocycles whose tensor product is the compression of
sigma to the distinguished block, so that U sigma(g) U* is exactly the
induced representation of rho (x) psi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, ValidationError
from .groups import FiniteGroup, Subgroup, coset_system
from .induction import InducedRep, induce
from .reps import ProjectiveRep, tensor

EIGENVALUE_CLUSTER_TOL = 1e-7
RESIDUAL_TOL = 1e-6
SUBSPACE_TOL = 1e-7


@dataclass(frozen=True)
class MatrixStarAlgebra:
    """A unital *-subalgebra of the m x m matrices, held as an orthonormal
    basis (Frobenius inner product) stacked into a (k, m, m) array."""

    ambient_dim: int
    basis: np.ndarray
    contains_identity: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @staticmethod
    def from_spanning(
        mats, *, add_identity: bool = True, tol: float = SUBSPACE_TOL
    ) -> "MatrixStarAlgebra":
        """Orthonormalize a spanning set and complete it to a unital
        *-algebra (adjoints and products added until the span is stable)."""
        stack = [np.asarray(m, dtype=complex) for m in mats]
        if not stack:
            raise ValidationError("need at least one spanning matrix")
        m = stack[0].shape[0]
        if any(s.shape != (m, m) for s in stack):
            raise ValidationError("spanning matrices must share one square shape")
        if add_identity:
            stack.append(np.eye(m, dtype=complex))
        basis = _orthonormalize(np.array(stack), tol)
        while True:
            candidates = [b.conj().T for b in basis]
            for a in basis:
                for b in basis:
                    candidates.append(a @ b)
            enlarged = _orthonormalize(np.concatenate([basis, np.array(candidates)]), tol)
            if enlarged.shape[0] == basis.shape[0]:
                break
            basis = enlarged
        algebra = MatrixStarAlgebra(
            ambient_dim=m,
            basis=basis,
            contains_identity=_in_span(basis, np.eye(m, dtype=complex), tol),
        )
        return algebra

    def contains(self, M: np.ndarray, tol: float = SUBSPACE_TOL) -> bool:
        return _in_span(self.basis, np.asarray(M, dtype=complex), tol)

    def project(self, M: np.ndarray) -> np.ndarray:
        coeff = np.einsum("kij,ij->k", self.basis.conj(), M)
        return np.tensordot(coeff, self.basis, axes=1)

    def is_closed(self, tol: float = SUBSPACE_TOL) -> bool:
        for a in self.basis:
            if not self.contains(a.conj().T, tol):
                return False
            for b in self.basis:
                if not self.contains(a @ b, tol):
                    return False
        return True

    def center_basis(self, tol: float = SUBSPACE_TOL) -> np.ndarray:
        """Orthonormal basis of {z in B : zb = bz for all b in B}, expressed
        as matrices."""
        k = self.dim
        rows = []
        for b in self.basis:
            # commutator of sum x_j basis_j with b, as a linear map on x
            comm = np.array([bj @ b - b @ bj for bj in self.basis])
            rows.append(comm.reshape(k, -1).T)
        system = np.vstack(rows)
        null = _null_space(system, tol)
        if null.size == 0:
            raise ValidationError("center computation produced an empty space")
        center = np.tensordot(null, self.basis, axes=(1, 0))
        return _orthonormalize(center, tol)


def _orthonormalize(stack: np.ndarray, tol: float) -> np.ndarray:
    k, m, _ = stack.shape
    flat = stack.reshape(k, -1)
    _, sv, vh = np.linalg.svd(flat, full_matrices=False)
    keep = sv > tol * max(1.0, float(sv[0]) if sv.size else 1.0)
    return vh[keep].reshape(-1, m, m)


def _in_span(basis: np.ndarray, M: np.ndarray, tol: float) -> bool:
    coeff = np.einsum("kij,ij->k", basis.conj(), M)
    resid = M - np.tensordot(coeff, basis, axes=1)
    scale = max(1.0, float(np.linalg.norm(M)))
    return bool(np.linalg.norm(resid) < 10 * tol * scale)


def _null_space(A: np.ndarray, tol: float) -> np.ndarray:
    _, sv, vh = np.linalg.svd(A, full_matrices=True)
    rank = int(np.sum(sv > tol * max(1.0, float(sv[0]) if sv.size else 1.0)))
    return vh[rank:].conj()


def invariant_check(B: MatrixStarAlgebra, sigma: ProjectiveRep, tol: float = SUBSPACE_TOL) -> bool:
    """Whether sigma(g) B sigma(g)^-1 = B as subspaces for every g."""
    if B.ambient_dim != sigma.dim:
        raise ValidationError("algebra and representation dimensions differ")
    for g in sigma.element_ids:
        Ug = sigma.matrix(g)
        for b in B.basis:
            if not B.contains(Ug @ b @ Ug.conj().T, tol):
                return False
    return True


def _ad_fixed_center(B: MatrixStarAlgebra, sigma: ProjectiveRep, tol: float) -> np.ndarray:
    """Basis of the Ad sigma fixed vectors inside the center of B."""
    center = B.center_basis(tol)
    k = center.shape[0]
    rows = []
    for g in sigma.element_ids:
        Ug = sigma.matrix(g)
        moved = np.array([Ug @ z @ Ug.conj().T - z for z in center])
        rows.append(moved.reshape(k, -1).T)
    null = _null_space(np.vstack(rows), tol)
    return np.tensordot(null, center, axes=(1, 0))


def is_factor_correspondence(
    B: MatrixStarAlgebra, sigma: ProjectiveRep, tol: float = SUBSPACE_TOL
) -> bool:
    """True when the Ad-fixed part of the center of B is one dimensional,
    i.e. the associated intermediate algebra is a factor."""
    if not invariant_check(B, sigma, tol):
        raise ValidationError("algebra is not invariant under the group action")
    return _ad_fixed_center(B, sigma, tol).shape[0] == 1


@dataclass(frozen=True)
class ImprimitivitySystem:
    """Outcome of the recognition: block projections, the permutation action,
    the stabilizer, and the recovered tensor factorization."""

    sigma: ProjectiveRep
    algebra: MatrixStarAlgebra
    projections: np.ndarray  # (l, m, m), ordered like the coset representatives
    action: tuple[tuple[int, ...], ...]  # per group element, permutation of projections
    stabilizer: Subgroup
    d: int
    r: int
    rho: ProjectiveRep
    psi: ProjectiveRep
    intertwiner: np.ndarray  # U with U sigma(g) U* = induced(rho (x) psi)(g)
    induced: InducedRep
    residual: float


def decompose(
    sigma: ProjectiveRep,
    B: MatrixStarAlgebra,
    *,
    seed: int = 0,
    tol: float = RESIDUAL_TOL,
    max_tries: int = 8,
) -> ImprimitivitySystem:
    """Recover (H, rho, psi, U) from an invariant algebra with factor
    correspondence; raises for non-transitive actions or residuals above
    tolerance."""
    G = sigma.group
    if not isinstance(G, FiniteGroup):
        raise ValidationError("decompose expects a representation of the ambient group")
    if not sigma.is_ordinary():
        raise ValidationError("decompose expects an ordinary representation")
    if not invariant_check(B, sigma):
        raise ValidationError("algebra is not invariant under the group action")
    if _ad_fixed_center(B, sigma, SUBSPACE_TOL).shape[0] != 1:
        raise ValidationError("action on central projections is not transitive (not a factor)")

    rng = np.random.default_rng(seed)
    center = B.center_basis()
    projections = _minimal_central_projections(center, rng, max_tries)
    l = projections.shape[0]

    # permutation action on the projections
    perm_of: list[tuple[int, ...]] = []
    for g in sigma.element_ids:
        Ug = sigma.matrix(g)
        row = []
        for p in projections:
            moved = Ug @ p @ Ug.conj().T
            dists = [float(np.max(np.abs(moved - q))) for q in projections]
            j = int(np.argmin(dists))
            if dists[j] > RESIDUAL_TOL:
                raise ValidationError("group action does not permute the central projections")
            row.append(j)
        perm_of.append(tuple(row))

    base_index = _canonical_projection_index(projections)
    stab = tuple(
        sorted(g for g, row in zip(sigma.element_ids, perm_of) if row[base_index] == base_index)
    )
    H = Subgroup(G, stab)
    orbit = {row[base_index] for row in perm_of}
    if len(orbit) != l:
        raise ValidationError("action on central projections is not transitive (not a factor)")

    system = coset_system(G, H)
    if system.n_cosets != l:
        raise ValidationError("orbit size does not match the subgroup index")

    # order projections by coset representative: position i holds k_i . p1
    p1 = projections[base_index]
    ordered = []
    for k in system.reps:
        Uk = sigma.matrix(k)
        ordered.append(Uk @ p1 @ Uk.conj().T)
    ordered = np.array(ordered)
    action = []
    for g in sigma.element_ids:
        row = []
        for i, k in enumerate(system.reps):
            gk = G.mul(g, k)
            row.append(system.coset_of[gk])
        action.append(tuple(row))

    W1 = _range_basis(p1)
    s = W1.shape[1]
    m = sigma.dim
    if s * l != m:
        raise ValidationError("projection ranks do not tile the space")

    # U : C^m -> C^s (x) l2(G/H); row (a * l + i) is (sigma(k_i) W1[:, a])^*
    U = np.zeros((m, m), dtype=complex)
    for i, k in enumerate(system.reps):
        Wi = sigma.matrix(k) @ W1
        for a in range(s):
            U[a * l + i, :] = Wi[:, a].conj()

    # compression of sigma to the distinguished block: ordinary rep of H
    pi_mats = {h: W1.conj().T @ sigma.matrix(h) @ W1 for h in H.elements}
    pi = ProjectiveRep(H, pi_mats, tol=RESIDUAL_TOL)
    if not pi.is_ordinary(tol=RESIDUAL_TOL):
        raise ValidationError("block compression is not an ordinary representation")

    # split the compressed algebra as full matrices (x) scalars
    comp = np.array([W1.conj().T @ b @ W1 for b in B.basis])
    comp = _orthonormalize(comp, SUBSPACE_TOL)
    d2 = comp.shape[0]
    d = int(round(np.sqrt(d2)))
    if d * d != d2 or s % d != 0:
        raise ValidationError("compressed algebra is not a full matrix factor")
    r = s // d
    V = _matrix_unit_frame(comp, d, r, rng, max_tries)

    pi_prime = {h: V @ pi.matrix(h) @ V.conj().T for h in H.elements}
    rho_mats, psi_mats, split_resid = _split_tensor_factors(pi_prime, d, r, H)
    if split_resid > tol:
        raise ValidationError(
            f"tensor factorization residual {split_resid:.2e} exceeds {tol:.0e}"
        )
    rho = ProjectiveRep(H, rho_mats, tol=10 * tol)
    psi = ProjectiveRep(H, psi_mats, tol=10 * tol)
    if not rho.cocycle.close_to(psi.cocycle.conjugate(), tol=1e-5):
        raise ValidationError("recovered cocycles are not conjugate to each other")

    U_total = np.kron(V, np.eye(l, dtype=complex)) @ U
    ind = induce(tensor(rho, psi), system)
    residual = 0.0
    for g in sigma.element_ids:
        lhs = U_total @ sigma.matrix(g) @ U_total.conj().T
        residual = max(residual, float(np.max(np.abs(lhs - ind.total.matrix(g)))))
    if residual > tol:
        raise ValidationError(f"round-trip residual {residual:.2e} exceeds {tol:.0e}")

    return ImprimitivitySystem(
        sigma=sigma,
        algebra=B,
        projections=ordered,
        action=tuple(action),
        stabilizer=H,
        d=d,
        r=r,
        rho=rho,
        psi=psi,
        intertwiner=U_total,
        induced=ind,
        residual=residual,
    )


def _minimal_central_projections(
    center: np.ndarray, rng: np.random.Generator, max_tries: int
) -> np.ndarray:
    """Spectral projections of a generic self-adjoint central element; the
    split is accepted only if it produces dim Z_B clusters."""
    k = center.shape[0]
    m = center.shape[1]
    for _ in range(max_tries):
        coeff = rng.normal(size=k) + 1j * rng.normal(size=k)
        z = np.tensordot(coeff, center, axes=1)
        z = (z + z.conj().T) / 2
        vals, vecs = np.linalg.eigh(z)
        clusters = _cluster(vals, EIGENVALUE_CLUSTER_TOL * max(1.0, float(np.max(np.abs(vals)))))
        if len(clusters) != k:
            continue
        projections = []
        ok = True
        for idx in clusters:
            Vc = vecs[:, idx]
            p = Vc @ Vc.conj().T
            # p must itself be central: a projection in Z_B
            if not _in_span(center, p, SUBSPACE_TOL):
                ok = False
                break
            projections.append(p)
        if not ok:
            continue
        total = np.sum(projections, axis=0)
        if np.max(np.abs(total - np.eye(m))) > RESIDUAL_TOL:
            continue
        return np.array(projections)
    raise DegeneracyError(
        "central projection splitting stayed degenerate; retry with a new seed"
    )


def _cluster(vals: np.ndarray, tol: float) -> list[list[int]]:
    clusters: list[list[int]] = []
    for i, v in enumerate(vals):
        if clusters and abs(v - vals[clusters[-1][-1]]) < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return clusters


def _canonical_projection_index(projections: np.ndarray) -> int:
    """Deterministic distinguished projection: the one whose range touches
    the lowest standard basis vector (ties broken by rounded entries)."""
    keys = []
    for idx, p in enumerate(projections):
        diag = np.abs(np.diagonal(p))
        first = next((i for i, v in enumerate(diag) if v > 1e-6), len(diag))
        keys.append((first, np.round(p, 8).tobytes(), idx))
    return min(keys)[2]


def _range_basis(p: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(p)
    cols = [i for i, v in enumerate(vals) if v > 0.5]
    return vecs[:, cols]


def _matrix_unit_frame(
    comp: np.ndarray, d: int, r: int, rng: np.random.Generator, max_tries: int
) -> np.ndarray:
    """Unitary V with V (compressed algebra) V* = full d x d matrices (x) 1,
    built from a matrix-unit system of the compressed factor."""
    s = comp.shape[1]
    if d == 1:
        return np.eye(s, dtype=complex)
    for _ in range(max_tries):
        coeff = rng.normal(size=comp.shape[0]) + 1j * rng.normal(size=comp.shape[0])
        b = np.tensordot(coeff, comp, axes=1)
        b = (b + b.conj().T) / 2
        vals, vecs = np.linalg.eigh(b)
        clusters = _cluster(vals, EIGENVALUE_CLUSTER_TOL * max(1.0, float(np.max(np.abs(vals)))))
        if len(clusters) != d or any(len(c) != r for c in clusters):
            continue
        qs = []
        for idx in clusters:
            Vc = vecs[:, idx]
            qs.append(Vc @ Vc.conj().T)
        order = sorted(
            range(d),
            key=lambda t: next(
                (i for i, v in enumerate(np.abs(np.diagonal(qs[t]))) if v > 1e-6), s
            ),
        )
        qs = [qs[t] for t in order]
        partial = _partial_isometries(comp, qs, rng)
        if partial is None:
            continue
        f = _range_basis(qs[0])
        if f.shape[1] != r:
            continue
        V = np.zeros((s, s), dtype=complex)
        for t in range(d):
            cols = partial[t] @ f  # orthonormal basis of range(q_t) aligned with q_1
            for u in range(r):
                V[t * r + u, :] = cols[:, u].conj()
        if np.max(np.abs(V @ V.conj().T - np.eye(s))) > RESIDUAL_TOL:
            continue
        return V
    raise DegeneracyError("matrix-unit construction stayed degenerate; retry with a new seed")


def _partial_isometries(
    comp: np.ndarray, qs: list[np.ndarray], rng: np.random.Generator
) -> list[np.ndarray] | None:
    """e_t with e_t^* e_t = q_1, e_t e_t^* = q_t, e_1 = q_1."""
    d = len(qs)
    out = [qs[0]]
    for t in range(1, d):
        found = None
        for _ in range(6):
            coeff = rng.normal(size=comp.shape[0]) + 1j * rng.normal(size=comp.shape[0])
            x = np.tensordot(coeff, comp, axes=1)
            v = qs[t] @ x @ qs[0]
            gram = v.conj().T @ v
            lam = float(np.trace(gram).real) / max(1, np.linalg.matrix_rank(qs[0]))
            if lam < 1e-10:
                continue
            e = v / np.sqrt(lam)
            if np.max(np.abs(e.conj().T @ e - qs[0])) < 1e-6:
                found = e
                break
        if found is None:
            return None
        out.append(found)
    return out


def _split_tensor_factors(
    pi_prime: dict[int, np.ndarray], d: int, r: int, H: Subgroup
) -> tuple[dict[int, np.ndarray], dict[int, np.ndarray], float]:
    """Solve pi(h) = rho(h) (x) psi(h) blockwise.

    rho(h) is determined up to a phase by the inner automorphism it induces
    on the d x d factor; the gauge makes its first nonzero entry positive
    real, and psi(h) is the exact contraction of pi(h) against rho(h).
    """
    rho_mats: dict[int, np.ndarray] = {}
    psi_mats: dict[int, np.ndarray] = {}
    worst = 0.0
    for h, P in pi_prime.items():
        P4 = P.reshape(d, r, d, r)
        if d == 1:
            rho = np.eye(1, dtype=complex)
        else:
            rho = _inner_unitary(P, d, r)
            rho = _phase_gauge(rho)
        psi = np.einsum("ab,aubv->uv", rho.conj(), P4) / d
        resid = float(np.max(np.abs(P4 - np.einsum("ab,uv->aubv", rho, psi))))
        worst = max(worst, resid)
        rho_mats[h] = rho
        psi_mats[h] = psi
    return rho_mats, psi_mats, worst


def _inner_unitary(P: np.ndarray, d: int, r: int) -> np.ndarray:
    """The unitary u (up to phase) with P (y (x) 1) P* = u y u* (x) 1,
    recovered from the images of the matrix units E_11 and E_1q."""

    def phi(y: np.ndarray) -> np.ndarray:
        X = P @ np.kron(y, np.eye(r)) @ P.conj().T
        return np.einsum("aubu->ab", X.reshape(d, r, d, r)) / r

    E = np.zeros((d, d), dtype=complex)
    E[0, 0] = 1.0
    A = phi(E)
    vals, vecs = np.linalg.eigh(A)
    u1 = vecs[:, int(np.argmax(vals))]
    cols = [u1]
    for q in range(1, d):
        Eq = np.zeros((d, d), dtype=complex)
        Eq[0, q] = 1.0
        cols.append(phi(Eq).conj().T @ u1)
    return np.array(cols).T


def _phase_gauge(u: np.ndarray) -> np.ndarray:
    flat = u.reshape(-1)
    idx = next(i for i, v in enumerate(flat) if abs(v) > 1e-6)
    phase = flat[idx] / abs(flat[idx])
    return u / phase
