"""Classification data for (G, H, psi) triples: the kernel condition, full
invariant reports, and enumeration over subgroups and degree-1 characters.

The condition, the kernel of the induced generator, and the category
generation test are computed along independent routes; they must agree, and
a disagreement is raised as an InconsistencyError rather than patched.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .errors import InconsistencyError, ValidationError
from .groups import FiniteGroup, Subgroup, core, subgroups_up_to_conjugacy
from .induction import InducedRep, build_sigma, kernel
from .reps import (
    ProjectiveRep,
    commutant_dimension,
    linear_characters,
    projective_kernel,
)
from .towers import PrincipalGraph, TowerReport, fingerprint, generates, principal_graph, tower

DEFAULT_TOWER_LEVELS = 6


@dataclass(frozen=True)
class ClassificationRecord:
    """All finite invariants attached to one (G, H, psi) triple."""

    group: FiniteGroup
    subgroup: Subgroup
    psi: ProjectiveRep
    psi_label: str
    r: int
    condition_holds: bool
    kernel_K: Subgroup
    index: int
    irreducible: bool
    rel_commutant_dim: int
    category_is_UG: bool
    sigma: InducedRep
    tower: TowerReport
    graph: PrincipalGraph
    fingerprint: tuple
    possibly_isomorphic_to: tuple[str, ...] = field(default=())

    @property
    def depth(self) -> int:
        return self.graph.depth

    @property
    def label(self) -> str:
        names = ",".join(self.group.labels[g] for g in self.subgroup.elements)
        return f"H={{{names}}};psi={self.psi_label}"


def check_condition(G: FiniteGroup, H: Subgroup, psi: ProjectiveRep) -> bool:
    """Whether the projective kernel of psi restricted to the normal core of
    H is trivial."""
    if psi.group is not H:
        raise ValidationError("psi is not keyed by the given subgroup")
    if H.parent is not G:
        raise ValidationError("subgroup does not belong to the given group")
    ker = projective_kernel(psi, restrict_to=core(G, H))
    return ker.elements == (G.identity,)


def report(
    G: FiniteGroup,
    H: Subgroup,
    psi: ProjectiveRep,
    *,
    psi_label: str = "user",
    n_max: int = DEFAULT_TOWER_LEVELS,
    seed: int = 0,
) -> ClassificationRecord:
    """Assemble the full record; the three independently computed verdicts
    must agree or the identity they encode has been violated."""
    condition = check_condition(G, H, psi)
    sigma = build_sigma(H, psi)
    kernel_K = kernel(sigma.total)
    trivial_kernel = kernel_K.elements == (G.identity,)
    is_ug = generates(sigma.total, seed=seed)
    if not (condition == trivial_kernel == is_ug):
        raise InconsistencyError(
            "independently computed verdicts disagree: "
            f"condition={condition}, trivial_kernel={trivial_kernel}, "
            f"generates={is_ug} for H={H.elements}, psi={psi_label}"
        )
    index = (G.order // H.order) * psi.dim ** 2
    rel_dim = commutant_dimension(psi)
    tw = tower(sigma.total, n_max=n_max, seed=seed)
    graph = principal_graph(sigma.total, seed=seed)
    return ClassificationRecord(
        group=G,
        subgroup=H,
        psi=psi,
        psi_label=psi_label,
        r=psi.dim,
        condition_holds=condition,
        kernel_K=kernel_K,
        index=index,
        irreducible=rel_dim == 1,
        rel_commutant_dim=rel_dim,
        category_is_UG=is_ug,
        sigma=sigma,
        tower=tw,
        graph=graph,
        fingerprint=fingerprint(index, graph),
    )


def enumerate_records(
    G: FiniteGroup,
    *,
    n_max: int = DEFAULT_TOWER_LEVELS,
    seed: int = 0,
    extra_reps: list[tuple[Subgroup, ProjectiveRep, str]] | None = None,
    up_to_conjugacy: bool = True,
) -> list[ClassificationRecord]:
    """Records for every candidate (H, psi): H runs over subgroups (up to
    conjugacy by default), psi over the degree-1 ordinary characters of H
    plus any user-supplied representations.

    Records sharing an invariant fingerprint are cross-flagged as possibly
    isomorphic; the tool never decides isomorphism.
    """
    if up_to_conjugacy:
        subgroups = subgroups_up_to_conjugacy(G)
    else:
        from .groups import all_subgroups

        subgroups = all_subgroups(G)
    extra = extra_reps or []
    records: list[ClassificationRecord] = []
    for H in subgroups:
        for i, chi in enumerate(linear_characters(H)):
            records.append(
                report(G, H, chi, psi_label=f"char{i}", n_max=n_max, seed=seed)
            )
        for H_user, psi, name in extra:
            if H_user.elements == H.elements:
                records.append(
                    report(G, H, _rekey(psi, H), psi_label=name, n_max=n_max, seed=seed)
                )
    records.sort(key=lambda rec: (rec.index, rec.depth, rec.subgroup.elements, rec.psi_label))
    by_fp: dict[tuple, list[int]] = {}
    for pos, rec in enumerate(records):
        by_fp.setdefault(rec.fingerprint, []).append(pos)
    out = []
    for pos, rec in enumerate(records):
        peers = tuple(
            records[other].label for other in by_fp[rec.fingerprint] if other != pos
        )
        out.append(_with_peers(rec, peers))
    return out


def _rekey(psi: ProjectiveRep, H: Subgroup) -> ProjectiveRep:
    if psi.group is H:
        return psi
    if tuple(psi.group.element_ids) != H.elements:
        raise ValidationError("user representation does not match the subgroup elements")
    return ProjectiveRep(H, {g: psi.matrix(g) for g in H.elements})


def _with_peers(rec: ClassificationRecord, peers: tuple[str, ...]) -> ClassificationRecord:
    return dataclasses.replace(rec, possibly_isomorphic_to=peers)
