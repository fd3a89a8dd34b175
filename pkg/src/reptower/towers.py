"""Intertwiner-dimension towers, principal graphs, depth, and generation tests.

All multiplicity bookkeeping runs in exact integers: the fusion matrices of
the generating representation are rounded once from character inner products
and everything else is integer recursion on multiplicity vectors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .characters import CharacterTable, cached_character_table, decompose, fusion_matrix
from .errors import ValidationError
from .reps import ProjectiveRep, character, conjugate, multiplicity, strictly_equivalent
from .groups import FiniteGroup


@dataclass(frozen=True)
class TowerReport:
    """Dimension data of the two intertwiner towers of a generator.

    lower_dims[n] is the dimension of the endomorphism algebra of the
    length-n alternating word (level 0 is the unit object); upper_dims is the
    same sequence shifted one level up.  inclusion_matrices[n] connects the
    irreducible summands present at level n to those at level n+1.
    """

    sigma: ProjectiveRep
    upper_dims: tuple[int, ...]
    lower_dims: tuple[int, ...]
    level_multiplicities: tuple[tuple[int, ...], ...]
    level_supports: tuple[tuple[int, ...], ...]
    inclusion_matrices: tuple[tuple[tuple[int, ...], ...], ...]
    depth: int
    index: int


@dataclass(frozen=True)
class PrincipalGraph:
    """Bipartite fusion graph grown from the trivial character.

    Vertices are reachable irreducibles, colored by the parity of the word
    length at which they first appear; edges carry fusion multiplicities.
    """

    even_vertices: tuple[int, ...]
    odd_vertices: tuple[int, ...]
    distances: tuple[tuple[int, int], ...]  # (irreducible index, first level)
    edges: tuple[tuple[int, int, int], ...]  # (even irr, odd irr, multiplicity)
    depth: int
    degrees: tuple[tuple[str, int, int], ...]  # (parity, irr, total degree)


def _fusion_pair(sigma: ProjectiveRep, table: CharacterTable) -> tuple[np.ndarray, np.ndarray]:
    chi = character(sigma)
    return fusion_matrix(table, chi), fusion_matrix(table, chi.conjugate())


def _multiplicity_levels(
    sigma: ProjectiveRep, n_levels: int, table: CharacterTable
) -> list[list[int]]:
    """Integer multiplicity vectors of the alternating words up to n_levels."""
    F, Fbar = _fusion_pair(sigma, table)
    k = table.n_irreducibles
    levels = [[1 if i == 0 else 0 for i in range(k)]]
    for n in range(n_levels):
        step = F if n % 2 == 0 else Fbar
        prev = levels[-1]
        levels.append([sum(prev[i] * int(step[i, j]) for i in range(k)) for j in range(k)])
    return levels


def tower(sigma: ProjectiveRep, n_max: int, seed: int = 0) -> TowerReport:
    """Dimension towers up to level n_max (lower tower levels 0..n_max)."""
    if not sigma.is_ordinary():
        raise ValidationError("towers are computed for ordinary representations")
    if n_max < 1:
        raise ValidationError("n_max must be at least 1")
    G = sigma.group
    if not isinstance(G, FiniteGroup):
        raise ValidationError("the generator must be a representation of the ambient group")
    table = cached_character_table(G, seed=seed)
    levels = _multiplicity_levels(sigma, n_max + 1, table)
    lower = [sum(m * m for m in lv) for lv in levels[: n_max + 1]]
    upper = [sum(m * m for m in lv) for lv in levels[1 : n_max + 2]]

    F, Fbar = _fusion_pair(sigma, table)
    supports = [tuple(i for i, m in enumerate(lv) if m > 0) for lv in levels]
    inclusions = []
    for n in range(n_max):
        step = F if n % 2 == 0 else Fbar
        rows = supports[n]
        cols = supports[n + 1]
        inclusions.append(tuple(tuple(int(step[i, j]) for j in cols) for i in rows))

    index = sigma.dim ** 2
    degree_sum = sum(m * d for m, d in zip(levels[1], table.degrees))
    if degree_sum != sigma.dim:
        raise ValidationError("multiplicity-degree sum does not reproduce the dimension")
    graph = principal_graph(sigma, seed=seed)
    return TowerReport(
        sigma=sigma,
        upper_dims=tuple(upper),
        lower_dims=tuple(lower),
        level_multiplicities=tuple(tuple(lv) for lv in levels[: n_max + 1]),
        level_supports=tuple(supports[: n_max + 1]),
        inclusion_matrices=tuple(inclusions),
        depth=graph.depth,
        index=index,
    )


def principal_graph(sigma: ProjectiveRep, seed: int = 0) -> PrincipalGraph:
    """Breadth-first fusion from the trivial character under tensoring by
    sigma (alternating with its conjugate); depth is one past the last level
    that added a vertex."""
    if not sigma.is_ordinary():
        raise ValidationError("principal graphs are computed for ordinary representations")
    G = sigma.group
    table = cached_character_table(G, seed=seed)
    chi = character(sigma)
    if not chi.is_real(tol=1e-7):
        warnings.warn(
            "generator is not self-conjugate; using alternating words", stacklevel=2
        )
    F, Fbar = _fusion_pair(sigma, table)
    k = table.n_irreducibles

    current = [1 if i == 0 else 0 for i in range(k)]
    reached = {0}
    first_level = {0: 0}
    level = 0
    while True:
        step = F if level % 2 == 0 else Fbar
        nxt = [sum(current[i] * int(step[i, j]) for i in range(k)) for j in range(k)]
        level += 1
        new = {j for j, m in enumerate(nxt) if m > 0} - reached
        if not new:
            depth = level
            break
        for j in sorted(new):
            first_level[j] = level
        reached |= new
        current = nxt

    even = tuple(sorted(i for i, lv in first_level.items() if lv % 2 == 0))
    odd = tuple(sorted(i for i, lv in first_level.items() if lv % 2 == 1))
    edges = []
    for i in even:
        for j in odd:
            m = int(F[i, j])
            if m > 0:
                edges.append((i, j, m))
    degrees = []
    for i in even:
        degrees.append(("even", i, sum(m for a, _, m in edges if a == i)))
    for j in odd:
        degrees.append(("odd", j, sum(m for _, b, m in edges if b == j)))
    distances = tuple(sorted(first_level.items()))
    return PrincipalGraph(
        even_vertices=even,
        odd_vertices=odd,
        distances=distances,
        edges=tuple(edges),
        depth=depth,
        degrees=tuple(degrees),
    )


def closure_irreducibles(sigma: ProjectiveRep, seed: int = 0) -> frozenset[int]:
    """Support of the smallest set of irreducibles containing the trivial one
    and the summands of sigma, closed under conjugates and under tensoring
    with sigma or its conjugate."""
    if not sigma.is_ordinary():
        raise ValidationError("closure is computed for ordinary representations")
    G = sigma.group
    table = cached_character_table(G, seed=seed)
    chi = character(sigma)
    F, Fbar = _fusion_pair(sigma, table)
    k = table.n_irreducibles
    reached = {0} | {i for i, m in enumerate(decompose(chi, table)) if m > 0}
    frontier = set(reached)
    while frontier:
        new = set()
        for i in frontier:
            for j in range(k):
                if (F[i, j] > 0 or Fbar[i, j] > 0) and j not in reached:
                    new.add(j)
        reached |= new
        frontier = new
    # close under conjugation: the conjugate of row i is some row j
    conj_map = _conjugation_map(table)
    while True:
        extra = {conj_map[i] for i in reached} - reached
        if not extra:
            break
        reached |= extra
    return frozenset(reached)


def _conjugation_map(table: CharacterTable) -> dict[int, int]:
    out = {}
    for i, row in enumerate(table.rows):
        target = row.conjugate()
        for j, other in enumerate(table.rows):
            if max(abs(a - b) for a, b in zip(target.values, other.values)) < 1e-6:
                out[i] = j
                break
        else:
            raise ValidationError("conjugate character missing from the table")
    return out


def generates(sigma: ProjectiveRep, seed: int = 0) -> bool:
    """Whether every irreducible eventually appears in a word in sigma and
    its conjugate."""
    G = sigma.group
    table = cached_character_table(G, seed=seed)
    return len(closure_irreducibles(sigma, seed=seed)) == table.n_irreducibles


@dataclass(frozen=True)
class GeneratorProperties:
    self_conjugate: bool
    unit_is_proper_subobject: bool
    generates_all: bool


def check_generator_properties(sigma: ProjectiveRep, seed: int = 0) -> GeneratorProperties:
    """The three conditions a canonical generator satisfies: self-conjugacy,
    the trivial character as a proper summand, and generation of all
    irreducibles."""
    if not sigma.is_ordinary():
        raise ValidationError("generator checks require an ordinary representation")
    chi = character(sigma)
    self_conj = False
    if chi.is_real(tol=1e-7):
        ok, _ = strictly_equivalent(sigma, conjugate(sigma), seed=seed)
        self_conj = ok
    table = cached_character_table(sigma.group, seed=seed)
    contains_unit = multiplicity(table.rows[0], chi) >= 1
    proper = contains_unit and sigma.dim > 1
    return GeneratorProperties(
        self_conjugate=self_conj,
        unit_is_proper_subobject=proper,
        generates_all=generates(sigma, seed=seed),
    )


def graph_to_dot(graph: PrincipalGraph, table: CharacterTable | None = None) -> str:
    """Deterministic DOT rendering with depth annotation and degree labels."""
    lines = [
        "graph principal {",
        f'    label="depth {graph.depth}";',
        "    node [shape=circle];",
    ]
    deg = {(p, i): d for p, i, d in graph.degrees}
    for i in graph.even_vertices:
        extra = f", irr degree {table.degrees[i]}" if table is not None else ""
        lines.append(
            f'    e{i} [shape=box, label="chi{i} (deg {deg[("even", i)]}{extra})"];'
        )
    for j in graph.odd_vertices:
        extra = f", irr degree {table.degrees[j]}" if table is not None else ""
        lines.append(f'    o{j} [label="chi{j} (deg {deg[("odd", j)]}{extra})"];')
    for i, j, m in graph.edges:
        attr = f' [label="{m}"]' if m > 1 else ""
        lines.append(f"    e{i} -- o{j}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_adjacency(graph: PrincipalGraph) -> dict:
    """JSON-ready adjacency report."""
    return {
        "schema": 1,
        "depth": graph.depth,
        "even_vertices": list(graph.even_vertices),
        "odd_vertices": list(graph.odd_vertices),
        "first_levels": [list(t) for t in graph.distances],
        "edges": [list(e) for e in graph.edges],
        "degree_sequence": sorted(d for _, _, d in graph.degrees),
    }


def fingerprint(index: int, graph: PrincipalGraph) -> tuple:
    """(index, depth, sorted vertex degree sequence)."""
    return (index, graph.depth, tuple(sorted(d for _, _, d in graph.degrees)))
