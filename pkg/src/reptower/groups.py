"""Finite-group arithmetic on element-indexed multiplication tables.

Elements of a group of order n are the integers 0..n-1.  A subgroup is a
sorted tuple of parent indices and delegates all arithmetic to its parent, so
representations of a subgroup can be keyed by parent element ids throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

ASSOC_EXHAUSTIVE_MAX = 64
ASSOC_SAMPLES = 20000
SUBGROUP_ORDER_CAP = 128
GENERATOR_CLOSURE_CAP = 5000


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes of a group; class 0 is the class of the identity."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    class_sizes: tuple[int, ...]


class FiniteGroup:
    """A finite group given by its multiplication table.

    Attributes:
        order: number of elements.
        mult: order x order table, mult[a][b] = index of a*b.
        identity: index of the neutral element.
        inv: per-element inverse table.
        labels: display names, one per element.
    """

    def __init__(self, mult: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        table = np.asarray(mult, dtype=np.int64)
        _validate_table(table)
        self.order: int = table.shape[0]
        self.mult = table
        self.mult.setflags(write=False)
        self.identity: int = _find_identity(table)
        self.inv: tuple[int, ...] = tuple(
            int(np.where(table[a] == self.identity)[0][0]) for a in range(self.order)
        )
        if labels is None:
            labels = [f"g{i}" for i in range(self.order)]
        if len(labels) != self.order:
            raise ValidationError(f"expected {self.order} labels, got {len(labels)}")
        self.labels: tuple[str, ...] = tuple(str(x) for x in labels)
        if len(set(self.labels)) != self.order:
            raise ValidationError("element labels must be distinct")

    # -- protocol shared with Subgroup -------------------------------------

    @property
    def element_ids(self) -> tuple[int, ...]:
        return tuple(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def label(self, a: int) -> str:
        return self.labels[a]

    # -----------------------------------------------------------------------

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv[g])

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        """Conjugacy classes, identity class first, then by smallest member."""
        seen = [False] * self.order
        classes: list[tuple[int, ...]] = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = sorted({self.conjugate(g, x) for g in range(self.order)})
            for y in cls:
                seen[y] = True
            classes.append(tuple(cls))
        classes.sort(key=lambda c: (c[0] != self.identity, c[0]))
        class_of = [0] * self.order
        for i, cls in enumerate(classes):
            for y in cls:
                class_of[y] = i
        return ConjugacyData(
            classes=tuple(classes),
            class_of=tuple(class_of),
            class_sizes=tuple(len(c) for c in classes),
        )

    def index_of_label(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise ValidationError(f"unknown element label {name!r}") from None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted tuple of parent element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        G = self.parent
        if not elems or any(not 0 <= x < G.order for x in elems):
            raise ValidationError("subgroup elements out of range")
        s = frozenset(elems)
        if G.identity not in s:
            raise ValidationError("subgroup must contain the identity")
        for a in elems:
            if G.inv[a] not in s:
                raise ValidationError("subgroup not closed under inverse")
            for b in elems:
                if G.mul(a, b) not in s:
                    raise ValidationError("subgroup not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return self.parent.identity

    @property
    def element_ids(self) -> tuple[int, ...]:
        return self.elements

    def mul(self, a: int, b: int) -> int:
        return self.parent.mul(a, b)

    def inverse(self, a: int) -> int:
        return self.parent.inverse(a)

    def label(self, a: int) -> str:
        return self.parent.labels[a]

    def __contains__(self, g: int) -> bool:
        return g in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def is_normal(self) -> bool:
        G = self.parent
        s = self._member_set
        return all(G.conjugate(g, x) in s for g in range(G.order) for x in self.elements)

    @cached_property
    def local(self) -> FiniteGroup:
        """The subgroup as a standalone group on local indices 0..|H|-1,
        ordered like `elements`."""
        pos = {g: i for i, g in enumerate(self.elements)}
        table = [
            [pos[self.parent.mul(a, b)] for b in self.elements] for a in self.elements
        ]
        labels = [self.parent.labels[g] for g in self.elements]
        return FiniteGroup(table, labels=labels)

    def to_parent(self, local_index: int) -> int:
        return self.elements[local_index]

    def from_parent(self, g: int) -> int:
        return self.elements.index(g)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent.order})"


@dataclass(frozen=True)
class CosetSystem:
    """Left cosets kH with a fixed representative per coset.

    reps[0] is the identity; every g factors uniquely as g = k(g) h(g) with
    k(g) a representative and h(g) in H.
    """

    subgroup: Subgroup
    reps: tuple[int, ...]
    coset_of: tuple[int, ...]  # element -> index into reps

    @property
    def n_cosets(self) -> int:
        return len(self.reps)

    def factorize(self, g: int) -> tuple[int, int]:
        """Return (k, h) with g = k*h, k a coset representative, h in H."""
        G = self.subgroup.parent
        k = self.reps[self.coset_of[g]]
        h = G.mul(G.inv[k], g)
        return k, h


def _validate_table(table: np.ndarray) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValidationError("multiplication table must be square")
    n = table.shape[0]
    if n == 0:
        raise ValidationError("empty multiplication table")
    if table.min() < 0 or table.max() >= n:
        raise ValidationError("table entries out of range")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), full):
            raise ValidationError(f"row {i} is not a permutation: not a Latin square")
        if not np.array_equal(np.sort(table[:, i]), full):
            raise ValidationError(f"column {i} is not a permutation: not a Latin square")
    if n <= ASSOC_EXHAUSTIVE_MAX:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = np.random.default_rng(0)
        triples = (tuple(t) for t in rng.integers(0, n, size=(ASSOC_SAMPLES, 3)))
    for a, b, c in triples:
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise ValidationError(f"table is not associative at ({a},{b},{c})")


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    full = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], full) and np.array_equal(table[:, e], full):
            return e
    raise ValidationError("table has no identity element")


def load_group(data: dict) -> FiniteGroup:
    """Build a group from a parsed description.

    Accepts {"mult": [[...]], "labels": [...]} or
    {"permutations": [[...], ...]} with 0-based images.
    """
    if not isinstance(data, dict):
        raise ValidationError("group description must be a JSON object")
    if "mult" in data:
        labels = data.get("labels")
        G = FiniteGroup(data["mult"], labels=labels)
        if "order" in data and int(data["order"]) != G.order:
            raise ValidationError(
                f"declared order {data['order']} does not match table size {G.order}"
            )
        return G
    if "permutations" in data:
        return group_from_permutations(data["permutations"])
    raise ValidationError("group description needs a 'mult' table or 'permutations'")


def group_from_permutations(
    generators: Sequence[Sequence[int]], max_order: int = GENERATOR_CLOSURE_CAP
) -> FiniteGroup:
    """Closure of permutation generators under composition; (p*q)(x) = p(q(x))."""
    if not generators:
        raise ValidationError("need at least one permutation generator")
    npts = len(generators[0])
    gens = []
    for p in generators:
        tp = tuple(int(x) for x in p)
        if sorted(tp) != list(range(npts)):
            raise ValidationError(f"not a permutation of 0..{npts - 1}: {p}")
        gens.append(tp)
    ident = tuple(range(npts))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                pq = tuple(p[q[x]] for x in range(npts))
                if pq not in seen:
                    seen.add(pq)
                    elements.append(pq)
                    nxt.append(pq)
                    if len(elements) > max_order:
                        raise ValidationError(
                            f"generator closure exceeds the cap of {max_order} elements"
                        )
        frontier = nxt
    elements.sort()
    pos = {p: i for i, p in enumerate(elements)}
    table = [
        [pos[tuple(p[q[x]] for x in range(npts))] for q in elements] for p in elements
    ]
    labels = ["(" + " ".join(map(str, p)) + ")" for p in elements]
    return FiniteGroup(table, labels=labels)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing gens."""
    current = {G.identity}
    frontier = [G.identity]
    gens = list(gens) or [G.identity]
    for g in gens:
        if not 0 <= g < G.order:
            raise ValidationError(f"generator index {g} out of range")
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                for b in (G.mul(a, s), G.mul(s, a)):
                    if b not in current:
                        current.add(b)
                        nxt.append(b)
        frontier = nxt
    return Subgroup(G, tuple(sorted(current)))


def all_subgroups(G: FiniteGroup, max_order: int = SUBGROUP_ORDER_CAP) -> list[Subgroup]:
    """Every subgroup of G exactly once, sorted by (order, elements).

    Cyclic-extension enumeration: grow each known subgroup by one outside
    element and close; Lagrange prunes extensions that cannot stay proper.
    """
    if G.order > max_order:
        raise ValidationError(
            f"group order {G.order} exceeds the subgroup enumeration cap {max_order}"
        )
    trivial = frozenset({G.identity})
    found: set[frozenset[int]] = {trivial, frozenset(range(G.order))}
    frontier = [trivial]
    while frontier:
        nxt = []
        for s in frontier:
            if 2 * len(s) > G.order:
                continue  # only G itself can contain it properly
            for g in range(G.order):
                if g in s:
                    continue
                t = frozenset(generated_subgroup_elements(G, s, g))
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    subs = [Subgroup(G, tuple(sorted(s))) for s in found]
    subs.sort(key=lambda H: (H.order, H.elements))
    return subs


def generated_subgroup_elements(G: FiniteGroup, base: frozenset[int], g: int) -> set[int]:
    current = set(base)
    current.add(g)
    frontier = list(current)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(current):
                for c in (G.mul(a, b), G.mul(b, a)):
                    if c not in current:
                        current.add(c)
                        nxt.append(c)
        frontier = nxt
    return current


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Normal core: the intersection of all conjugates g H g^-1."""
    if H.parent is not G:
        raise ValidationError("subgroup does not belong to the given group")
    remaining = set(H.elements)
    for g in range(G.order):
        conj = {G.conjugate(g, x) for x in H.elements}
        remaining &= conj
        if remaining == {G.identity}:
            break
    return Subgroup(G, tuple(sorted(remaining)))


def coset_system(G: FiniteGroup, H: Subgroup) -> CosetSystem:
    """Left-coset system with deterministic representatives.

    The coset H itself is represented by the identity and listed first;
    every other coset gets its smallest element index, ordered by it.
    """
    if H.parent is not G:
        raise ValidationError("subgroup does not belong to the given group")
    visited = [False] * G.order
    cosets: list[tuple[int, list[int]]] = []
    for g in range(G.order):
        if visited[g]:
            continue
        members = sorted(G.mul(g, h) for h in H.elements)
        for x in members:
            visited[x] = True
        # the identity's coset sorts first regardless of its smallest member
        key = -1 if G.identity in members else members[0]
        cosets.append((key, members))
    cosets.sort(key=lambda t: t[0])
    reps: list[int] = []
    coset_of = [-1] * G.order
    for idx, (key, members) in enumerate(cosets):
        rep = G.identity if key == -1 else members[0]
        reps.append(rep)
        for x in members:
            coset_of[x] = idx
    return CosetSystem(subgroup=H, reps=tuple(reps), coset_of=tuple(coset_of))


def subgroup_conjugates(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Element tuples of all conjugates gHg^-1, deduplicated and sorted."""
    seen = {tuple(sorted(G.conjugate(g, x) for x in H.elements)) for g in range(G.order)}
    return sorted(seen)


def subgroups_up_to_conjugacy(G: FiniteGroup, max_order: int = SUBGROUP_ORDER_CAP) -> list[Subgroup]:
    """One representative per conjugacy class of subgroups: the class member
    with the lexicographically smallest element tuple."""
    reps = []
    seen: set[tuple[int, ...]] = set()
    for H in all_subgroups(G, max_order=max_order):
        if H.elements in seen:
            continue
        conjugates = subgroup_conjugates(G, H)
        seen.update(conjugates)
        reps.append(Subgroup(G, conjugates[0]))
    reps.sort(key=lambda H: (H.order, H.elements))
    return reps


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {
        G.mul(G.mul(a, b), G.mul(G.inv[a], G.inv[b]))
        for a in range(G.order)
        for b in range(G.order)
    }
    return generated_subgroup(G, sorted(comms))


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The quotient G/N for a normal subgroup N.

    Returns (Q, proj) where proj[g] is the index in Q of the coset gN.
    Cosets are ordered by smallest member, identity coset first.
    """
    if not N.is_normal():
        raise ValidationError("quotient requires a normal subgroup")
    system = coset_system(G, N)
    proj = system.coset_of
    k = system.n_cosets
    table = [[0] * k for _ in range(k)]
    for i, a in enumerate(system.reps):
        for j, b in enumerate(system.reps):
            table[i][j] = proj[G.mul(a, b)]
    labels = [f"[{G.labels[r]}]" for r in system.reps]
    return FiniteGroup(table, labels=labels), proj
