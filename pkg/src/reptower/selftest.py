"""Built-in verification suite: the identities the tool is contractually
expected to reproduce, run end to end on the bundled fixtures.

Each check returns a CheckResult; the CLI `selftest` command prints one
pass/fail line per check and exits nonzero if any fails.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .classify import enumerate_records, report
from .groups import FiniteGroup, Subgroup, core, coset_system, subgroups_up_to_conjugacy
from .induction import InducedRep, build_sigma, frobenius_character, kernel
from .imprimitivity import MatrixStarAlgebra, decompose
from .reps import (
    ProjectiveRep,
    character,
    conjugate,
    linear_characters,
    projective_kernel,
    tensor,
    trivial_rep,
)
from .serialize import (
    canonical_dumps,
    fixture_path,
    load_group_file,
    load_rep_file,
    record_to_json,
)
from .standard import whole_group
from .towers import generates, tower

FIXTURE_GROUPS = (
    "z2.json",
    "z3.json",
    "z4.json",
    "z5.json",
    "z6.json",
    "z8.json",
    "z12.json",
    "v4.json",
    "s3.json",
    "d4.json",
    "q8.json",
)

KERNEL_TOL = 1e-9
FROBENIUS_TOL = 1e-8
ORTHOGONALITY_TOL = 1e-8
ROUNDTRIP_TOL = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass(frozen=True)
class CorpusCase:
    group_name: str
    group: FiniteGroup
    subgroup: Subgroup
    psi: ProjectiveRep
    psi_label: str
    sigma: InducedRep


def _fixture_group(name: str) -> FiniteGroup:
    return load_group_file(fixture_path(name))


def _pauli_on(v4: FiniteGroup) -> ProjectiveRep:
    H = whole_group(v4)
    rep = load_rep_file(fixture_path("pauli.json"), v4)
    return ProjectiveRep(H, {g: rep.matrix(g) for g in range(v4.order)})


def build_corpus(seed: int = 0) -> list[CorpusCase]:
    """(G, H, psi) cases: every subgroup class of every fixture group with
    every degree-1 character, the Pauli representation, and seeded
    random-unitary conjugates of a sample of cases."""
    rng = np.random.default_rng(seed)
    cases: list[CorpusCase] = []
    for name in FIXTURE_GROUPS:
        G = _fixture_group(name)
        for H in subgroups_up_to_conjugacy(G):
            for i, chi in enumerate(linear_characters(H)):
                sigma = build_sigma(H, chi)
                cases.append(CorpusCase(name, G, H, chi, f"char{i}", sigma))
    v4 = _fixture_group("v4.json")
    psi = _pauli_on(v4)
    cases.append(
        CorpusCase("v4.json", v4, psi.group, psi, "pauli", build_sigma(psi.group, psi))
    )
    # random-unitary conjugated variants: the invariants must not move
    picks = rng.choice(len(cases), size=8, replace=False)
    for pick in picks:
        base = cases[int(pick)]
        r = base.psi.dim
        U = _random_unitary(rng, r)
        mats = {g: U @ base.psi.matrix(g) @ U.conj().T for g in base.psi.element_ids}
        twisted = ProjectiveRep(base.subgroup, mats)
        cases.append(
            CorpusCase(
                base.group_name,
                base.group,
                base.subgroup,
                twisted,
                base.psi_label + "-conj",
                build_sigma(base.subgroup, twisted),
            )
        )
    return cases


def _random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(A)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def check_pauli_report(seed: int = 0) -> CheckResult:
    """The worked 2x2 example: index 4, irreducible, depth 2, condition holds."""
    start = time.perf_counter()
    v4 = _fixture_group("v4.json")
    psi = _pauli_on(v4)
    rec = report(v4, psi.group, psi, psi_label="pauli", seed=seed)
    elapsed = time.perf_counter() - start
    ok = (
        rec.index == 4
        and rec.irreducible
        and rec.depth == 2
        and rec.condition_holds
        and elapsed < 1.0
    )
    detail = (
        f"index={rec.index} irreducible={rec.irreducible} depth={rec.depth} "
        f"condition={rec.condition_holds} ({elapsed:.3f}s)"
    )
    return CheckResult("pauli-report", ok, detail, elapsed)


def check_kernel_identity(cases: list[CorpusCase]) -> CheckResult:
    """kernel(induced generator) equals the projective kernel of psi on the
    normal core, as exact element sets, on every corpus case."""
    start = time.perf_counter()
    failures = []
    for case in cases:
        lhs = kernel(case.sigma.total, tol=KERNEL_TOL).elements
        rhs = projective_kernel(
            case.psi, restrict_to=core(case.group, case.subgroup), tol=KERNEL_TOL
        ).elements
        if lhs != rhs:
            failures.append(f"{case.group_name}:{case.psi_label}")
    elapsed = time.perf_counter() - start
    detail = f"{len(cases)} cases, {len(failures)} failures ({elapsed:.2f}s)"
    if failures:
        detail += ": " + ", ".join(failures[:5])
    return CheckResult("kernel-identity", not failures, detail, elapsed)


def check_generation_criterion(cases: list[CorpusCase], seed: int = 0) -> CheckResult:
    """Generation of all irreducibles if and only if the kernel is trivial,
    both sides computed independently."""
    start = time.perf_counter()
    failures = []
    for case in cases:
        gen = generates(case.sigma.total, seed=seed)
        triv = kernel(case.sigma.total).elements == (case.group.identity,)
        if gen != triv:
            failures.append(f"{case.group_name}:{case.psi_label}")
    elapsed = time.perf_counter() - start
    detail = f"{len(cases)} cases, {len(failures)} disagreements ({elapsed:.2f}s)"
    return CheckResult("generation-criterion", not failures, detail, elapsed)


def check_frobenius_oracle(cases: list[CorpusCase]) -> CheckResult:
    """Trace of the induced matrices against the transversal character sum."""
    start = time.perf_counter()
    worst = 0.0
    for case in cases:
        got = character(case.sigma.total)
        want = frobenius_character(case.sigma.base, case.sigma.cosets)
        worst = max(worst, max(abs(a - b) for a, b in zip(got.values, want.values)))
    elapsed = time.perf_counter() - start
    return CheckResult(
        "frobenius-oracle",
        worst < FROBENIUS_TOL,
        f"max deviation {worst:.2e} over {len(cases)} cases ({elapsed:.2f}s)",
        elapsed,
    )


def check_character_orthogonality(seed: int = 0) -> CheckResult:
    """Row orthonormality within 1e-8 and degree squares summing exactly to
    the group order, for every fixture group."""
    from .characters import character_table

    start = time.perf_counter()
    worst = 0.0
    ok = True
    for name in FIXTURE_GROUPS:
        G = _fixture_group(name)
        table = character_table(G, seed=seed)
        arr = table.as_array()
        sizes = np.array(G.conjugacy.class_sizes, dtype=float)
        gram = (arr * sizes) @ arr.conj().T / G.order
        worst = max(worst, float(np.max(np.abs(gram - np.eye(len(arr))))))
        if sum(d * d for d in table.degrees) != G.order:
            ok = False
    elapsed = time.perf_counter() - start
    return CheckResult(
        "character-orthogonality",
        ok and worst < ORTHOGONALITY_TOL,
        f"max gram deviation {worst:.2e} across {len(FIXTURE_GROUPS)} groups ({elapsed:.2f}s)",
        elapsed,
    )


def check_tower_values(seed: int = 0) -> CheckResult:
    """Frozen dimension sequences: the order-2 regular generator gives
    (1, 2, 8, 32) with index 4; the Pauli generator gives (1, 4, 64) with
    index 16."""
    from .reps import regular_rep

    start = time.perf_counter()
    z2 = _fixture_group("z2.json")
    tw1 = tower(regular_rep(z2), n_max=3, seed=seed)
    v4 = _fixture_group("v4.json")
    psi = _pauli_on(v4)
    tw2 = tower(build_sigma(psi.group, psi).total, n_max=2, seed=seed)
    ok = (
        tw1.lower_dims == (1, 2, 8, 32)
        and tw1.index == 4
        and tw2.lower_dims == (1, 4, 64)
        and tw2.index == 16
    )
    elapsed = time.perf_counter() - start
    detail = (
        f"z2: dims {tw1.lower_dims} index {tw1.index}; "
        f"pauli: dims {tw2.lower_dims} index {tw2.index} ({elapsed:.2f}s)"
    )
    return CheckResult("tower-values", ok, detail, elapsed)


def roundtrip_cases(seed: int = 0) -> list[tuple[str, FiniteGroup, Subgroup, ProjectiveRep, ProjectiveRep]]:
    """(name, G, H, rho, psi) constructions with d, r <= 2 whose induced
    product is decomposed back."""
    from .standard import (
        dihedral,
        pauli_rep,
        quaternion,
        rep_by_labels,
        rotation_rep_dihedral,
        spin_rep_quaternion,
        symmetric,
        standard_rep_symmetric,
    )

    rng = np.random.default_rng(seed)
    out = []
    # degree-1 pairs across fixture groups
    for name in ("z4.json", "z6.json", "z8.json", "z12.json", "v4.json", "s3.json", "d4.json", "q8.json"):
        G = _fixture_group(name)
        for H in subgroups_up_to_conjugacy(G):
            chars = linear_characters(H)
            if len(chars) < 2:
                continue
            i = int(rng.integers(0, len(chars)))
            j = int(rng.integers(0, len(chars)))
            out.append((f"{name}|H{H.order}|chars{i}{j}", G, H, chars[i], chars[j]))
    # two-dimensional blocks
    s3 = symmetric(3)
    Hs = whole_group(s3)
    std = standard_rep_symmetric(s3, 3)
    std_H = ProjectiveRep(Hs, {g: std.matrix(g) for g in range(s3.order)})
    out.append(("s3|std x trivial", s3, Hs, std_H, trivial_rep(Hs)))
    d4 = dihedral(4)
    Hd = whole_group(d4)
    rot = rotation_rep_dihedral(d4, 4)
    rot_H = ProjectiveRep(Hd, {g: rot.matrix(g) for g in range(d4.order)})
    out.append(("d4|trivial x rot", d4, Hd, trivial_rep(Hd), rot_H))
    q8 = quaternion()
    Hq = whole_group(q8)
    spin = spin_rep_quaternion(q8)
    spin_H = ProjectiveRep(Hq, {g: spin.matrix(g) for g in range(q8.order)})
    out.append(("q8|spin x spin", q8, Hq, conjugate(spin_H), spin_H))
    v4 = _fixture_group("v4.json")
    psi = _pauli_on(v4)
    out.append(("v4|pauli", v4, psi.group, conjugate(psi), psi))
    # a transported Pauli pair on the central Klein subgroup of dihedral(4)
    sub = Subgroup(
        d4,
        tuple(
            sorted(
                d4.index_of_label(x) for x in ("r0", "r2", "sr0", "sr2")
            )
        ),
    )
    transported = {
        "r0": np.eye(2, dtype=complex),
        "r2": np.array([[0, 1], [1, 0]], dtype=complex),
        "sr0": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "sr2": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    mats = {d4.index_of_label(k): m for k, m in transported.items()}
    psi_t = ProjectiveRep(sub, mats)
    out.append(("d4|transported pauli", d4, sub, conjugate(psi_t), psi_t))
    return out


def block_algebra(d: int, r: int, n: int) -> MatrixStarAlgebra:
    """L(C^d) (x) 1_r (x) diagonal coset algebra, in the induced basis."""
    mats = []
    for a in range(d):
        for b in range(d):
            E = np.zeros((d, d), dtype=complex)
            E[a, b] = 1.0
            inner = np.kron(E, np.eye(r, dtype=complex))
            for i in range(n):
                D = np.zeros((n, n), dtype=complex)
                D[i, i] = 1.0
                mats.append(np.kron(inner, D))
    return MatrixStarAlgebra.from_spanning(mats)


def check_imprimitivity_roundtrip(seed: int = 0) -> CheckResult:
    """decompose on induced products recovers a stabilizer conjugate to H
    with round-trip residual below 1e-6."""
    from .groups import subgroup_conjugates

    start = time.perf_counter()
    cases = roundtrip_cases(seed=seed)
    failures = []
    for tag, G, H, rho, psi in cases:
        system = coset_system(G, H)
        ind = build_product_induction(rho, psi, system)
        B = block_algebra(rho.dim, psi.dim, system.n_cosets)
        try:
            result = decompose(ind.total, B, seed=seed)
        except Exception as err:  # noqa: BLE001 - report, don't crash the suite
            failures.append(f"{tag}: {err}")
            continue
        conjugates = subgroup_conjugates(G, H)
        if result.stabilizer.elements not in conjugates:
            failures.append(f"{tag}: stabilizer not conjugate to H")
        elif result.residual >= ROUNDTRIP_TOL:
            failures.append(f"{tag}: residual {result.residual:.2e}")
    elapsed = time.perf_counter() - start
    detail = f"{len(cases)} constructions, {len(failures)} failures ({elapsed:.2f}s)"
    if failures:
        detail += ": " + "; ".join(failures[:4])
    return CheckResult(
        "imprimitivity-roundtrip",
        not failures and len(cases) >= 20 and elapsed < 60.0,
        detail,
        elapsed,
    )


def build_product_induction(rho: ProjectiveRep, psi: ProjectiveRep, system) -> InducedRep:
    from .induction import induce

    return induce(tensor(rho, psi), system)


def check_enumerate_determinism(seed: int = 0) -> CheckResult:
    """Two runs over the order-6 nonabelian fixture must emit byte-identical
    JSON."""
    start = time.perf_counter()
    outputs = []
    for _ in range(2):
        G = _fixture_group("s3.json")
        records = enumerate_records(G, seed=seed)
        payload = [record_to_json(rec) for rec in records]
        outputs.append(canonical_dumps(payload).encode())
    elapsed = time.perf_counter() - start
    ok = outputs[0] == outputs[1]
    return CheckResult(
        "enumerate-determinism",
        ok,
        f"byte-identical={ok}, {len(outputs[0])} bytes ({elapsed:.2f}s)",
        elapsed,
    )


def run_all(seed: int = 0) -> list[CheckResult]:
    start = time.perf_counter()
    results = [check_pauli_report(seed)]
    cases = build_corpus(seed)
    results.append(check_kernel_identity(cases))
    results.append(check_generation_criterion(cases, seed))
    results.append(check_frobenius_oracle(cases))
    results.append(check_character_orthogonality(seed))
    results.append(check_tower_values(seed))
    results.append(check_imprimitivity_roundtrip(seed))
    results.append(check_enumerate_determinism(seed))
    total = time.perf_counter() - start
    results.append(
        CheckResult("total-runtime", total < 120.0, f"{total:.2f}s (limit 120s)", total)
    )
    return results


def main(seed: int = 0) -> int:
    results = run_all(seed)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}: {res.detail}")
    return 0 if all(r.passed for r in results) else 1
