"""JSON input/output for groups, representations, and reports.

Schemas carry a "schema": 1 field.  Complex numbers are [re, im] pairs and
matrices are row-major nested lists of such pairs.  All emitters are
deterministic: keys sorted, floats rounded to 12 places, -0.0 normalized.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from .classify import ClassificationRecord
from .errors import ValidationError
from .groups import FiniteGroup, Subgroup, load_group
from .imprimitivity import ImprimitivitySystem, MatrixStarAlgebra
from .induction import InducedRep
from .reps import GroupLike, ProjectiveRep, rep_from_generators
from .towers import TowerReport, graph_to_adjacency

SCHEMA_VERSION = 1


def _check_schema(data: dict, path: str) -> None:
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: expected a JSON object")
    version = data.get("schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"{path}: unsupported schema version {version!r}")


def clean_float(x: float) -> float:
    v = round(float(x), 12)
    return 0.0 if v == 0.0 else v


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [clean_float(z.real), clean_float(z.imag)]


def complex_from_json(data, where: str = "value") -> complex:
    if isinstance(data, (int, float)):
        return complex(data)
    if isinstance(data, list) and len(data) == 2:
        return complex(float(data[0]), float(data[1]))
    raise ValidationError(f"{where}: expected a number or an [re, im] pair")


def matrix_to_json(M: np.ndarray) -> list:
    return [[complex_to_json(v) for v in row] for row in np.asarray(M)]


def matrix_from_json(data, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ValidationError(f"{where}: expected a nested list")
    return np.array(
        [[complex_from_json(v, where) for v in row] for row in data], dtype=complex
    )


def group_to_json(G: FiniteGroup) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "order": G.order,
        "mult": [[int(v) for v in row] for row in G.mult],
        "labels": list(G.labels),
    }


def group_from_json(data: dict, path: str = "<group>") -> FiniteGroup:
    _check_schema(data, path)
    try:
        return load_group(data)
    except ValidationError as err:
        raise ValidationError(f"{path}: {err}") from None


def load_group_file(path: str | Path) -> FiniteGroup:
    return group_from_json(_read_json(path), str(path))


def rep_to_json(rep: ProjectiveRep, group_name: str | None = None) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "dim": rep.dim,
        "matrices": {
            rep.group.label(g): matrix_to_json(rep.matrix(g)) for g in rep.element_ids
        },
        "cocycle": [[complex_to_json(v) for v in row] for row in rep.cocycle.values],
    }
    if group_name is not None:
        out["group"] = group_name
    return out


def rep_from_json(data: dict, group: GroupLike, path: str = "<rep>") -> ProjectiveRep:
    """Load a representation over the given group (or subgroup).

    Matrices are keyed by element label; a partial set is treated as
    generator images and extended by closure.  A provided cocycle table
    (aligned with the element order) is cross-checked after recovery.
    """
    _check_schema(data, path)
    raw = data.get("matrices")
    if not isinstance(raw, dict) or not raw:
        raise ValidationError(f"{path}: field 'matrices' must be a non-empty object")
    label_to_id = {group.label(g): g for g in group.element_ids}
    mats = {}
    for name, mdata in raw.items():
        if name not in label_to_id:
            raise ValidationError(f"{path}: matrices[{name!r}] is not an element label")
        mats[label_to_id[name]] = matrix_from_json(mdata, f"{path}: matrices[{name!r}]")
    dims = {m.shape for m in mats.values()}
    if len(dims) != 1:
        raise ValidationError(f"{path}: matrices have inconsistent shapes")
    declared = data.get("dim")
    if declared is not None and int(declared) != next(iter(dims))[0]:
        raise ValidationError(f"{path}: field 'dim' does not match the matrices")
    if len(mats) == len(group.element_ids):
        rep = ProjectiveRep(group, mats)
    else:
        rep = rep_from_generators(group, mats)
    if "cocycle" in data:
        given = np.array(
            [
                [complex_from_json(v, f"{path}: cocycle") for v in row]
                for row in data["cocycle"]
            ]
        )
        if given.shape != rep.cocycle.values.shape or np.max(
            np.abs(given - rep.cocycle.values)
        ) > 1e-7:
            raise ValidationError(f"{path}: provided cocycle does not match the recovered one")
    return rep


def load_rep_file(path: str | Path, group: GroupLike) -> ProjectiveRep:
    return rep_from_json(_read_json(path), group, str(path))


def algebra_from_json(data: dict, path: str = "<algebra>") -> MatrixStarAlgebra:
    _check_schema(data, path)
    raw = data.get("matrices")
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"{path}: field 'matrices' must be a non-empty list")
    mats = [matrix_from_json(m, f"{path}: matrices[{i}]") for i, m in enumerate(raw)]
    return MatrixStarAlgebra.from_spanning(mats)


def load_algebra_file(path: str | Path) -> MatrixStarAlgebra:
    return algebra_from_json(_read_json(path), str(path))


def _read_json(path: str | Path) -> dict:
    p = Path(path)
    try:
        with open(p) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValidationError(f"{p}: file not found") from None
    except json.JSONDecodeError as err:
        raise ValidationError(f"{p}: invalid JSON ({err})") from None


def fixture_path(name: str) -> Path:
    """Resolve a name against the bundled fixture files."""
    base = resources.files("reptower") / "fixtures" / name
    return Path(str(base))


def resolve_input(name: str | Path) -> Path:
    """A literal path if it exists, otherwise a bundled fixture of that name."""
    p = Path(name)
    if p.exists():
        return p
    fp = fixture_path(str(name))
    if fp.exists():
        return fp
    raise ValidationError(f"{name}: not a file and not a bundled fixture")


# -- report emission ---------------------------------------------------------


def subgroup_labels(H: Subgroup) -> list[str]:
    return [H.parent.labels[g] for g in H.elements]


def tower_to_json(tw: TowerReport) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "lower_dims": list(tw.lower_dims),
        "upper_dims": list(tw.upper_dims),
        "level_multiplicities": [list(v) for v in tw.level_multiplicities],
        "level_supports": [list(s) for s in tw.level_supports],
        "inclusion_matrices": [[list(r) for r in m] for m in tw.inclusion_matrices],
        "depth": tw.depth,
        "index": tw.index,
        "sigma_dim": tw.sigma.dim,
    }


def record_to_json(rec: ClassificationRecord, include_matrices: bool = False) -> dict:
    out = {
        "schema": SCHEMA_VERSION,
        "group_order": rec.group.order,
        "subgroup": subgroup_labels(rec.subgroup),
        "psi_label": rec.psi_label,
        "r": rec.r,
        "condition_holds": rec.condition_holds,
        "kernel": subgroup_labels(rec.kernel_K),
        "index": rec.index,
        "irreducible": rec.irreducible,
        "rel_commutant_dim": rec.rel_commutant_dim,
        "category_is_UG": rec.category_is_UG,
        "depth": rec.depth,
        "sigma_dim": rec.sigma.dim,
        "tower": tower_to_json(rec.tower),
        "graph": graph_to_adjacency(rec.graph),
        "fingerprint": [
            rec.fingerprint[0],
            rec.fingerprint[1],
            list(rec.fingerprint[2]),
        ],
        "possibly_isomorphic_to": list(rec.possibly_isomorphic_to),
    }
    if include_matrices:
        out["psi"] = rep_to_json(rec.psi)
    return out


def record_to_table(rec: ClassificationRecord) -> str:
    rows = [
        ("subgroup", "{" + ",".join(subgroup_labels(rec.subgroup)) + "}"),
        ("psi", f"{rec.psi_label} (r={rec.r})"),
        ("condition_holds", str(rec.condition_holds)),
        ("kernel", "{" + ",".join(subgroup_labels(rec.kernel_K)) + "}"),
        ("index", str(rec.index)),
        ("irreducible", str(rec.irreducible)),
        ("rel_commutant_dim", str(rec.rel_commutant_dim)),
        ("category_is_UG", str(rec.category_is_UG)),
        ("depth", str(rec.depth)),
        ("tower_lower_dims", str(list(rec.tower.lower_dims))),
        ("tower_index", str(rec.tower.index)),
        ("fingerprint", str(rec.fingerprint)),
        ("possibly_isomorphic_to", "; ".join(rec.possibly_isomorphic_to) or "-"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def induced_to_json(ind: InducedRep) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "dim": ind.dim,
        "n_cosets": ind.cosets.n_cosets,
        "coset_representatives": [
            ind.cosets.subgroup.parent.labels[k] for k in ind.cosets.reps
        ],
        "total": rep_to_json(ind.total),
    }


def system_to_json(system: ImprimitivitySystem) -> dict:
    G = system.sigma.group
    return {
        "schema": SCHEMA_VERSION,
        "stabilizer": [G.labels[g] for g in system.stabilizer.elements],
        "d": system.d,
        "r": system.r,
        "rho": rep_to_json(system.rho),
        "psi": rep_to_json(system.psi),
        "intertwiner": matrix_to_json(system.intertwiner),
        "projections": [matrix_to_json(p) for p in system.projections],
        "action": [list(row) for row in system.action],
        "residual": clean_float(system.residual),
    }


def canonical_dumps(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, newline at end."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
