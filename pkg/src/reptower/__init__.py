"""Finite-group invariants of subfactor type: induced representations,
intertwiner towers, principal graphs, and imprimitivity decompositions."""

from .errors import DegeneracyError, InconsistencyError, RepTowerError, ValidationError
from .groups import (
    ConjugacyData,
    CosetSystem,
    FiniteGroup,
    Subgroup,
    all_subgroups,
    core,
    coset_system,
    load_group,
    subgroups_up_to_conjugacy,
)
from .characters import CharacterTable, ClassFunction, character_table
from .reps import (
    Cocycle,
    ProjectiveRep,
    character,
    commutant_dimension,
    conjugate,
    direct_sum,
    kernel_of,
    linear_characters,
    multiplicity,
    projective_kernel,
    regular_rep,
    strictly_equivalent,
    tensor,
    trivial_rep,
    twist_equivalent,
    validate,
)
from .induction import InducedRep, build_sigma, frobenius_character, induce, kernel
from .towers import (
    GeneratorProperties,
    PrincipalGraph,
    TowerReport,
    check_generator_properties,
    closure_irreducibles,
    generates,
    principal_graph,
    tower,
)
from .classify import ClassificationRecord, check_condition, enumerate_records, report
from .imprimitivity import (
    ImprimitivitySystem,
    MatrixStarAlgebra,
    decompose,
    invariant_check,
    is_factor_correspondence,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTable",
    "ClassFunction",
    "ClassificationRecord",
    "Cocycle",
    "ConjugacyData",
    "CosetSystem",
    "DegeneracyError",
    "FiniteGroup",
    "GeneratorProperties",
    "ImprimitivitySystem",
    "InconsistencyError",
    "InducedRep",
    "MatrixStarAlgebra",
    "PrincipalGraph",
    "ProjectiveRep",
    "RepTowerError",
    "Subgroup",
    "TowerReport",
    "ValidationError",
    "all_subgroups",
    "build_sigma",
    "character",
    "character_table",
    "check_condition",
    "check_generator_properties",
    "closure_irreducibles",
    "commutant_dimension",
    "conjugate",
    "core",
    "coset_system",
    "decompose",
    "direct_sum",
    "enumerate_records",
    "frobenius_character",
    "generates",
    "induce",
    "invariant_check",
    "is_factor_correspondence",
    "kernel",
    "kernel_of",
    "linear_characters",
    "load_group",
    "multiplicity",
    "principal_graph",
    "projective_kernel",
    "regular_rep",
    "report",
    "strictly_equivalent",
    "subgroups_up_to_conjugacy",
    "tensor",
    "tower",
    "trivial_rep",
    "twist_equivalent",
    "validate",
]
