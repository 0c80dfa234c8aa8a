"""Exact-arithmetic toolkit for nilpotent-orbit combinatorics.

Three layers share one no-floating-point rule:

* partition calculus for classical orbits (validity, specialness, elementary
  induction steps and their inverses, birational rigidity, source search);
* E7/E8 root systems in quotient coordinates, with the integrality criterion
  for the distinguished weight of a Levi orbit;
* a curated atlas of exceptional-orbit data with seven cross-checks and a
  fault-injection-hardened loader.

``python -m nilorb selftest`` replays the built-in acceptance suite.
"""

from .delta_check import (
    PRESETS,
    DeltaReport,
    MemberCheck,
    ReferenceComparison,
    central_torus_lattice,
    delta_verdict,
    kappa_weight,
    preset_report,
    principal_h,
    roots_pairing_one,
)
from .errors import (
    AtlasLoadError,
    CapabilityError,
    InputError,
    IntegrityError,
    NilorbError,
    OrbitNotFoundError,
    StepInapplicableError,
)
from .exact_linalg import (
    IntMatrix,
    LatticeBasis,
    hermite_normal_form,
    kernel_lattice,
    lattice_contains,
    mat_mul,
)
from .orbit_atlas import (
    GROUPS,
    CheckResult,
    ExceptionalOrbitRecord,
    check_consistency,
    flip_field,
    load_atlas,
    paper_provenanced_fields,
    query,
)
from .orbit_partitions import (
    KINDS,
    BirationalSource,
    ClassicalOrbit,
    InverseStep,
    StepScript,
    birational_sources,
    elementary_step,
    has_codim4_boundary,
    inverse_steps,
    is_birationally_rigid,
    is_special,
    is_valid_type,
    partitions_of,
    rigid_special_source,
    transpose,
)
from .root_system import (
    ROOT_SYSTEM_NAMES,
    LeviSubsystem,
    QuotientVector,
    RootSystem,
    build_root_system,
    cartan_matrix,
    coroot,
    coroot_lattice,
    lattice_contains_mod_ones,
    levi_subsystem,
    pair,
)
from .selfcheck import CriterionResult, run_all, run_criterion

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "NilorbError",
    "InputError",
    "CapabilityError",
    "IntegrityError",
    "StepInapplicableError",
    "AtlasLoadError",
    "OrbitNotFoundError",
    # exact linear algebra
    "IntMatrix",
    "LatticeBasis",
    "hermite_normal_form",
    "kernel_lattice",
    "lattice_contains",
    "mat_mul",
    # root systems
    "ROOT_SYSTEM_NAMES",
    "QuotientVector",
    "RootSystem",
    "LeviSubsystem",
    "build_root_system",
    "pair",
    "coroot",
    "cartan_matrix",
    "coroot_lattice",
    "lattice_contains_mod_ones",
    "levi_subsystem",
    # integrality criterion
    "PRESETS",
    "DeltaReport",
    "MemberCheck",
    "ReferenceComparison",
    "principal_h",
    "roots_pairing_one",
    "kappa_weight",
    "central_torus_lattice",
    "delta_verdict",
    "preset_report",
    # partition calculus
    "KINDS",
    "ClassicalOrbit",
    "StepScript",
    "InverseStep",
    "BirationalSource",
    "is_valid_type",
    "transpose",
    "is_special",
    "elementary_step",
    "inverse_steps",
    "is_birationally_rigid",
    "has_codim4_boundary",
    "birational_sources",
    "rigid_special_source",
    "partitions_of",
    # atlas
    "GROUPS",
    "ExceptionalOrbitRecord",
    "CheckResult",
    "load_atlas",
    "query",
    "check_consistency",
    "flip_field",
    "paper_provenanced_fields",
    # acceptance suite
    "CriterionResult",
    "run_criterion",
    "run_all",
]
