"""masscut: equipartition of point-cloud masses by hyperplane arrangements.

The library searches for h hyperplanes cutting each of m masses in R^d into
2**h equal orthant pieces, offers two constructive reduction strategies on
top of the direct solver, and computes certified integer upper bounds on
the smallest dimension where such a partition always exists.
"""

from .bounds import (
    BoundCertificate,
    Fact,
    ReductionStep,
    SearchConfig,
    base_bound,
    best_upper_bound,
    corollary3,
    facts_at,
    known_exact,
    replay_certificate,
    table,
)
from .errors import (
    BoundaryPoints,
    CertificateError,
    DegenerateRestriction,
    DimensionMismatch,
    DomainError,
    EmptyHalf,
    InstanceParseError,
    InstanceSchemaError,
    MasscutError,
    NoBoundAvailable,
    PreconditionOutsideGuarantee,
    PreconditionViolated,
)
from .geometry import (
    Arrangement,
    Hyperplane,
    Mass,
    MeasureTable,
    OrthantLabel,
    ball_mass,
    bounding_box_diagonal,
    default_tau,
    index_to_label,
    label_to_index,
    lift_arrangement,
    lift_hyperplane,
    orthant_measures,
    orthant_of,
    project_mass,
    restrict_hyperplane,
    side_of,
    thicken_mass,
)
from .instances import (
    InstanceFile,
    gen_gaussian,
    gen_grid,
    gen_symmetric,
    read_cuts,
    read_instance,
    write_cuts,
    write_instance,
)
from .kernels import get_backend
from .reductions import (
    EpsilonSchedule,
    reduce_lemma1,
    reduce_lemma2,
    solve,
    split_mass,
)
from .solver import (
    SolverConfig,
    Solution,
    ham_sandwich,
    smoothed_objective,
    solve_direct,
)
from .verifier import VerificationReport, imbalance, verify

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "BoundCertificate",
    "BoundaryPoints",
    "CertificateError",
    "DegenerateRestriction",
    "DimensionMismatch",
    "DomainError",
    "EmptyHalf",
    "EpsilonSchedule",
    "Fact",
    "Hyperplane",
    "InstanceFile",
    "InstanceParseError",
    "InstanceSchemaError",
    "Mass",
    "MasscutError",
    "MeasureTable",
    "NoBoundAvailable",
    "OrthantLabel",
    "PreconditionOutsideGuarantee",
    "PreconditionViolated",
    "ReductionStep",
    "SearchConfig",
    "Solution",
    "SolverConfig",
    "VerificationReport",
    "ball_mass",
    "base_bound",
    "best_upper_bound",
    "bounding_box_diagonal",
    "corollary3",
    "default_tau",
    "facts_at",
    "gen_gaussian",
    "gen_grid",
    "gen_symmetric",
    "get_backend",
    "ham_sandwich",
    "imbalance",
    "index_to_label",
    "known_exact",
    "label_to_index",
    "lift_arrangement",
    "lift_hyperplane",
    "orthant_measures",
    "orthant_of",
    "project_mass",
    "read_cuts",
    "read_instance",
    "reduce_lemma1",
    "reduce_lemma2",
    "replay_certificate",
    "restrict_hyperplane",
    "side_of",
    "smoothed_objective",
    "solve",
    "solve_direct",
    "split_mass",
    "table",
    "thicken_mass",
    "verify",
    "write_cuts",
    "write_instance",
]
