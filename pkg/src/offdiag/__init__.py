"""Spectral-shift and spectral-subspace bounds for off-diagonal Hermitian perturbations.

Given a Hermitian A whose spectrum splits into two separated components
sigma and Sigma, and a Hermitian V coupling only across that split, the
library computes and verifies: two-sided bounds on the spectral shift,
enclosure of spec(A + V), gap persistence, and sharp bounds on the norm of
the difference between the spectral projections of A and A + V, together
with the classic counterexamples showing the norm thresholds are optimal.
"""

from .config import DEFAULT_TOL, Tolerances
from .intervals import (
    Case,
    Classification,
    Location,
    SpectralSet,
    classify_case,
    from_eigenvalues,
)
from .operators import (
    BoundaryAmbiguityError,
    ConvergenceError,
    EigenDecomposition,
    OrthogonalProjection,
    ValidationError,
    hermitian_eigendecompose,
    spectral_norm,
    spectral_projection,
    validate_projection,
)
from .analysis import (
    AnalysisReport,
    CaseError,
    PerturbationProblem,
    QnrSample,
    THEOREM_IDS,
    delta_v,
    delta_v_directional,
    gap_persistence,
    qnr_sample,
    shift_bounds,
    spectrum_enclosure,
    two_by_two_extremes,
)
from .subspaces import (
    C_PI,
    GraphOperator,
    GraphRepresentationError,
    ProjectionDifference,
    bound_case1,
    bound_case2,
    bound_subordinated,
    graph_operator,
    maximal_gap_interval,
    projection_difference_norm,
    tan_theta_bound,
    verify_pair_inequality,
)
from .harness import (
    BatchSummary,
    ProblemSpec,
    SearchResult,
    batch_verify,
    builtin_example,
    random_problem,
    random_problem_spec,
    run_theorem,
    search_worst_case,
    summarize,
)

__all__ = [
    "AnalysisReport",
    "BatchSummary",
    "BoundaryAmbiguityError",
    "C_PI",
    "Case",
    "CaseError",
    "Classification",
    "ConvergenceError",
    "DEFAULT_TOL",
    "EigenDecomposition",
    "GraphOperator",
    "GraphRepresentationError",
    "Location",
    "OrthogonalProjection",
    "PerturbationProblem",
    "ProblemSpec",
    "ProjectionDifference",
    "QnrSample",
    "SearchResult",
    "SpectralSet",
    "THEOREM_IDS",
    "Tolerances",
    "ValidationError",
    "batch_verify",
    "bound_case1",
    "bound_case2",
    "bound_subordinated",
    "builtin_example",
    "classify_case",
    "delta_v",
    "delta_v_directional",
    "from_eigenvalues",
    "gap_persistence",
    "graph_operator",
    "hermitian_eigendecompose",
    "maximal_gap_interval",
    "projection_difference_norm",
    "qnr_sample",
    "random_problem",
    "random_problem_spec",
    "run_theorem",
    "search_worst_case",
    "shift_bounds",
    "spectral_norm",
    "spectral_projection",
    "spectrum_enclosure",
    "summarize",
    "tan_theta_bound",
    "two_by_two_extremes",
    "validate_projection",
    "verify_pair_inequality",
]

__version__ = "0.1.0"
