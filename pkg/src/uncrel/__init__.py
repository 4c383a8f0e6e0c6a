"""uncrel: uncertainty-relation toolkit for finite-dimensional quantum systems."""

__version__ = "0.1.0"

from .quantum import (
    Correlation,
    MomentSet,
    Observable,
    PureState,
    commutator_expectation,
    correlation,
    deviation_operator,
    expectation,
    moments,
)
from .relations import (
    RelationId,
    RelationKind,
    RelationReport,
    evaluate,
    evaluate_all,
    evaluate_sum_n,
)
from .critical import (
    EigenstateCase,
    UncorrelatedCase,
    eigenstate_case,
    find_uncorrelated_state,
    verify_uncorrelated_consequences,
)
from .search import (
    ExtremizeRequest,
    ExtremizeResult,
    SampleConfig,
    extremize,
    fuzz_campaign,
    sample_gue_observables,
    sample_haar_states,
)

__all__ = [
    "__version__",
    "Correlation",
    "MomentSet",
    "Observable",
    "PureState",
    "commutator_expectation",
    "correlation",
    "deviation_operator",
    "expectation",
    "moments",
    "RelationId",
    "RelationKind",
    "RelationReport",
    "evaluate",
    "evaluate_all",
    "evaluate_sum_n",
    "EigenstateCase",
    "UncorrelatedCase",
    "eigenstate_case",
    "find_uncorrelated_state",
    "verify_uncorrelated_consequences",
    "ExtremizeRequest",
    "ExtremizeResult",
    "SampleConfig",
    "extremize",
    "fuzz_campaign",
    "sample_gue_observables",
    "sample_haar_states",
]
