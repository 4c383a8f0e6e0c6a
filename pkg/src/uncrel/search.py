"""Seeded random sampling and derivative-free gap extremization.

Randomness comes from counter-based Philox generators keyed by (seed, stream),
so observable and state streams stay independent under a shared seed and every
sample sequence is reproducible bit for bit.

The extremizer runs Nelder-Mead over the 2d real components of the state
vector; every proposed point is renormalized before evaluation, so the flat
global-phase direction and the radial direction are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatchError, UnknownRelationError
from .problemfile import matrix_to_pairs, vector_to_pairs
from .quantum import Observable, PureState
from .relations import (
    BINARY_RELATIONS,
    DEFAULT_SATURATION_TOLERANCE,
    DEFAULT_TOLERANCE,
    RELATION_KINDS,
    RelationId,
    RelationKind,
    RelationReport,
    coerce_relation_id,
    evaluate_all,
)
from .relations import evaluate as evaluate_relation

MINIMIZE_GAP = "minimize-gap"
MAXIMIZE_GAP = "maximize-gap"

# Stream indices for fuzzing: one generator per source.
_STREAM_A = 0
_STREAM_B = 1
_STREAM_STATE = 2


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Philox generator for an independent (seed, stream) pair."""
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(stream)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class SampleConfig:
    """How many draws at which dimension, and from which stream."""

    dimension: int
    seed: int
    count: int
    stream: int = 0

    def __post_init__(self):
        if self.dimension < 2:
            raise DimensionMismatchError(f"dimension must be >= 2, got {self.dimension}")
        if self.count < 0:
            raise ValueError(f"count must be non-negative, got {self.count}")


def _haar_one(rng: np.random.Generator, dim: int) -> PureState:
    raw = rng.standard_normal(2 * dim)
    return PureState.from_unnormalized((raw[:dim] + 1j * raw[dim:]) / np.sqrt(2.0))


def _gue_one(rng: np.random.Generator, dim: int, label: str) -> Observable:
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    return Observable((g + g.conj().T) / 2.0, label=label)


def sample_haar_states(config: SampleConfig) -> list[PureState]:
    """Unit vectors distributed uniformly under unitary invariance."""
    rng = stream_rng(config.seed, config.stream)
    return [_haar_one(rng, config.dimension) for _ in range(config.count)]


def sample_gue_observables(config: SampleConfig) -> list[Observable]:
    """Random Hermitian matrices, (G + G*)/2 for complex Gaussian G.

    Hermiticity is exact by construction, not merely within tolerance.
    """
    rng = stream_rng(config.seed, config.stream)
    return [_gue_one(rng, config.dimension, f"GUE{k}") for k in range(config.count)]


@dataclass(frozen=True)
class ExtremizeRequest:
    """Gap extremization task for one bound-type relation."""

    relation: RelationId
    a: Observable
    b: Observable
    direction: str = MINIMIZE_GAP
    restarts: int = 8
    max_evals_per_restart: int = 1000
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    saturation_tolerance: float = DEFAULT_SATURATION_TOLERANCE
    record_trace: bool = False

    def __post_init__(self):
        rel = coerce_relation_id(self.relation)
        object.__setattr__(self, "relation", rel)
        kind = RELATION_KINDS[rel]
        if kind not in (RelationKind.LOWER_BOUND, RelationKind.UPPER_BOUND):
            raise UnknownRelationError(
                f"relation {rel.value} is a {kind.value}; only bounds have an adjustable gap"
            )
        if rel is RelationId.SUM_STD_N:
            raise UnknownRelationError("SUM_STD_N is not a binary relation")
        if self.direction not in (MINIMIZE_GAP, MAXIMIZE_GAP):
            raise ValueError(f"direction must be '{MINIMIZE_GAP}' or '{MAXIMIZE_GAP}'")
        if self.restarts < 1:
            raise ValueError("restarts must be positive")
        if self.max_evals_per_restart < 1:
            raise ValueError("max_evals_per_restart must be positive")
        if self.a.dim != self.b.dim:
            raise DimensionMismatchError("observables differ in dimension")


@dataclass
class ExtremizeResult:
    best_state: PureState
    best_gap: float
    best_report: RelationReport
    evaluations_used: int
    restarts_used: int
    defect: bool
    trace: list[tuple[int, float]] | None = None


class _StopAll(Exception):
    pass


class _RestartBudget(Exception):
    pass


def _state_params(state: PureState) -> np.ndarray:
    v = state.vector
    return np.concatenate([v.real, v.imag])


def _params_state(x: np.ndarray, dim: int) -> PureState | None:
    v = x[:dim] + 1j * x[dim:]
    n = float(np.linalg.norm(v))
    if n < 1e-12 or not np.all(np.isfinite(v)):
        return None
    return PureState(v / n)


def extremize(req: ExtremizeRequest) -> ExtremizeResult:
    """Search the unit sphere for states extremizing a relation's gap.

    Nelder-Mead restarts from fresh Haar samples; the best over restarts is
    the minimum of per-restart bests. Minimization stops early once the
    evaluated report is saturated.
    """
    dim = req.a.dim
    sign = 1.0 if req.direction == MINIMIZE_GAP else -1.0
    trace: list[tuple[int, float]] | None = [] if req.record_trace else None

    best_obj = np.inf
    best_state: PureState | None = None
    best_report: RelationReport | None = None
    evals = 0
    evals_this_restart = 0
    restarts_used = 0

    def objective(x: np.ndarray) -> float:
        nonlocal evals, evals_this_restart, best_obj, best_state, best_report
        # hard per-restart cap; the optimizer's own maxfev check is per iteration
        if evals_this_restart >= req.max_evals_per_restart:
            raise _RestartBudget
        evals += 1
        evals_this_restart += 1
        state = _params_state(x, dim)
        if state is None:
            return 1e12
        report = evaluate_relation(
            req.relation, req.a, req.b, state, req.tolerance, req.saturation_tolerance
        )
        obj = sign * report.gap
        if trace is not None:
            trace.append((evals, report.gap))
        if obj < best_obj:
            best_obj = obj
            best_state = state
            best_report = report
        if sign > 0 and report.saturated:
            raise _StopAll
        return obj

    done = False
    for restart in range(req.restarts):
        if done:
            break
        restarts_used += 1
        evals_this_restart = 0
        rng = stream_rng(req.seed, restart)
        x0 = _state_params(_haar_one(rng, dim))
        try:
            minimize(
                objective,
                x0,
                method="Nelder-Mead",
                options={
                    "maxfev": req.max_evals_per_restart,
                    "xatol": 1e-10,
                    "fatol": 1e-12,
                },
            )
        except _RestartBudget:
            continue
        except _StopAll:
            done = True

    assert best_state is not None and best_report is not None
    return ExtremizeResult(
        best_state=best_state,
        best_gap=best_report.gap,
        best_report=best_report,
        evaluations_used=evals,
        restarts_used=restarts_used,
        defect=not best_report.satisfied,
        trace=trace,
    )


@dataclass
class RelationTally:
    relation: RelationId
    satisfied: int = 0
    saturated: int = 0
    trivial: int = 0
    violations: int = 0

    def to_dict(self) -> dict:
        return {
            "id": self.relation.value,
            "kind": RELATION_KINDS[self.relation].value,
            "satisfied": self.satisfied,
            "saturated": self.saturated,
            "trivial": self.trivial,
            "violations": self.violations,
        }


@dataclass
class Violation:
    trial: int
    relation: RelationId
    report: RelationReport
    a: Observable
    b: Observable
    state: PureState

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "relation": self.relation.value,
            "report": self.report.to_dict(),
            "problem": {
                "dim": self.a.dim,
                "observables": {
                    "A": matrix_to_pairs(self.a.matrix),
                    "B": matrix_to_pairs(self.b.matrix),
                },
                "states": {"phi": vector_to_pairs(self.state.vector)},
            },
        }


@dataclass
class FuzzSummary:
    """Per-relation tallies over a randomized soundness campaign."""

    dimension: int
    trials: int
    seed: int
    tolerance: float
    tallies: list[RelationTally] = field(default_factory=list)
    violations: list[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "trials": self.trials,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "clean": self.clean,
            "relations": [t.to_dict() for t in self.tallies],
            "violations": [v.to_dict() for v in self.violations],
        }


def fuzz_campaign(
    dimension: int,
    trials: int,
    seed: int,
    tolerance: float = DEFAULT_TOLERANCE,
    saturation_tolerance: float = DEFAULT_SATURATION_TOLERANCE,
    relations: list[RelationId] | None = None,
) -> FuzzSummary:
    """Evaluate the registry on random GUE pairs and Haar states.

    Every bound is a theorem, so any violation is dumped with its full
    (A, B, state) payload for replay.
    """
    if dimension < 2:
        raise DimensionMismatchError(f"dimension must be >= 2, got {dimension}")
    if trials < 0:
        raise ValueError("trials must be non-negative")
    selected = list(BINARY_RELATIONS) if relations is None else list(relations)
    rng_a = stream_rng(seed, _STREAM_A)
    rng_b = stream_rng(seed, _STREAM_B)
    rng_state = stream_rng(seed, _STREAM_STATE)

    tallies = {rel: RelationTally(rel) for rel in selected}
    violations: list[Violation] = []
    for trial in range(trials):
        a = _gue_one(rng_a, dimension, "A")
        b = _gue_one(rng_b, dimension, "B")
        state = _haar_one(rng_state, dimension)
        for report in evaluate_all(a, b, state, tolerance, saturation_tolerance, selected):
            tally = tallies[report.id]
            if report.satisfied:
                tally.satisfied += 1
            else:
                tally.violations += 1
                violations.append(Violation(trial, report.id, report, a, b, state))
            if report.saturated:
                tally.saturated += 1
            if report.trivial:
                tally.trivial += 1

    return FuzzSummary(
        dimension=dimension,
        trials=trials,
        seed=seed,
        tolerance=tolerance,
        tallies=[tallies[rel] for rel in selected],
        violations=violations,
    )
