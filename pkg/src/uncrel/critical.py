"""Critical points where the registry's bounds trivialize.

Two families: eigenstates of one observable (the other's deviation carries
the whole relation) and states where the two observables are uncorrelated
(the correlation vanishes while both deviations stay positive).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatchError
from .linalg import hermitian_eigensystem
from .quantum import Observable, PureState, commutator_expectation, mean_and_deviation, moments
from .relations import RelationId, evaluate
from .search import _haar_one, _params_state, _state_params, stream_rng

EIGENSTATE_DEV_TOL = 1e-8
PENALTY_WEIGHT = 10.0
SEARCH_BLOCK = 256


@dataclass(frozen=True)
class CheckResult:
    """One named numerical check: measured value against a threshold."""

    name: str
    value: float
    threshold: float
    passed: bool
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "pass": self.passed,
            "note": self.note,
        }


def battery_passed(checks: list[CheckResult]) -> bool:
    return all(c.passed for c in checks)


@dataclass(frozen=True, eq=False)
class EigenstateCase:
    """Battery of consequences of feeding one observable's eigenstate in."""

    which: str
    index: int
    eigenvalue: float
    state: PureState
    battery: list[CheckResult]

    @property
    def all_passed(self) -> bool:
        return battery_passed(self.battery)


def eigenstate_case(a: Observable, b: Observable, which: str = "B", index: int = 0) -> EigenstateCase:
    """Evaluate the trivialization battery at one eigenvector.

    `which` picks the observable supplying the eigenstate; the checks then
    measure how every relation collapses onto the other observable's
    deviation.
    """
    if which not in ("A", "B"):
        raise ValueError(f"'which' must be 'A' or 'B', got {which!r}")
    if a.dim != b.dim:
        raise DimensionMismatchError("observables differ in dimension")
    eigen_obs, free_obs = (b, a) if which == "B" else (a, b)
    system = hermitian_eigensystem(eigen_obs.matrix)
    if not 0 <= index < system.dim:
        raise ValueError(f"eigenvector index {index} out of range for dimension {system.dim}")
    state = PureState(system.vector(index))
    comm_scale = max(1.0, a.fro_norm * b.fro_norm)

    mom_eigen = moments(eigen_obs, state)
    mom_free = moments(free_obs, state)
    mom_sum = moments(a + b, state)
    mom_diff = moments(a - b, state)
    comm_abs = abs(commutator_expectation(a, b, state))

    checks = [
        CheckResult(
            name="eigen_deviation_zero",
            value=mom_eigen.std_dev,
            threshold=1e-10 * max(1.0, eigen_obs.fro_norm),
            passed=mom_eigen.std_dev <= 1e-10 * max(1.0, eigen_obs.fro_norm),
        ),
        CheckResult(
            name="commutator_expectation_zero",
            value=comm_abs,
            threshold=1e-9 * comm_scale,
            passed=comm_abs <= 1e-9 * comm_scale,
        ),
        CheckResult(
            name="sum_deviation_collapses",
            value=abs(mom_sum.std_dev - mom_free.std_dev),
            threshold=1e-10 * max(1.0, a.fro_norm + b.fro_norm),
            passed=abs(mom_sum.std_dev - mom_free.std_dev)
            <= 1e-10 * max(1.0, a.fro_norm + b.fro_norm),
        ),
        CheckResult(
            name="diff_deviation_collapses",
            value=abs(mom_diff.std_dev - mom_free.std_dev),
            threshold=1e-10 * max(1.0, a.fro_norm + b.fro_norm),
            passed=abs(mom_diff.std_dev - mom_free.std_dev)
            <= 1e-10 * max(1.0, a.fro_norm + b.fro_norm),
        ),
    ]

    sum_report = evaluate(RelationId.SUM_STD, a, b, state)
    anchor = max(abs(sum_report.lhs), abs(sum_report.rhs), 1e-14)
    checks.append(
        CheckResult(
            name="sum_bound_saturated",
            value=sum_report.gap,
            threshold=1e-7 * anchor,
            passed=sum_report.saturated,
        )
    )

    stronger_report = evaluate(RelationId.STRONGER_SUM, a, b, state)
    gap_target = 0.5 * mom_free.std_dev**2
    gap_dev = abs(stronger_report.gap - gap_target)
    gap_thresh = 1e-9 * max(1.0, free_obs.fro_norm**2)
    checks.append(
        CheckResult(
            name="stronger_sum_gap_half_free_variance",
            value=gap_dev,
            threshold=gap_thresh,
            passed=gap_dev <= gap_thresh,
        )
    )

    comm_norm = float(np.linalg.norm(a.matrix @ b.matrix - b.matrix @ a.matrix))
    if comm_norm <= 1e-8:
        checks.append(
            CheckResult(
                name="free_deviation_positive",
                value=mom_free.std_dev,
                threshold=EIGENSTATE_DEV_TOL,
                passed=True,
                note=f"skipped: commutator norm {comm_norm:.3e} is negligible",
            )
        )
    else:
        ok = mom_free.std_dev > EIGENSTATE_DEV_TOL
        checks.append(
            CheckResult(
                name="free_deviation_positive",
                value=mom_free.std_dev,
                threshold=EIGENSTATE_DEV_TOL,
                passed=ok,
                note=None
                if ok
                else "manual review: deviation vanished although the commutator is nonzero "
                "(the pair may share this eigenvector)",
            )
        )

    return EigenstateCase(
        which=which,
        index=index,
        eigenvalue=float(system.values[index]),
        state=state,
        battery=checks,
    )


@dataclass(frozen=True, eq=False)
class UncorrelatedCase:
    """A candidate state with its correlation modulus and deviations."""

    state: PureState
    correlation_modulus: float
    dev_a: float
    dev_b: float
    is_eigenstate_of_a: bool
    is_eigenstate_of_b: bool

    @classmethod
    def from_state(cls, a: Observable, b: Observable, state: PureState) -> "UncorrelatedCase":
        _, _, dev_a_vec = mean_and_deviation(a, state)
        _, _, dev_b_vec = mean_and_deviation(b, state)
        dev_a = float(np.linalg.norm(dev_a_vec))
        dev_b = float(np.linalg.norm(dev_b_vec))
        corr = abs(complex(np.vdot(dev_a_vec, dev_b_vec)))
        return cls(
            state=state,
            correlation_modulus=corr,
            dev_a=dev_a,
            dev_b=dev_b,
            is_eigenstate_of_a=dev_a <= EIGENSTATE_DEV_TOL * max(1.0, a.fro_norm),
            is_eigenstate_of_b=dev_b <= EIGENSTATE_DEV_TOL * max(1.0, b.fro_norm),
        )


@dataclass
class UncorrelatedSearchResult:
    """Best candidate found; `success` means all constraints were met."""

    success: bool
    case: UncorrelatedCase
    objective: float
    evaluations_used: int
    tol: float
    min_dev: float
    seed: int


class _BudgetExhausted(Exception):
    pass


def find_uncorrelated_state(
    a: Observable,
    b: Observable,
    tol: float = 1e-8,
    min_dev: float = 0.1,
    budget: int = 4096,
    seed: int = 0,
) -> UncorrelatedSearchResult:
    """Search for a state where A and B are uncorrelated with both deviations large.

    Round-based: each round spends half its evaluations on fresh Haar samples
    and half on Nelder-Mead refinement of the incumbent, minimizing
    |C|^2 + 10 * (deviation shortfalls)^2. The evaluation schedule depends only
    on the evaluation history, never on the remaining budget, so enlarging the
    budget replays the same prefix and can only improve the result. On failure
    the best candidate is returned with its residuals, never an empty answer.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError("observables differ in dimension")
    if a.dim < 2:
        raise DimensionMismatchError("need dimension >= 2")
    if tol <= 0 or min_dev <= 0:
        raise ValueError("tol and min_dev must be positive")
    if budget < 1:
        raise ValueError("budget must be positive")

    dim = a.dim
    evals = 0
    best_obj = np.inf
    best_obj_case: UncorrelatedCase | None = None
    best_feasible: UncorrelatedCase | None = None

    def feasible(case: UncorrelatedCase) -> bool:
        return (
            case.correlation_modulus <= tol
            and case.dev_a >= min_dev
            and case.dev_b >= min_dev
            and not case.is_eigenstate_of_a
            and not case.is_eigenstate_of_b
        )

    def consider(state: PureState) -> float:
        nonlocal evals, best_obj, best_obj_case, best_feasible
        case = UncorrelatedCase.from_state(a, b, state)
        obj = case.correlation_modulus**2
        obj += PENALTY_WEIGHT * max(0.0, min_dev - case.dev_a) ** 2
        obj += PENALTY_WEIGHT * max(0.0, min_dev - case.dev_b) ** 2
        if obj < best_obj:
            best_obj = obj
            best_obj_case = case
        if feasible(case) and (
            best_feasible is None or case.correlation_modulus < best_feasible.correlation_modulus
        ):
            best_feasible = case
        evals += 1
        if evals >= budget:
            raise _BudgetExhausted
        return obj

    def nm_objective(x: np.ndarray) -> float:
        state = _params_state(x, dim)
        if state is None:
            return 1e12
        return consider(state)

    rng = stream_rng(seed, 0)
    half = SEARCH_BLOCK // 2
    block = 0
    try:
        while True:
            for _ in range(half):
                consider(_haar_one(rng, dim))
            assert best_obj_case is not None
            x0 = _state_params(best_obj_case.state)
            delta = 0.3 * (0.5**block) + 1e-9
            simplex = [x0]
            for i in range(x0.size):
                step = np.zeros_like(x0)
                step[i] = delta * (abs(x0[i]) + 0.1)
                simplex.append(x0 + step)
            minimize(
                nm_objective,
                x0,
                method="Nelder-Mead",
                options={
                    "maxfev": half,
                    "xatol": 1e-12,
                    "fatol": 1e-24,
                    "initial_simplex": np.array(simplex),
                },
            )
            block += 1
    except _BudgetExhausted:
        pass

    assert best_obj_case is not None
    if best_feasible is not None:
        chosen = best_feasible
        success = True
    else:
        chosen = best_obj_case
        success = False
    return UncorrelatedSearchResult(
        success=success,
        case=chosen,
        objective=best_obj,
        evaluations_used=evals,
        tol=tol,
        min_dev=min_dev,
        seed=seed,
    )


def verify_uncorrelated_consequences(
    a: Observable,
    b: Observable,
    case: UncorrelatedCase,
    tol: float = 1e-8,
) -> list[CheckResult]:
    """Check what uncorrelatedness implies at the case's state.

    Expected to pass fully only for genuinely uncorrelated non-eigenstate
    cases; partial passes diagnose which structure is present (for instance a
    vanishing quantum part alone kills the commutator bound but not the
    classical correlation).
    """
    state = case.state
    if state.dim != a.dim or a.dim != b.dim:
        raise DimensionMismatchError("stale case: dimensions no longer match")
    mom_a = moments(a, state)
    mom_b = moments(b, state)
    mom_sum = moments(a + b, state)
    mom_diff = moments(a - b, state)
    var_sum = mom_a.std_dev**2 + mom_b.std_dev**2
    scale_sq = max(1.0, (a.fro_norm + b.fro_norm) ** 2)

    pythagoras_dev = max(
        abs(mom_sum.std_dev**2 - var_sum),
        abs(mom_diff.std_dev**2 - var_sum),
    )
    hr = evaluate(RelationId.HR, a, b, state)
    corr = evaluate(RelationId.CORR_BOUND, a, b, state)
    hr_thresh = 1e-9 * max(1.0, a.fro_norm * b.fro_norm)
    dev_floor = (EIGENSTATE_DEV_TOL * max(1.0, a.fro_norm)) * (
        EIGENSTATE_DEV_TOL * max(1.0, b.fro_norm)
    )
    dev_product = mom_a.std_dev * mom_b.std_dev

    return [
        CheckResult(
            name="combined_variances_pythagorean",
            value=pythagoras_dev,
            threshold=1e-9 * scale_sq,
            passed=pythagoras_dev <= 1e-9 * scale_sq,
        ),
        CheckResult(
            name="commutator_bound_vanishes",
            value=hr.rhs,
            threshold=hr_thresh,
            passed=hr.rhs <= hr_thresh,
        ),
        CheckResult(
            name="deviation_product_positive",
            value=dev_product,
            threshold=dev_floor,
            passed=dev_product > dev_floor,
        ),
        CheckResult(
            name="classical_correlation_bound_small",
            value=corr.rhs,
            threshold=2.0 * tol,
            passed=corr.rhs <= 2.0 * tol,
        ),
    ]
