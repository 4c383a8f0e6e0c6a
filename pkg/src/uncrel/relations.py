"""Registry of uncertainty relations between two observables in a pure state.

Every entry evaluates an inequality, identity, or two-link chain over the
standard deviations Da = D(A), Db = D(B), the combined deviations D(A+B) and
D(A-B), the correlation C = <AB> - <A><B>, and the commutator expectation.
All bounds are theorems, so `satisfied` is expected to be true on every valid
input; a false report signals a numerical defect and is returned, never
suppressed.

Registry:

    HR                     Da*Db >= |<[A,B]>|/2                      lower bound
    SCHWARZ                Da^2*Db^2 >= |C|^2                        lower bound
    SUM_STD                Da + Db >= D(A+B)                         lower bound
    SUM_STD_N              sum_j D(A_j) >= D(sum_j A_j)              lower bound
    STRONGER_SUM           Da^2 + Db^2 >= D(A+B)^2 / 2               lower bound
    STRONGER_SUM_DIFF      Da^2 + Db^2 >= D(A-B)^2 / 2               lower bound
    REVERSE_SUM            Da^2 + Db^2 <= D(A-B)^2 + 2*Da*Db         upper bound
    REV_TRIANGLE_STD       D(A-B) >= |Da - Db|                       lower bound
    AMGM_VARIANCES         Da^2 + Db^2 >= 2*Da*Db                    lower bound
    PROD_DIFF_SUM          D(A-B)*D(A+B) <= Da^2 + Db^2              upper bound
    PARALLELOGRAM_ID       2(Da^2 + Db^2) = D(A+B)^2 + D(A-B)^2      identity
    CORR_BOUND             Da^2 + Db^2 >= 2|Re C|                    lower bound
    COMM_IM_ID             |<[A,B]>| = 2|Im C|                       identity
    PRODUCT_SANDWICH       (Da^2+Db^2)/2 >= Da*Db >= |<[A,B]>|/2     chain
    VARIANCE_SANDWICH_SUM  D(A-B)^2+2DaDb >= Da^2+Db^2 >= D(A+B)^2/2 chain
    VARIANCE_SANDWICH_PROD D(A-B)^2+2DaDb >= Da^2+Db^2 >= 2DaDb      chain
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, UnknownRelationError
from .quantum import Observable, PureState, mean_and_deviation

DEFAULT_TOLERANCE = 1e-9
DEFAULT_SATURATION_TOLERANCE = 1e-7
ANCHOR_FLOOR = 1e-14
TRIVIAL_RTOL = 1e-9


class RelationKind(str, enum.Enum):
    LOWER_BOUND = "lower_bound"
    UPPER_BOUND = "upper_bound"
    IDENTITY = "identity"
    CHAIN = "chain"


class RelationId(str, enum.Enum):
    HR = "HR"
    SCHWARZ = "SCHWARZ"
    SUM_STD = "SUM_STD"
    SUM_STD_N = "SUM_STD_N"
    STRONGER_SUM = "STRONGER_SUM"
    STRONGER_SUM_DIFF = "STRONGER_SUM_DIFF"
    REVERSE_SUM = "REVERSE_SUM"
    REV_TRIANGLE_STD = "REV_TRIANGLE_STD"
    AMGM_VARIANCES = "AMGM_VARIANCES"
    PROD_DIFF_SUM = "PROD_DIFF_SUM"
    PARALLELOGRAM_ID = "PARALLELOGRAM_ID"
    CORR_BOUND = "CORR_BOUND"
    COMM_IM_ID = "COMM_IM_ID"
    PRODUCT_SANDWICH = "PRODUCT_SANDWICH"
    VARIANCE_SANDWICH_SUM = "VARIANCE_SANDWICH_SUM"
    VARIANCE_SANDWICH_PROD = "VARIANCE_SANDWICH_PROD"


RELATION_KINDS: dict[RelationId, RelationKind] = {
    RelationId.HR: RelationKind.LOWER_BOUND,
    RelationId.SCHWARZ: RelationKind.LOWER_BOUND,
    RelationId.SUM_STD: RelationKind.LOWER_BOUND,
    RelationId.SUM_STD_N: RelationKind.LOWER_BOUND,
    RelationId.STRONGER_SUM: RelationKind.LOWER_BOUND,
    RelationId.STRONGER_SUM_DIFF: RelationKind.LOWER_BOUND,
    RelationId.REVERSE_SUM: RelationKind.UPPER_BOUND,
    RelationId.REV_TRIANGLE_STD: RelationKind.LOWER_BOUND,
    RelationId.AMGM_VARIANCES: RelationKind.LOWER_BOUND,
    RelationId.PROD_DIFF_SUM: RelationKind.UPPER_BOUND,
    RelationId.PARALLELOGRAM_ID: RelationKind.IDENTITY,
    RelationId.CORR_BOUND: RelationKind.LOWER_BOUND,
    RelationId.COMM_IM_ID: RelationKind.IDENTITY,
    RelationId.PRODUCT_SANDWICH: RelationKind.CHAIN,
    RelationId.VARIANCE_SANDWICH_SUM: RelationKind.CHAIN,
    RelationId.VARIANCE_SANDWICH_PROD: RelationKind.CHAIN,
}

RELATION_SUMMARIES: dict[RelationId, str] = {
    RelationId.HR: "product of standard deviations bounded below by half the commutator expectation modulus",
    RelationId.SCHWARZ: "product of variances bounded below by the squared correlation modulus",
    RelationId.SUM_STD: "sum of standard deviations bounded below by the deviation of the sum",
    RelationId.SUM_STD_N: "N-observable generalization of the sum bound",
    RelationId.STRONGER_SUM: "sum of variances bounded below by half the squared deviation of the sum",
    RelationId.STRONGER_SUM_DIFF: "sum of variances bounded below by half the squared deviation of the difference",
    RelationId.REVERSE_SUM: "sum of variances bounded above by the squared deviation of the difference plus twice the deviation product",
    RelationId.REV_TRIANGLE_STD: "deviation of the difference bounded below by the absolute difference of deviations",
    RelationId.AMGM_VARIANCES: "sum of variances bounded below by twice the deviation product",
    RelationId.PROD_DIFF_SUM: "product of the combined deviations bounded above by the sum of variances",
    RelationId.PARALLELOGRAM_ID: "parallelogram identity for variances of the sum and difference",
    RelationId.CORR_BOUND: "sum of variances bounded below by twice the classical correlation modulus",
    RelationId.COMM_IM_ID: "commutator expectation modulus equals twice the quantum correlation part",
    RelationId.PRODUCT_SANDWICH: "deviation product sandwiched between half the variance sum and the commutator bound",
    RelationId.VARIANCE_SANDWICH_SUM: "variance sum sandwiched between its reverse bound and half the squared sum deviation",
    RelationId.VARIANCE_SANDWICH_PROD: "variance sum sandwiched between its reverse bound and twice the deviation product",
}

BINARY_RELATIONS: tuple[RelationId, ...] = tuple(
    r for r in RelationId if r is not RelationId.SUM_STD_N
)

REPORT_FIELDS = (
    "id",
    "kind",
    "lhs",
    "middle",
    "rhs",
    "gap",
    "gap_left",
    "gap_right",
    "satisfied",
    "saturated",
    "trivial",
    "tolerance",
)


@dataclass(frozen=True)
class RelationReport:
    """Outcome of evaluating one relation on one (A, B, state) triple."""

    id: RelationId
    kind: RelationKind
    lhs: float
    middle: float | None
    rhs: float
    gap: float
    gap_left: float | None
    gap_right: float | None
    satisfied: bool
    saturated: bool
    trivial: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "id": self.id.value,
            "kind": self.kind.value,
            "lhs": self.lhs,
            "middle": self.middle,
            "rhs": self.rhs,
            "gap": self.gap,
            "gap_left": self.gap_left,
            "gap_right": self.gap_right,
            "satisfied": self.satisfied,
            "saturated": self.saturated,
            "trivial": self.trivial,
            "tolerance": self.tolerance,
        }


class _Triple:
    """Shared per-call scratch for one (A, B, state) evaluation.

    The combined deviations use the exact identity (A+B - <A+B>)|phi> =
    (A - <A>)|phi> + (B - <B>)|phi>, so no extra matrix products are needed.
    """

    def __init__(self, a: Observable, b: Observable, state: PureState):
        if a.dim != b.dim or a.dim != state.dim:
            raise DimensionMismatchError(
                f"incompatible dimensions: A={a.dim}, B={b.dim}, state={state.dim}"
            )
        mean_a, av, dev_a = mean_and_deviation(a, state)
        mean_b, bv, dev_b = mean_and_deviation(b, state)
        self.mean_a = mean_a
        self.mean_b = mean_b
        self.std_a = float(np.linalg.norm(dev_a))
        self.std_b = float(np.linalg.norm(dev_b))
        self.std_sum = float(np.linalg.norm(dev_a + dev_b))
        self.std_diff = float(np.linalg.norm(dev_a - dev_b))
        self.corr = complex(np.vdot(dev_a, dev_b))
        z_raw = complex(np.vdot(av, bv))
        self.comm_abs = 2.0 * abs(z_raw.imag)
        self.op_scale = max(1.0, a.fro_norm * b.fro_norm)


def _build_report(
    rel: RelationId,
    kind: RelationKind,
    lhs: float,
    rhs: float,
    *,
    middle: float | None = None,
    tolerance: float,
    saturation_tolerance: float,
    op_scale: float,
    extra_anchor: float = 0.0,
) -> RelationReport:
    magnitudes = [abs(lhs), abs(rhs)]
    if middle is not None:
        magnitudes.append(abs(middle))
    anchor = max(*magnitudes, extra_anchor, ANCHOR_FLOOR)
    tol_abs = tolerance * anchor
    sat_abs = saturation_tolerance * anchor
    trivial = max(magnitudes) <= TRIVIAL_RTOL * op_scale

    gap_left: float | None = None
    gap_right: float | None = None
    if kind is RelationKind.LOWER_BOUND:
        gap = lhs - rhs
        satisfied = gap >= -tol_abs
        saturated = satisfied and gap <= sat_abs
    elif kind is RelationKind.UPPER_BOUND:
        gap = rhs - lhs
        satisfied = gap >= -tol_abs
        saturated = satisfied and gap <= sat_abs
    elif kind is RelationKind.IDENTITY:
        gap = abs(lhs - rhs)
        satisfied = gap <= tol_abs
        saturated = satisfied
    else:
        assert middle is not None
        gap_left = lhs - middle
        gap_right = middle - rhs
        gap = min(gap_left, gap_right)
        satisfied = gap_left >= -tol_abs and gap_right >= -tol_abs
        saturated = satisfied and gap <= sat_abs

    if trivial:
        satisfied = True
        saturated = True

    return RelationReport(
        id=rel,
        kind=kind,
        lhs=lhs,
        middle=middle,
        rhs=rhs,
        gap=gap,
        gap_left=gap_left,
        gap_right=gap_right,
        satisfied=satisfied,
        saturated=saturated,
        trivial=trivial,
        tolerance=tolerance,
    )


def _evaluate_on(
    rel: RelationId,
    t: _Triple,
    tolerance: float,
    saturation_tolerance: float,
) -> RelationReport:
    da, db = t.std_a, t.std_b
    ds, dd = t.std_sum, t.std_diff
    kw = dict(
        tolerance=tolerance,
        saturation_tolerance=saturation_tolerance,
        op_scale=t.op_scale,
    )
    if rel is RelationId.HR:
        return _build_report(rel, RelationKind.LOWER_BOUND, da * db, t.comm_abs / 2.0, **kw)
    if rel is RelationId.SCHWARZ:
        return _build_report(rel, RelationKind.LOWER_BOUND, da**2 * db**2, abs(t.corr) ** 2, **kw)
    if rel is RelationId.SUM_STD:
        return _build_report(rel, RelationKind.LOWER_BOUND, da + db, ds, **kw)
    if rel is RelationId.STRONGER_SUM:
        return _build_report(rel, RelationKind.LOWER_BOUND, da**2 + db**2, ds**2 / 2.0, **kw)
    if rel is RelationId.STRONGER_SUM_DIFF:
        return _build_report(rel, RelationKind.LOWER_BOUND, da**2 + db**2, dd**2 / 2.0, **kw)
    if rel is RelationId.REVERSE_SUM:
        return _build_report(
            rel, RelationKind.UPPER_BOUND, da**2 + db**2, dd**2 + 2.0 * da * db, **kw
        )
    if rel is RelationId.REV_TRIANGLE_STD:
        return _build_report(rel, RelationKind.LOWER_BOUND, dd, abs(da - db), **kw)
    if rel is RelationId.AMGM_VARIANCES:
        return _build_report(rel, RelationKind.LOWER_BOUND, da**2 + db**2, 2.0 * da * db, **kw)
    if rel is RelationId.PROD_DIFF_SUM:
        return _build_report(rel, RelationKind.UPPER_BOUND, dd * ds, da**2 + db**2, **kw)
    if rel is RelationId.PARALLELOGRAM_ID:
        return _build_report(
            rel, RelationKind.IDENTITY, 2.0 * (da**2 + db**2), ds**2 + dd**2, **kw
        )
    if rel is RelationId.CORR_BOUND:
        return _build_report(
            rel, RelationKind.LOWER_BOUND, da**2 + db**2, 2.0 * abs(t.corr.real), **kw
        )
    if rel is RelationId.COMM_IM_ID:
        # Both sides can vanish while keeping ~1e-15 float noise, so the
        # tolerance is additionally anchored at the Schwarz bound 2*Da*Db,
        # the tightest a-priori magnitude of either side.
        return _build_report(
            rel,
            RelationKind.IDENTITY,
            t.comm_abs,
            2.0 * abs(t.corr.imag),
            extra_anchor=2.0 * da * db,
            **kw,
        )
    if rel is RelationId.PRODUCT_SANDWICH:
        return _build_report(
            rel,
            RelationKind.CHAIN,
            (da**2 + db**2) / 2.0,
            t.comm_abs / 2.0,
            middle=da * db,
            **kw,
        )
    if rel is RelationId.VARIANCE_SANDWICH_SUM:
        return _build_report(
            rel,
            RelationKind.CHAIN,
            dd**2 + 2.0 * da * db,
            ds**2 / 2.0,
            middle=da**2 + db**2,
            **kw,
        )
    if rel is RelationId.VARIANCE_SANDWICH_PROD:
        return _build_report(
            rel,
            RelationKind.CHAIN,
            dd**2 + 2.0 * da * db,
            2.0 * da * db,
            middle=da**2 + db**2,
            **kw,
        )
    raise UnknownRelationError(f"no such binary relation: {rel}")


def evaluate(
    rel: RelationId | str,
    a: Observable,
    b: Observable,
    state: PureState,
    tolerance: float = DEFAULT_TOLERANCE,
    saturation_tolerance: float = DEFAULT_SATURATION_TOLERANCE,
) -> RelationReport:
    """Evaluate a single binary relation on (A, B, state)."""
    rel = coerce_relation_id(rel)
    if rel is RelationId.SUM_STD_N:
        raise UnknownRelationError("SUM_STD_N takes an observable list; use evaluate_sum_n")
    return _evaluate_on(rel, _Triple(a, b, state), tolerance, saturation_tolerance)


def evaluate_all(
    a: Observable,
    b: Observable,
    state: PureState,
    tolerance: float = DEFAULT_TOLERANCE,
    saturation_tolerance: float = DEFAULT_SATURATION_TOLERANCE,
    relations: Sequence[RelationId] | None = None,
) -> list[RelationReport]:
    """Evaluate every binary relation in registry order (SUM_STD_N excluded)."""
    selected = BINARY_RELATIONS if relations is None else tuple(relations)
    t = _Triple(a, b, state)
    out = []
    for rel in selected:
        if rel is RelationId.SUM_STD_N:
            raise UnknownRelationError("SUM_STD_N takes an observable list; use evaluate_sum_n")
        out.append(_evaluate_on(rel, t, tolerance, saturation_tolerance))
    return out


def evaluate_sum_n(
    observables: Sequence[Observable],
    state: PureState,
    tolerance: float = DEFAULT_TOLERANCE,
    saturation_tolerance: float = DEFAULT_SATURATION_TOLERANCE,
) -> RelationReport:
    """Sum bound for N >= 2 observables; reduces exactly to SUM_STD at N = 2."""
    if len(observables) < 2:
        raise DimensionMismatchError("need at least two observables for the N-ary sum bound")
    devs = []
    stds = []
    for f in observables:
        if f.dim != state.dim:
            raise DimensionMismatchError(
                f"observable '{f.label}' has dimension {f.dim}, state has {state.dim}"
            )
        _, _, dev = mean_and_deviation(f, state)
        devs.append(dev)
        stds.append(float(np.linalg.norm(dev)))
    lhs = float(sum(stds))
    rhs = float(np.linalg.norm(np.sum(devs, axis=0)))
    op_scale = max(1.0, max(f.fro_norm for f in observables) ** 2)
    return _build_report(
        RelationId.SUM_STD_N,
        RelationKind.LOWER_BOUND,
        lhs,
        rhs,
        tolerance=tolerance,
        saturation_tolerance=saturation_tolerance,
        op_scale=op_scale,
    )


def coerce_relation_id(rel: RelationId | str) -> RelationId:
    if isinstance(rel, RelationId):
        return rel
    try:
        return RelationId(rel)
    except ValueError as exc:
        names = ", ".join(r.value for r in RelationId)
        raise UnknownRelationError(f"unknown relation '{rel}'; expected one of: {names}") from exc
