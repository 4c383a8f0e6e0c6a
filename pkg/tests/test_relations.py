import math

import numpy as np
import pytest

from uncrel import Observable, PureState, evaluate, evaluate_all, evaluate_sum_n, moments
from uncrel.errors import DimensionMismatchError, UnknownRelationError
from uncrel.presets import identity_observable, spin_component
from uncrel.relations import (
    BINARY_RELATIONS,
    REPORT_FIELDS,
    RelationId,
    RelationKind,
    coerce_relation_id,
)
from uncrel.search import SampleConfig, sample_gue_observables, sample_haar_states

SQRT2 = math.sqrt(2.0)


def _by_id(reports):
    return {r.id: r for r in reports}


class TestPauliXY:
    """(pauli-x, pauli-y, basis-0): the commutator bound is tight."""

    def test_hr_saturated(self, sx, sy, ket0):
        r = evaluate(RelationId.HR, sx, sy, ket0)
        assert r.lhs == 1.0 and r.rhs == 1.0
        assert r.satisfied and r.saturated and not r.trivial

    def test_schwarz_saturated(self, sx, sy, ket0):
        r = evaluate(RelationId.SCHWARZ, sx, sy, ket0)
        assert r.lhs == 1.0 and r.rhs == 1.0 and r.saturated

    def test_sum_std(self, sx, sy, ket0):
        r = evaluate(RelationId.SUM_STD, sx, sy, ket0)
        assert r.lhs == 2.0
        assert r.rhs == pytest.approx(SQRT2, abs=1e-15)
        assert r.satisfied and not r.saturated

    def test_product_sandwich_fully_saturated(self, sx, sy, ket0):
        r = evaluate(RelationId.PRODUCT_SANDWICH, sx, sy, ket0)
        assert (r.lhs, r.middle, r.rhs) == (1.0, 1.0, 1.0)
        assert r.gap_left == 0.0 and r.gap_right == 0.0 and r.saturated

    def test_all_fifteen_satisfied(self, sx, sy, ket0):
        reports = evaluate_all(sx, sy, ket0, 1e-9)
        assert len(reports) == 15
        assert [r.id for r in reports] == list(BINARY_RELATIONS)
        assert all(r.satisfied for r in reports)


class TestPauliXZEigenstate:
    """(pauli-x, pauli-z, basis-0): basis-0 is a pauli-z eigenstate."""

    def test_hr_trivializes(self, sx, sz, ket0):
        r = evaluate(RelationId.HR, sx, sz, ket0)
        assert r.lhs == 0.0 and r.rhs == 0.0 and r.gap == 0.0
        assert r.trivial and r.satisfied and r.saturated

    def test_sum_std_saturates(self, sx, sz, ket0):
        r = evaluate(RelationId.SUM_STD, sx, sz, ket0)
        assert r.lhs == 1.0 and r.rhs == 1.0 and r.saturated and not r.trivial

    def test_stronger_sum_gap_half(self, sx, sz, ket0):
        r = evaluate(RelationId.STRONGER_SUM, sx, sz, ket0)
        assert r.lhs == 1.0 and r.rhs == 0.5 and r.gap == 0.5

    def test_stronger_sum_diff_gap_half(self, sx, sz, ket0):
        r = evaluate(RelationId.STRONGER_SUM_DIFF, sx, sz, ket0)
        assert r.lhs == 1.0 and r.rhs == 0.5

    def test_reverse_sum_saturates(self, sx, sz, ket0):
        r = evaluate(RelationId.REVERSE_SUM, sx, sz, ket0)
        assert r.lhs == 1.0 and r.rhs == 1.0 and r.saturated

    def test_prod_diff_sum_at_equality(self, sx, sz, ket0):
        r = evaluate(RelationId.PROD_DIFF_SUM, sx, sz, ket0)
        assert r.lhs == 1.0 and r.rhs == 1.0
        assert abs(r.gap) <= 1e-12 and r.saturated

    def test_parallelogram_identity(self, sx, sz, ket0):
        r = evaluate(RelationId.PARALLELOGRAM_ID, sx, sz, ket0)
        assert r.lhs == 2.0 and r.rhs == 2.0 and r.satisfied


class TestCorrelationAdvantage:
    """Real tilted state: the commutator bound dies, the classical one does not."""

    def test_hr_rhs_vanishes(self, sx, sz, tilted):
        r = evaluate(RelationId.HR, sx, sz, tilted)
        assert abs(r.rhs) <= 1e-12

    def test_corr_bound_saturated_at_one(self, sx, sz, tilted):
        r = evaluate(RelationId.CORR_BOUND, sx, sz, tilted)
        assert r.lhs == pytest.approx(1.0, abs=1e-12)
        assert r.rhs == pytest.approx(1.0, abs=1e-12)
        assert r.saturated


class TestDegenerate:
    def test_identity_pair_all_trivial(self):
        eye = identity_observable(3)
        state = PureState.from_unnormalized([1, 1j, -0.5])
        for r in evaluate_all(eye, eye, state):
            assert r.trivial and r.satisfied and r.saturated
            if r.kind is not RelationKind.IDENTITY:
                assert abs(r.lhs) <= 1e-15 and abs(r.rhs) <= 1e-15

    def test_same_observable_amgm_exact_zero(self, sx):
        state = PureState.from_unnormalized([1 + 0.3j, -2])
        r = evaluate(RelationId.AMGM_VARIANCES, sx, sx, state)
        assert r.gap == 0.0 and r.saturated


class TestSumN:
    def test_reduces_to_binary_at_two(self, sx, sz, ket0):
        pair = evaluate(RelationId.SUM_STD, sx, sz, ket0)
        nary = evaluate_sum_n([sx, sz], ket0)
        assert nary.id is RelationId.SUM_STD_N
        assert nary.lhs == pair.lhs and nary.rhs == pair.rhs

    def test_three_paulis(self, sx, sy, sz, ket0):
        r = evaluate_sum_n([sx, sy, sz], ket0)
        assert r.lhs == 2.0
        assert r.rhs == pytest.approx(SQRT2, abs=1e-15)
        assert r.satisfied

    def test_identical_observables_saturate(self, sx):
        state = PureState.from_unnormalized([1, 1j])
        r = evaluate_sum_n([sx, sx], state)
        assert r.saturated
        assert r.lhs == pytest.approx(2 * moments(sx, state).std_dev, abs=1e-15)

    def test_requires_two(self, sx, ket0):
        with pytest.raises(DimensionMismatchError):
            evaluate_sum_n([sx], ket0)

    def test_dimension_mismatch(self, sx, ket0):
        with pytest.raises(DimensionMismatchError):
            evaluate_sum_n([sx, identity_observable(3)], ket0)


class TestReportContract:
    def test_dict_field_order(self, sx, sy, ket0):
        d = evaluate(RelationId.HR, sx, sy, ket0).to_dict()
        assert tuple(d.keys()) == REPORT_FIELDS

    def test_unknown_relation(self, sx, sy, ket0):
        with pytest.raises(UnknownRelationError):
            evaluate("NOT_A_RELATION", sx, sy, ket0)
        with pytest.raises(UnknownRelationError):
            coerce_relation_id("bogus")

    def test_sum_n_through_binary_entry(self, sx, sy, ket0):
        with pytest.raises(UnknownRelationError):
            evaluate(RelationId.SUM_STD_N, sx, sy, ket0)

    def test_dimension_mismatch(self, sx):
        with pytest.raises(DimensionMismatchError):
            evaluate(RelationId.HR, sx, identity_observable(3), PureState([1.0, 0, 0]))

    def test_evaluation_is_reproducible(self, sx, sy, ket0):
        first = evaluate_all(sx, sy, ket0)
        second = evaluate_all(sx, sy, ket0)
        assert first == second


def _corpus(dim, count, seed):
    a_list = sample_gue_observables(SampleConfig(dimension=dim, seed=seed, count=count, stream=0))
    b_list = sample_gue_observables(SampleConfig(dimension=dim, seed=seed, count=count, stream=1))
    states = sample_haar_states(SampleConfig(dimension=dim, seed=seed, count=count, stream=2))
    return list(zip(a_list, b_list, states))


class TestRandomizedInvariants:
    @pytest.mark.parametrize("dim", (2, 3, 4, 8))
    def test_soundness_sweep(self, dim):
        for a, b, state in _corpus(dim, 500, seed=40 + dim):
            for r in evaluate_all(a, b, state, 1e-9):
                assert r.satisfied, f"{r.id} violated at d={dim}: {r}"

    @pytest.mark.parametrize("dim", (2, 3, 4, 8))
    def test_chain_consistency(self, dim):
        for a, b, state in _corpus(dim, 100, seed=60 + dim):
            reports = _by_id(evaluate_all(a, b, state))
            if reports[RelationId.PRODUCT_SANDWICH].satisfied:
                assert reports[RelationId.HR].satisfied
                assert reports[RelationId.AMGM_VARIANCES].satisfied

    @pytest.mark.parametrize("dim", (2, 3, 4, 8))
    def test_eigenstate_trivialization(self, dim):
        from uncrel.linalg import hermitian_eigensystem

        for a, b, _ in _corpus(dim, 10, seed=80 + dim):
            system = hermitian_eigensystem(b.matrix)
            for k in range(dim):
                psi = PureState(system.vector(k))
                r = evaluate(RelationId.SUM_STD, a, b, psi)
                dev_a = moments(a, psi).std_dev
                dev_b = moments(b, psi).std_dev
                assert dev_b <= 1e-10
                assert abs(r.rhs - dev_a) <= 1e-10
                assert abs(r.lhs - (dev_a + dev_b)) <= 1e-15

    def test_uncorrelated_trivialization(self):
        # Uncorrelated non-eigenstate witness in dimension 3.
        a = Observable(np.diag([1.0, -1.0, 0.0]).astype(complex), label="A")
        b = spin_component("x", 3)
        state = PureState(np.array([1, 0, 1], dtype=complex) / SQRT2)
        hr = evaluate(RelationId.HR, a, b, state)
        assert hr.rhs <= 1e-9
        sum_std = evaluate(RelationId.SUM_STD, a, b, state)
        da = moments(a, state).std_dev
        db = moments(b, state).std_dev
        assert da > 0.1 and db > 0.1
        assert abs((sum_std.lhs**2 - sum_std.rhs**2) - 2 * da * db) <= 1e-9
