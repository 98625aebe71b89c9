import math

import numpy as np
import pytest

from evolflow.curves import ExpLine, FlipFlop, check_one_parameter_subgroup
from evolflow.errors import NegativeOffDiagonal, RowSumNonzero, SubsetTooSmall
from evolflow.lie import Algebra, Group, in_algebra, in_group
from evolflow.markov import (
    StationaryDistribution,
    axioms_report,
    birth_death_rate,
    det_trace_identity,
    detailed_balance,
    flip_flop_rate,
    kolmogorov_residuals,
    random_rate_matrix,
    semigroup_at,
    truncate_reversible,
    validate_rate,
)
from evolflow.matcore import frob_norm

GRID = [0.0, 0.3, 0.7, 1.1]


def three_cycle():
    Q = np.zeros((3, 3))
    Q[0, 1] = Q[1, 2] = Q[2, 0] = 1.0
    np.fill_diagonal(Q, -Q.sum(axis=1))
    return validate_rate(Q)


# ---------------------------------------------------------------------------
# validation


def test_flip_flop_rate_is_valid():
    rate = flip_flop_rate(1.0)
    assert np.array_equal(rate.Q, np.array([[-1.0, 1.0], [1.0, -1.0]]))


def test_zero_generator_is_valid():
    rate = validate_rate(np.zeros((3, 3)))
    s = semigroup_at(rate, 5.0)
    assert np.array_equal(s.matrix, np.eye(3))


def test_negative_off_diagonal_rejected():
    with pytest.raises(NegativeOffDiagonal) as err:
        validate_rate(np.array([[1.0, -1.0], [0.0, 0.0]]))
    assert err.value.defects == [(0, 1, -1.0)]


def test_row_sum_rejected():
    with pytest.raises(RowSumNonzero) as err:
        validate_rate(np.array([[-1.0, 2.0], [0.0, 0.0]]))
    assert err.value.defects[0][0] == 0


def test_complex_rate_rejected():
    with pytest.raises(ValueError):
        validate_rate(np.array([[-1.0 + 1j, 1.0 - 1j], [1.0, -1.0]]))


# ---------------------------------------------------------------------------
# semigroup values


def test_semigroup_at_zero_is_identity():
    rate = flip_flop_rate(0.7)
    s = semigroup_at(rate, 0.0)
    assert np.array_equal(s.matrix, np.eye(2))
    assert not s.non_markov_range


def test_semigroup_matches_flip_flop_closed_form():
    for lam in (0.5, 1.0, 2.0):
        rate = flip_flop_rate(lam)
        for t in (0.0, 0.25, 1.0, 4.0):
            closed = FlipFlop(lam).value(t)
            assert frob_norm(semigroup_at(rate, t).matrix - closed) <= 1e-10


def test_negative_time_is_flagged_and_non_markov():
    s = semigroup_at(flip_flop_rate(1.0), -1.0)
    assert s.non_markov_range
    off = 0.5 * (1.0 - math.e**2)
    assert s.matrix[0, 1] == pytest.approx(off, rel=1e-12)
    assert off == pytest.approx(-3.194528049465325)
    assert s.min_entry < -3.0
    # ...yet the curve through it is still a one-parameter subgroup
    rep = check_one_parameter_subgroup(
        ExpLine(np.eye(2), flip_flop_rate(1.0).Q), [-2.0, -1.0, 0.5, 1.0, 2.0]
    )
    assert rep.passed


def test_markov_window_for_nonnegative_time():
    rng = np.random.default_rng(61)
    for _ in range(10):
        rate = random_rate_matrix(int(rng.integers(2, 7)), rng)
        for t in (0.0, 0.2, 1.0, 3.5):
            s = semigroup_at(rate, t)
            assert s.min_entry >= -1e-12
            assert s.row_sum_defect <= 1e-10


# ---------------------------------------------------------------------------
# axioms


def test_axioms_flip_flop():
    for lam in (0.5, 1.0, 3.0):
        rep = axioms_report(flip_flop_rate(lam), GRID)
        assert rep.passed, rep
        assert rep.chapman_defect <= 1e-9


def test_axioms_zero_generator():
    rep = axioms_report(validate_rate(np.zeros((4, 4))), GRID)
    assert rep.passed
    assert rep.chapman_defect == 0.0


def test_axioms_random_five_state():
    rep = axioms_report(random_rate_matrix(5, 99), GRID)
    assert rep.passed
    assert rep.identity_defect == 0.0
    d = rep.continuity_defects
    assert all(d[k + 1] <= d[k] * (1.0 + 1e-9) for k in range(len(d) - 1))


def test_axioms_reject_negative_grid():
    with pytest.raises(ValueError):
        axioms_report(flip_flop_rate(1.0), [-0.5, 1.0])


# ---------------------------------------------------------------------------
# Kolmogorov equations and determinant identity


def test_kolmogorov_residuals_flip_flop():
    res = kolmogorov_residuals(flip_flop_rate(1.0), GRID)
    assert res.backward <= 1e-9
    assert res.forward <= 1e-9
    assert res.initial == 0.0


def test_kolmogorov_residuals_random():
    rng = np.random.default_rng(62)
    for _ in range(10):
        rate = random_rate_matrix(int(rng.integers(2, 7)), rng)
        res = kolmogorov_residuals(rate, GRID)
        assert res.backward <= 1e-8
        assert res.forward <= 1e-8


def test_det_trace_identity_flip_flop():
    rate = flip_flop_rate(1.0)
    assert det_trace_identity(rate, [1.0]) <= 1e-10
    A = semigroup_at(rate, 1.0).matrix
    assert np.linalg.det(A) == pytest.approx(math.exp(-2.0), abs=1e-9)
    assert det_trace_identity(rate, [0.0]) <= 1e-15


def test_det_trace_identity_random():
    rng = np.random.default_rng(63)
    for _ in range(10):
        rate = random_rate_matrix(int(rng.integers(2, 7)), rng)
        assert det_trace_identity(rate, np.linspace(0.0, 4.0, 9)) <= 1e-8


def test_semigroup_always_nonsingular():
    # CT-Markov curves are perfect: det exp(tQ) = e^{t tr Q} > 0
    rng = np.random.default_rng(64)
    for _ in range(5):
        rate = random_rate_matrix(4, rng)
        for t in (0.0, 0.5, 2.0, 10.0):
            d = np.linalg.det(semigroup_at(rate, t).matrix)
            assert d > 0.0
            assert d == pytest.approx(math.exp(t * np.trace(rate.Q)), rel=1e-8)


def test_omega_group_membership():
    rate = flip_flop_rate(1.0)
    assert in_algebra(rate.Q, Algebra.omega0(2)).belongs
    for t in (0.1, 1.0, 2.5):
        A = semigroup_at(rate, t).matrix
        assert in_group(A, Group.gen_doubly_stochastic(2, 1.0)).belongs


def test_probability_vector_preservation():
    rng = np.random.default_rng(65)
    rate = random_rate_matrix(5, rng)
    p = rng.uniform(0.0, 1.0, size=5)
    p /= p.sum()
    for t in (0.3, 1.0, 4.0):
        q = p @ semigroup_at(rate, t).matrix
        assert q.min() >= -1e-12
        assert abs(q.sum() - 1.0) <= 1e-10


# ---------------------------------------------------------------------------
# detailed balance and truncation


def test_detailed_balance_flip_flop():
    rep = detailed_balance(flip_flop_rate(1.0), StationaryDistribution([0.5, 0.5]))
    assert rep.passed
    assert rep.defect == 0.0


def birth_death_with_stationary(births, deaths):
    rate = birth_death_rate(births, deaths)
    pi = np.ones(len(births) + 1)
    for i in range(len(births)):
        pi[i + 1] = pi[i] * births[i] / deaths[i]
    pi /= pi.sum()
    return rate, StationaryDistribution(pi)


def test_detailed_balance_birth_death():
    rate, pi = birth_death_with_stationary([1.0, 2.0, 0.5], [0.7, 1.1, 2.0])
    rep = detailed_balance(rate, pi, 1e-12)
    assert rep.passed


def test_detailed_balance_fails_for_cycle():
    rep = detailed_balance(three_cycle(), StationaryDistribution(np.ones(3) / 3.0))
    assert not rep.passed
    assert rep.defect == pytest.approx(1.0 / 3.0)


def test_truncation_preserves_reversibility():
    rate, pi = birth_death_with_stationary([1.0, 2.0, 0.5, 1.5], [0.7, 1.1, 2.0, 0.9])
    states = [0, 1, 2]
    sub = truncate_reversible(rate, states)
    sub_pi = pi.restrict(states)
    assert detailed_balance(sub, sub_pi, 1e-12).passed


def test_truncation_to_full_set_is_identity():
    rate = birth_death_rate([1.0, 2.0], [0.5, 0.5])
    sub = truncate_reversible(rate, [0, 1, 2])
    assert np.array_equal(sub.Q, rate.Q)


def test_truncation_of_cycle_is_still_a_rate_matrix():
    sub = truncate_reversible(three_cycle(), [0, 1])
    assert np.array_equal(sub.Q, np.array([[-1.0, 1.0], [0.0, 0.0]]))


def test_truncation_needs_two_states():
    with pytest.raises(SubsetTooSmall):
        truncate_reversible(flip_flop_rate(1.0), [0])


def test_stationary_distribution_validation():
    with pytest.raises(ValueError):
        StationaryDistribution([0.5, 0.6])
    with pytest.raises(ValueError):
        StationaryDistribution([1.5, -0.5])
