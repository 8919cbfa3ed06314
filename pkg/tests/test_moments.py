from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tracecodes.code import CodeSpec, WeightDistribution, enumerate_weights
from tracecodes.errors import ParameterError
from tracecodes.moments import (
    binary_length,
    claimed_dual_counts,
    griesmer_bound,
    griesmer_check,
    moment_report,
    paper_system_residuals,
    power_sum,
    solve_exact,
    solve_from_power_sums,
    solve_paper_system,
)


@pytest.fixture(scope="module", params=[3, 5])
def dist(request):
    return request.param, enumerate_weights(CodeSpec.from_m(request.param))


def test_binary_length():
    assert binary_length(3) == 112 and binary_length(5) == 1984


def test_claimed_counts_m3():
    assert claimed_dual_counts(3) == (168, 1792)


def test_first_two_equations_hold(dist):
    m, d = dist
    a2, a4 = claimed_dual_counts(m)
    res = paper_system_residuals(d, a2, a4, m)
    assert res[0] == 0 and res[1] == 0


def test_round_trip(dist):
    m, d = dist
    sol = solve_from_power_sums(m, d)
    assert sol.values == [Fraction(d[w]) for w in sol.weights]
    assert all(sol.integral)


def test_full_system_with_true_dual_counts():
    d = enumerate_weights(CodeSpec.from_m(3))
    assert paper_system_residuals(d, 56, 3108, 3) == [0, 0, 0, 0, 0]
    sol = solve_paper_system(3, 56, 3108)
    assert sol.values == [Fraction(d[w]) for w in sol.weights]


def test_claimed_counts_break_higher_equations():
    d = enumerate_weights(CodeSpec.from_m(3))
    res = paper_system_residuals(d, *claimed_dual_counts(3), 3)
    assert all(r != 0 for r in res[2:])
    sol = solve_paper_system(3, *claimed_dual_counts(3))
    assert not all(sol.integral)


def test_report_runs():
    d = enumerate_weights(CodeSpec.from_m(3))
    rep = moment_report(3, d, {"search": (56, 3108)})
    assert set(rep.runs) == {"claimed", "search"}
    assert rep.round_trip
    assert rep.runs["search"]["residuals"] == ["0"] * 5
    assert rep.power_sums[0] == 4095


def test_power_sum_range():
    with pytest.raises(ParameterError):
        power_sum(WeightDistribution({0: 1}), 5)


def test_residuals_reject_foreign_weights():
    with pytest.raises(ParameterError):
        paper_system_residuals(WeightDistribution({0: 1, 33: 1}), 0, 0, 3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_solve_exact_against_substitution(matrix, x):
    rhs = [sum(a * b for a, b in zip(row, x)) for row in matrix]
    try:
        sol = solve_exact(matrix, rhs)
    except ZeroDivisionError:
        return
    assert sol == [Fraction(v) for v in x]


def test_griesmer():
    assert griesmer_bound(4, 3) == 7
    assert griesmer_check(112, 12, 32) == (True, 69)
    assert griesmer_check(1984, 20, 768)[0]
