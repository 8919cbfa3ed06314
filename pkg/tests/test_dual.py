import itertools

import pytest

from tracecodes.code import CodeSpec, WeightDistribution, enumerate_weights
from tracecodes.dual import (
    NONZERO,
    DualPattern,
    codeword_matrix,
    degenerate_points,
    dual_distance,
    is_dual_word,
    krawtchouk_column,
    macwilliams_binary,
    nondegeneracy_check,
    orthogonal_to_all,
    search_feasible,
    search_low_weight_duals,
    syndrome_table,
    type_label,
)
from tracecodes.errors import FeasibilityError, InconsistencyError, ParameterError
from tracecodes.ring import LEE, ONE, ONE_PLUS_U, U


@pytest.fixture(scope="module")
def spec3():
    return CodeSpec.from_m(3)


@pytest.fixture(scope="module")
def words3(spec3):
    return codeword_matrix(spec3)


@pytest.fixture(scope="module")
def search3(spec3):
    return search_low_weight_duals(spec3, 4, max_witnesses=64)


def test_search_counts_m3(search3):
    assert search3.counts[1] == 0
    assert search3.counts[2] == 56
    assert search3.counts[3] == 0
    assert search3.counts[4] == 3108
    assert search3.by_type[2] == {"{1,1+u}": 56}
    assert search3.distance() == 2


def test_brute_force_low_weights_against_every_codeword(spec3, words3):
    # every support of size <= 2 checked directly against all 4096 codewords
    n = spec3.n
    found = {1: 0, 2: 0}
    for i in range(n):
        for v in NONZERO:
            if orthogonal_to_all(DualPattern(((i, v),)), words3):
                found[LEE[v]] += 1
    for i, j in itertools.combinations(range(n), 2):
        for v, w in itertools.product((ONE, ONE_PLUS_U), repeat=2):
            if orthogonal_to_all(DualPattern(((i, v), (j, w))), words3):
                found[2] += 1
    assert found == {1: 0, 2: 56}


def test_witnesses_are_orthogonal(search3, spec3, words3):
    table = syndrome_table(spec3)
    for w, pats in search3.witnesses.items():
        for p in pats:
            assert p.lee_weight == w
            assert is_dual_word(p, spec3, table)
            assert orthogonal_to_all(p, words3)


def test_non_dual_patterns_rejected(spec3, words3):
    table = syndrome_table(spec3)
    for p in (DualPattern(((0, U),)), DualPattern(((0, ONE), (1, ONE))), DualPattern(((3, ONE), (9, ONE)))):
        assert is_dual_word(p, spec3, table) == orthogonal_to_all(p, words3) == False  # noqa: E712


def test_search_agrees_with_binary_macwilliams(spec3, search3):
    # the Gray image of the R-dual is the binary dual of the Gray image
    mw = macwilliams_binary(enumerate_weights(spec3), spec3.n_bin, spec3.k_bin)
    for w in range(1, 5):
        assert search3.counts[w] == mw[w]


def test_search_m5_weight_two():
    spec = CodeSpec.from_m(5)
    res = search_low_weight_duals(spec, 2)
    assert res.counts == {1: 0, 2: 992}
    assert dual_distance(spec, 2) == 2


def test_guard():
    spec = CodeSpec.from_m(5)
    assert search_feasible(spec, 3)
    assert not search_feasible(spec, 4)
    with pytest.raises(FeasibilityError):
        search_low_weight_duals(spec, 4)
    with pytest.raises(ParameterError):
        search_low_weight_duals(spec, 5)


def test_type_label():
    assert type_label([U, ONE_PLUS_U, ONE]) == "{1,1+u,u}"
    with pytest.raises(ParameterError):
        DualPattern(((2, ONE), (1, ONE)))
    with pytest.raises(ParameterError):
        DualPattern(((0, 0),))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_nondegenerate(m):
    spec = CodeSpec.from_m(m)
    assert nondegeneracy_check(spec)
    assert degenerate_points(spec) == []


def test_krawtchouk_symmetry():
    # binomial(n, i) K_j(i) = binomial(n, j) K_i(j)
    from math import comb
    n = 12
    cols = [krawtchouk_column(n, i) for i in range(n + 1)]
    for i in range(n + 1):
        for j in range(n + 1):
            assert comb(n, i) * cols[i][j] == comb(n, j) * cols[j][i]


def test_macwilliams_hamming_code():
    rows = [0b1000110, 0b0100101, 0b0010011, 0b0001111]
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    dual = [v for v in range(128) if all(bin(v & r).count("1") % 2 == 0 for r in rows)]
    got = macwilliams_binary(WeightDistribution.from_weights(bin(w).count("1") for w in words), 7, 4)
    assert got == WeightDistribution.from_weights(bin(v).count("1") for v in dual)


def test_macwilliams_m3_integral(spec3):
    mw = macwilliams_binary(enumerate_weights(spec3), spec3.n_bin, spec3.k_bin)
    assert mw[0] == 1 and mw[1] == 0
    assert mw.total() == 2 ** 100
    assert all(c >= 0 for c in mw.counts.values())


def test_macwilliams_inconsistent_input():
    with pytest.raises(InconsistencyError):
        macwilliams_binary(WeightDistribution({0: 1, 3: 2}), 7, 2)
    with pytest.raises(InconsistencyError):
        macwilliams_binary(WeightDistribution({0: 1, 1: 3}), 3, 2)
