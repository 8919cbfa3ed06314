import random

import pytest

from tracecodes.code import CodeSpec, GrayWord, WeightDistribution, enumerate_weights
from tracecodes.errors import FeasibilityError, ParameterError, ReconstructionError
from tracecodes.sss import (
    SECRET,
    MasseyScheme,
    ab_condition,
    all_codewords,
    covers,
    deal_shares,
    in_dealing_code,
    massey_access_structure,
    minimal_codewords,
    reconstruct,
    roundtrip_check,
)
from tracecodes.code import generator_row_bits


@pytest.fixture(scope="module")
def spec3():
    return CodeSpec.from_m(3)


@pytest.fixture(scope="module")
def pairwise3(spec3):
    return minimal_codewords(spec3, method="pairwise")


@pytest.fixture(scope="module")
def access3(spec3, pairwise3):
    return massey_access_structure(spec3, pairwise3)


def brute_minimal(words):
    nz = [w for w in words if w]
    return [w for w in nz if not any(v != w and v & ~w == 0 for v in nz)]


def test_minimality_brute_force_m2():
    spec = CodeSpec.from_m(2)
    words = all_codewords(spec)
    rep = minimal_codewords(spec, method="pairwise")
    assert rep.count == len(brute_minimal(words))
    flagged = sorted(w for w, f in zip(rep.words, rep.minimal) if f)
    assert flagged == sorted(brute_minimal(words))


def test_methods_agree_m3(spec3, pairwise3):
    rank = minimal_codewords(spec3, method="rank")
    assert rank.count == pairwise3.count == 4053
    assert rank.non_minimal_weights() == pairwise3.non_minimal_weights() == {64: 35, 96: 7}
    assert massey_access_structure(spec3, rank).dictators == massey_access_structure(spec3, pairwise3).dictators


def test_non_minimal_words_really_cover_another(pairwise3):
    words = pairwise3.words
    nz = [w for w in words if w]
    for w, f in zip(words, pairwise3.minimal):
        if w and not f:
            assert any(v != w and v & ~w == 0 for v in nz)


def test_ab_condition():
    assert ab_condition(enumerate_weights(CodeSpec.from_m(3))) is False
    assert ab_condition(WeightDistribution({0: 1, 768: 1, 1280: 1})) is True
    assert ab_condition(WeightDistribution({0: 1, 2: 1, 4: 1})) is False


def test_covers():
    assert covers(GrayWord(0b1110, 4), GrayWord(0b0110, 4))
    assert not covers(GrayWord(0b0110, 4), GrayWord(0b1110, 4))
    with pytest.raises(ParameterError):
        covers(GrayWord(1, 4), GrayWord(1, 5))


def test_access_structure(access3):
    assert access3.count == 2022
    assert access3.complete
    assert access3.dictators == frozenset({57})
    assert all(57 in s for s in access3.minimal_access_sets)
    js = access3.to_json()
    assert js["secret_coordinate"] == 1 and js["dictators"] == [58]


def test_dealing_code(spec3):
    scheme = MasseyScheme(spec3)
    rows = generator_row_bits(spec3)
    for seed in range(20):
        for secret in (0, 1):
            w = scheme.deal_word(secret, seed)
            assert in_dealing_code(w, rows)
            assert (w >> SECRET) & 1 == secret


def test_roundtrip_and_refusals(spec3, access3):
    rep = roundtrip_check(spec3, access3, trials=100, seed=5)
    assert rep.ok
    assert rep.successes == 100
    assert rep.single_user_tested == spec3.n_bin - 2


def test_unqualified_coalition(spec3, access3):
    shares = deal_shares(1, 3, spec3)
    rng = random.Random(0)
    s = sorted(rng.choice(access3.minimal_access_sets))
    assert reconstruct(shares.restrict(s), access3, spec3) == 1
    with pytest.raises(ReconstructionError):
        reconstruct(shares.restrict(s[:1]), access3, spec3)
    with pytest.raises(ParameterError):
        shares.share(0)


def test_guards():
    with pytest.raises(FeasibilityError):
        minimal_codewords(CodeSpec.from_m(6))
    with pytest.raises(FeasibilityError):
        minimal_codewords(CodeSpec.from_m(5), method="pairwise")
    with pytest.raises(ParameterError):
        minimal_codewords(CodeSpec.from_m(2), method="greedy")
    with pytest.raises(ParameterError):
        MasseyScheme(CodeSpec.from_m(2)).deal_word(2, 0)
