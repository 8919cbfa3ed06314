import random

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tracecodes.gf2 import gf2_rank, in_span, echelon, kernel_basis, parity, solve_combination


def numpy_rank(rows, n):
    # independent elimination on a dense 0/1 matrix
    M = np.array([[(r >> j) & 1 for j in range(n)] for r in rows], dtype=np.uint8).reshape(len(rows), n)
    rank = 0
    for c in range(n):
        piv = np.nonzero(M[rank:, c])[0]
        if len(piv) == 0:
            continue
        p = rank + piv[0]
        M[[rank, p]] = M[[p, rank]]
        for r in range(len(M)):
            if r != rank and M[r, c]:
                M[r] ^= M[rank]
        rank += 1
        if rank == len(M):
            break
    return rank


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, (1 << 20) - 1), max_size=12))
def test_rank_matches_dense(rows):
    assert gf2_rank(rows) == numpy_rank(rows, 20)
    assert len(echelon(rows)) == gf2_rank(rows)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, (1 << 16) - 1), min_size=1, max_size=10), st.data())
def test_solve_combination(rows, data):
    combo = data.draw(st.integers(0, (1 << len(rows)) - 1))
    target = 0
    for j, r in enumerate(rows):
        if (combo >> j) & 1:
            target ^= r
    got = solve_combination(rows, target)
    assert got is not None
    acc = 0
    for j, r in enumerate(rows):
        if (got >> j) & 1:
            acc ^= r
    assert acc == target
    assert in_span(target, echelon(rows))


def test_solve_outside_span():
    assert solve_combination([0b011, 0b110], 0b001) is None


def test_kernel_basis():
    rng = random.Random(0)
    for _ in range(30):
        n = rng.randrange(5, 40)
        rows = [rng.getrandbits(n) for _ in range(rng.randrange(1, n))]
        ker = kernel_basis(rows, n)
        assert len(ker) == n - gf2_rank(rows)
        assert gf2_rank(ker) == len(ker)
        for v in ker:
            assert all(parity(v & r) == 0 for r in rows)
