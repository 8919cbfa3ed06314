"""Low-Lee-weight words of the R-dual of C_m, and the binary MacWilliams transform.

A sparse word p over R is orthogonal to C_m iff it is orthogonal to the 2m
R-module generators Ev(x^j, 0), Ev(0, x^j).  Each (coordinate, value) entry
contributes the products value * generator_k[coordinate], packed two bits
per generator into a 4m-bit syndrome; p is a dual word iff the XOR of its
entries' syndromes vanishes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

import numpy as np

from .code import CodeSpec, WeightDistribution, ev_pairs, index_to_pairs
from .errors import FeasibilityError, InconsistencyError, ParameterError
from .ring import BASE_NAMES, LEE, ONE, ONE_PLUS_U, U, base_mul

NONZERO = (ONE, U, ONE_PLUS_U)
MAX_PREFIXES = 5_000_000


@dataclass(frozen=True)
class DualPattern:
    """Sparse word over R: (coordinate index, nonzero base-ring value) entries."""

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        idx = [i for i, _ in self.entries]
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ParameterError("pattern coordinates must be strictly increasing")
        if any(v not in NONZERO for _, v in self.entries):
            raise ParameterError("pattern values must be nonzero base-ring elements")

    @property
    def lee_weight(self) -> int:
        return sum(LEE[v] for _, v in self.entries)

    @property
    def type_label(self) -> str:
        return type_label([v for _, v in self.entries])

    def to_json(self) -> list[list]:
        return [[i, BASE_NAMES[v]] for i, v in self.entries]


def type_label(values: Sequence[int]) -> str:
    order = {ONE: 0, ONE_PLUS_U: 1, U: 2}
    return "{" + ",".join(BASE_NAMES[v] for v in sorted(values, key=order.__getitem__)) + "}"


def module_generators(spec: CodeSpec) -> list[tuple[int, ...]]:
    """Ev(x^j, 0) and Ev(0, x^j): generators of C_m as an R-module."""
    m = spec.m
    gens = [ev_pairs(spec, (1 << j, 0), (0, 0)) for j in range(m)]
    gens += [ev_pairs(spec, (0, 0), (1 << j, 0)) for j in range(m)]
    return gens


def syndrome_table(spec: CodeSpec) -> dict[int, np.ndarray]:
    """value -> int64 array over coordinates of packed products with the generators."""
    gens = module_generators(spec)
    table = {}
    for v in NONZERO:
        syn = np.zeros(spec.n, dtype=np.int64)
        for k, g in enumerate(gens):
            prods = np.fromiter((base_mul(v, c) for c in g), dtype=np.int64, count=spec.n)
            syn |= prods << (2 * k)
        table[v] = syn
    return table


def is_dual_word(p: DualPattern, spec: CodeSpec, table: Optional[dict] = None) -> bool:
    table = table if table is not None else syndrome_table(spec)
    acc = 0
    for i, v in p.entries:
        if not 0 <= i < spec.n:
            raise ParameterError(f"coordinate {i} out of range for n={spec.n}")
        acc ^= int(table[v][i])
    return acc == 0


def codeword_matrix(spec: CodeSpec) -> np.ndarray:
    """Every codeword of C_m over R, shape (2^(4m), n), base-ring ints."""
    if spec.k_bin > 16:
        raise FeasibilityError(f"refusing to materialise 2^{spec.k_bin} codewords")
    out = np.empty((1 << spec.k_bin, spec.n), dtype=np.uint8)
    for idx in range(1 << spec.k_bin):
        a, b = index_to_pairs(idx, spec.m)
        out[idx] = ev_pairs(spec, a, b)
    return out


_MUL = np.array([[base_mul(r, s) for s in range(4)] for r in range(4)], dtype=np.uint8)


def orthogonal_to_all(p: DualPattern, codewords: np.ndarray) -> bool:
    """Direct check of sum_i p_i c_i = 0 over R for every codeword row."""
    acc = np.zeros(codewords.shape[0], dtype=np.uint8)
    for i, v in p.entries:
        acc ^= _MUL[v][codewords[:, i]]
    return not acc.any()


# --- bounded-support search -------------------------------------------------------

def value_vectors(max_lee: int):
    """Value tuples (one per support coordinate) with total Lee weight <= max_lee."""
    for s in range(1, max_lee + 1):
        for vals in itertools.product(NONZERO, repeat=s):
            if sum(LEE[v] for v in vals) <= max_lee:
                yield vals


def _combinations(n: int, r: int) -> np.ndarray:
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), r)),
        dtype=np.int64,
        count=comb(n, r) * r,
    )
    return flat.reshape(-1, r)


def search_feasible(spec: CodeSpec, max_lee: int) -> bool:
    return comb(spec.n, max_lee - 1) <= MAX_PREFIXES


@dataclass
class DualSearchResult:
    max_lee: int
    counts: dict[int, int]
    by_type: dict[int, dict[str, int]]
    witnesses: dict[int, list[DualPattern]] = field(default_factory=dict)

    def distance(self) -> Optional[int]:
        for w in sorted(self.counts):
            if self.counts[w]:
                return w
        return None

    def to_json(self) -> dict:
        d = self.distance()
        return {
            "max_lee": self.max_lee,
            "counts": {str(w): str(c) for w, c in sorted(self.counts.items())},
            "by_type": {
                str(w): {t: str(c) for t, c in sorted(types.items())}
                for w, types in sorted(self.by_type.items())
            },
            "dual_distance": d if d is not None else f">{self.max_lee}",
            "witnesses": {
                str(w): [p.to_json() for p in ps] for w, ps in sorted(self.witnesses.items())
            },
        }


def search_low_weight_duals(
    spec: CodeSpec, max_lee: int = 4, max_witnesses: int = 64
) -> DualSearchResult:
    """Exact counts of dual words with Lee weight 1..max_lee.

    For each value vector (v_1, ..., v_s) every support i_1 < ... < i_s is
    considered: the prefix i_1..i_{s-1} is enumerated, and the number of
    last coordinates i_s > i_{s-1} whose syndrome cancels the prefix is read
    off a sorted (syndrome, coordinate) key array.
    """
    if not 1 <= max_lee <= 4:
        raise ParameterError("max_lee must be in 1..4")
    if not search_feasible(spec, max_lee):
        raise FeasibilityError(
            f"support search up to Lee weight {max_lee} needs C({spec.n}, {max_lee - 1}) "
            f"prefixes, above the {MAX_PREFIXES} guard"
        )
    n = spec.n
    syn = syndrome_table(spec)
    keys = {}
    for v in NONZERO:
        k = syn[v] * n + np.arange(n, dtype=np.int64)
        keys[v] = np.sort(k)
    prefixes: dict[int, np.ndarray] = {}

    counts = {w: 0 for w in range(1, max_lee + 1)}
    by_type: dict[int, dict[str, int]] = {w: {} for w in counts}
    witnesses: dict[int, list[DualPattern]] = {w: [] for w in counts}

    for vals in value_vectors(max_lee):
        s = len(vals)
        w = sum(LEE[v] for v in vals)
        if s - 1 not in prefixes:
            prefixes[s - 1] = _combinations(n, s - 1)
        pre = prefixes[s - 1]
        acc = np.zeros(len(pre), dtype=np.int64)
        for col, v in enumerate(vals[:-1]):
            acc ^= syn[v][pre[:, col]]
        last = pre[:, -1] if s > 1 else np.full(len(pre), -1, dtype=np.int64)
        k = keys[vals[-1]]
        lo = np.searchsorted(k, acc * n + last + 1, side="left")
        hi = np.searchsorted(k, acc * n + n, side="left")
        hits = hi - lo
        total = int(hits.sum())
        if not total:
            continue
        counts[w] += total
        label = type_label(vals)
        by_type[w][label] = by_type[w].get(label, 0) + total
        room = max_witnesses - len(witnesses[w])
        if room > 0:
            for r in np.nonzero(hits)[0]:
                for pos in range(lo[r], hi[r]):
                    i_last = int(k[pos] % n)
                    coords = [int(c) for c in pre[r]] + [i_last]
                    witnesses[w].append(DualPattern(tuple(zip(coords, vals))))
                    room -= 1
                    if room == 0:
                        break
                if room == 0:
                    break
    return DualSearchResult(max_lee, counts, by_type, {w: p for w, p in witnesses.items() if p})


def dual_distance(spec: CodeSpec, max_lee: int = 4) -> Optional[int]:
    """Smallest Lee weight of a nonzero dual word, or None if it exceeds max_lee."""
    return search_low_weight_duals(spec, max_lee, max_witnesses=0).distance()


# --- nondegeneracy -------------------------------------------------------------------

def nondegeneracy_check(spec: CodeSpec) -> bool:
    """True iff every nonzero x in R_m has some (a, b) with Tr(ax + bx^3) != 0."""
    return not degenerate_points(spec)


def degenerate_points(spec: CodeSpec) -> list[tuple[int, int]]:
    ring = spec.ring
    if spec.m > 10:
        raise FeasibilityError("nondegeneracy loop limited to m <= 10")
    elems = list(ring.elements())
    bad = []
    for x in elems:
        if x == (0, 0):
            continue
        x3 = ring.cube(x)
        found = False
        for a in elems:
            ax = ring.mul(a, x)
            for b in elems:
                if ring.trace(ring.add(ax, ring.mul(b, x3))):
                    found = True
                    break
            if found:
                break
        if not found:
            bad.append(x)
    return bad


# --- binary MacWilliams ---------------------------------------------------------------

def krawtchouk_column(n: int, i: int) -> list[int]:
    """K_j(i) for j = 0..n, by the three-term recurrence in j."""
    K = [1, n - 2 * i]
    for j in range(1, n):
        num = (n - 2 * i) * K[j] - (n - j + 1) * K[j - 1]
        if num % (j + 1):
            raise ArithmeticError("Krawtchouk recurrence left the integers")
        K.append(num // (j + 1))
    return K[: n + 1]


def macwilliams_binary(dist: WeightDistribution, n_bin: int, k_bin: int) -> WeightDistribution:
    """Weight distribution of the binary dual: B_j = 2^-k sum_i A_i K_j(i)."""
    if dist.total() != 1 << k_bin:
        raise InconsistencyError(
            f"distribution sums to {dist.total()}, expected 2^{k_bin}"
        )
    acc = [0] * (n_bin + 1)
    for i, a in dist.counts.items():
        if not a:
            continue
        if not 0 <= i <= n_bin:
            raise InconsistencyError(f"weight {i} outside 0..{n_bin}")
        for j, kv in enumerate(krawtchouk_column(n_bin, i)):
            acc[j] += a * kv
    out = {}
    scale = 1 << k_bin
    for j, s in enumerate(acc):
        if s % scale or s < 0:
            raise InconsistencyError(f"dual coefficient at weight {j} is {s}/2^{k_bin}")
        if s:
            out[j] = s // scale
    return WeightDistribution(out)
