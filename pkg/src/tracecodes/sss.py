"""Minimal codewords of the Gray image and the Massey secret-sharing scheme built on it.

Binary positions are 0-based bit indices of a Gray word.  Position 0 carries
the secret; users are positions 1..n_bin-1.  Reports use 1-based
coordinates (secret at coordinate 1, users 2..n_bin).

Shares are dealt from the binary dual of Phi(C_m), so a coalition S can
recover the secret exactly when some codeword c of Phi(C_m) has c_0 = 1 and
support inside {0} u S.  The minimal coalitions are therefore the supports
of minimal codewords of Phi(C_m) through position 0.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .code import CodeSpec, GrayWord, WeightDistribution, generator_row_bits
from .errors import FeasibilityError, ParameterError, ReconstructionError
from .gf2 import gf2_rank, kernel_basis, parity, solve_combination

SECRET = 0
MAX_MINIMAL_BITS = 22
PAIRWISE_BITS = 12


def covers(x: GrayWord, y: GrayWord) -> bool:
    """support(y) is a subset of support(x)."""
    if x.length != y.length:
        raise ParameterError("cannot compare Gray words of different lengths")
    return y.bits & ~x.bits == 0


def all_codewords(spec: CodeSpec) -> list[int]:
    """Gray images of every codeword, indexed by combination index."""
    rows = generator_row_bits(spec)
    total = 1 << spec.k_bin
    out = [0] * total
    acc = 0
    for t in range(1, total):
        acc ^= rows[(t & -t).bit_length() - 1]
        out[t ^ (t >> 1)] = acc
    return out


def _pack(words: list[int], n_bits: int) -> np.ndarray:
    n_words = (n_bits + 63) // 64
    mask = (1 << 64) - 1
    arr = np.empty((len(words), n_words), dtype=np.uint64)
    for i, w in enumerate(words):
        for j in range(n_words):
            arr[i, j] = (w >> (64 * j)) & mask
    return arr


def _minimal_pairwise(words: list[int], n_bits: int) -> np.ndarray:
    """Flag per word: not covering any other nonzero word of smaller weight.

    Equal-weight covering forces equality, so only lighter words are compared.
    """
    packed = _pack(words, n_bits)
    weights = np.array([w.bit_count() for w in words])
    order = np.argsort(weights, kind="stable")
    flags = np.zeros(len(words), dtype=bool)
    for pos, i in enumerate(order):
        if words[i] == 0:
            continue
        lighter = order[:pos]
        lighter = lighter[(weights[lighter] > 0) & (weights[lighter] < weights[i])]
        if len(lighter) == 0:
            flags[i] = True
            continue
        outside = packed[lighter] & ~packed[i]
        flags[i] = not np.any(~outside.any(axis=1))
    return flags


@dataclass
class _Tally:
    """Mergeable minimality summary for one range of codewords."""

    nonzero: int = 0
    minimal: int = 0
    non_minimal: dict = field(default_factory=dict)
    access_count: int = 0
    access_sizes: dict = field(default_factory=dict)
    dictator_mask: int = -1
    sample: list = field(default_factory=list)

    def add(self, word: int, is_min: bool, sample_cap: int) -> None:
        if word == 0:
            return
        self.nonzero += 1
        w = word.bit_count()
        if not is_min:
            self.non_minimal[w] = self.non_minimal.get(w, 0) + 1
            return
        self.minimal += 1
        if (word >> SECRET) & 1:
            users = word & ~(1 << SECRET)
            self.access_count += 1
            self.access_sizes[w - 1] = self.access_sizes.get(w - 1, 0) + 1
            self.dictator_mask &= users
            if len(self.sample) < sample_cap:
                self.sample.append(users)

    def merge(self, other: "_Tally", sample_cap: int) -> "_Tally":
        out = _Tally(
            self.nonzero + other.nonzero,
            self.minimal + other.minimal,
            _add_hist(self.non_minimal, other.non_minimal),
            self.access_count + other.access_count,
            _add_hist(self.access_sizes, other.access_sizes),
            self.dictator_mask & other.dictator_mask,
            (self.sample + other.sample)[:sample_cap],
        )
        return out


def _add_hist(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


def _rank_chunk(rows: list[int], n_bits: int, start: int, stop: int, sample_cap: int) -> _Tally:
    full = (1 << n_bits) - 1
    k = len(rows)
    tally = _Tally()
    acc = 0
    g = start ^ (start >> 1)
    for j, r in enumerate(rows):
        if (g >> j) & 1:
            acc ^= r
    for t in range(start, stop):
        if t != start:
            acc ^= rows[(t & -t).bit_length() - 1]
        if acc:
            off = full & ~acc
            tally.add(acc, gf2_rank([r & off for r in rows]) == k - 1, sample_cap)
    return tally


@dataclass
class MinimalityReport:
    method: str
    tally: _Tally
    words: Optional[list[int]] = None
    minimal: Optional[np.ndarray] = None

    @property
    def nonzero(self) -> int:
        return self.tally.nonzero

    @property
    def count(self) -> int:
        return self.tally.minimal

    @property
    def all_minimal(self) -> bool:
        return self.count == self.nonzero

    def non_minimal_weights(self) -> dict[int, int]:
        return dict(sorted(self.tally.non_minimal.items()))

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "nonzero_codewords": str(self.nonzero),
            "minimal_codewords": str(self.count),
            "all_minimal": self.all_minimal,
            "non_minimal_by_weight": {str(w): str(c) for w, c in self.non_minimal_weights().items()},
        }


def minimal_codewords(
    spec: CodeSpec, method: str = "auto", workers: int = 1, sample_cap: int = 256
) -> MinimalityReport:
    """Exact minimality of every nonzero codeword of Phi(C_m).

    ``pairwise`` compares each word against all lighter words on packed
    64-bit limbs.  ``rank`` tests whether the codewords vanishing off the
    support form a 1-dimensional space; it streams over Gray-code ordered
    chunks and keeps only summaries, so it scales past what can be stored.
    ``auto`` picks pairwise while 2^(4m) <= 2^12.
    """
    if spec.k_bin > MAX_MINIMAL_BITS:
        raise FeasibilityError(
            f"minimality guard: 2^{spec.k_bin} codewords exceeds 2^{MAX_MINIMAL_BITS}"
        )
    if method == "auto":
        method = "pairwise" if spec.k_bin <= PAIRWISE_BITS else "rank"
    if method == "pairwise":
        if spec.k_bin > 16:
            raise FeasibilityError("pairwise minimality is limited to 2^16 codewords; use method='rank'")
        words = all_codewords(spec)
        flags = _minimal_pairwise(words, spec.n_bin)
        tally = _Tally()
        for w, f in zip(words, flags):
            tally.add(w, bool(f), sample_cap)
        return MinimalityReport(method, tally, words, flags)
    if method != "rank":
        raise ParameterError(f"unknown method {method!r}")
    rows = generator_row_bits(spec)
    total = 1 << spec.k_bin
    chunk = 1 << 14
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    if workers <= 1:
        parts = [_rank_chunk(rows, spec.n_bin, s, e, sample_cap) for s, e in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_rank_chunk, rows, spec.n_bin, s, e, sample_cap) for s, e in ranges]
            parts = [f.result() for f in futs]
    tally = _Tally()
    for p in parts:
        tally = tally.merge(p, sample_cap)
    return MinimalityReport(method, tally)


def ab_condition(dist: WeightDistribution, q: int = 2) -> bool:
    """Ashikhmin-Barg: w_min / w_max > (q - 1) / q, compared in integers."""
    support = dist.support()
    if not support:
        raise ParameterError("distribution has no nonzero weight")
    w0, winf = support[0], support[-1]
    return q * w0 > (q - 1) * winf


# --- access structure -----------------------------------------------------------------

@dataclass
class AccessStructure:
    """Minimal coalitions as user-position sets.

    When ``complete`` is false only a sample of the sets is held; the count,
    size histogram and dictators always cover every minimal coalition.
    """

    n_bin: int
    minimal_access_sets: list[frozenset[int]]
    dictators: frozenset[int]
    count: int
    sizes: dict[int, int]
    complete: bool = True
    secret_position: int = SECRET

    @property
    def users(self) -> int:
        return self.n_bin - 1

    @property
    def degenerate(self) -> bool:
        return self.count == 0

    def to_json(self, list_sets: bool = True) -> dict:
        out = {
            "indexing": "1-based coordinates of the Gray image",
            "secret_coordinate": self.secret_position + 1,
            "users": self.users,
            "minimal_access_set_count": str(self.count),
            "minimal_access_set_sizes": {str(k): str(v) for k, v in sorted(self.sizes.items())},
            "dictators": sorted(p + 1 for p in self.dictators),
            "degenerate": self.degenerate,
            "complete": self.complete,
        }
        if list_sets:
            out["minimal_access_sets"] = [sorted(p + 1 for p in s) for s in self.minimal_access_sets]
        return out


def _positions(bits: int) -> frozenset[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return frozenset(out)


def massey_access_structure(
    spec: CodeSpec, minimality: Optional[MinimalityReport] = None
) -> AccessStructure:
    """Supports (minus the secret position) of minimal codewords through position 0."""
    rep = minimality if minimality is not None else minimal_codewords(spec)
    t = rep.tally
    if rep.words is not None:
        masks = [w & ~(1 << SECRET) for w, f in zip(rep.words, rep.minimal) if f and (w >> SECRET) & 1]
        complete = True
    else:
        masks = t.sample
        complete = len(masks) == t.access_count
    sets = sorted((_positions(x) for x in masks), key=lambda s: (len(s), sorted(s)))
    dictators = _positions(t.dictator_mask & ((1 << spec.n_bin) - 1)) if t.access_count else frozenset()
    return AccessStructure(spec.n_bin, sets, dictators, t.access_count, dict(t.access_sizes), complete)


# --- dealing and reconstruction ------------------------------------------------------

@dataclass(frozen=True)
class Shares:
    """Dealt word with the secret position cleared; bit p is user p's share."""

    bits: int
    n_bin: int

    def share(self, user: int) -> int:
        if not 1 <= user < self.n_bin:
            raise ParameterError(f"no user at position {user}")
        return (self.bits >> user) & 1

    def restrict(self, users: Iterable[int]) -> dict[int, int]:
        return {u: self.share(u) for u in users}

    def hex(self) -> str:
        return format(self.bits >> 1, f"0{(self.n_bin + 2) // 4}x")


class MasseyScheme:
    """Secret at position 0 of a word drawn from the binary dual of Phi(C_m)."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec
        self.rows = generator_row_bits(spec)
        self.dual_basis = kernel_basis(self.rows, spec.n_bin)
        flip = [h for h in self.dual_basis if (h >> SECRET) & 1]
        if not flip:
            raise ParameterError("secret coordinate is identically zero on the dealing code")
        self._flip = flip[0]

    def deal_word(self, secret: int, rng_seed: int) -> int:
        if secret not in (0, 1):
            raise ParameterError("secret must be a bit")
        rng = random.Random(rng_seed)
        word = 0
        for h in self.dual_basis:
            if rng.getrandbits(1):
                word ^= h
        # XOR with a fixed word of the other coset is a bijection, so the draw stays uniform
        if (word >> SECRET) & 1 != secret:
            word ^= self._flip
        return word

    def deal(self, secret: int, rng_seed: int) -> Shares:
        return Shares(self.deal_word(secret, rng_seed) & ~(1 << SECRET), self.spec.n_bin)

    def recovery_vector(self, coalition: Iterable[int]) -> Optional[int]:
        """A codeword c of Phi(C_m) with c_0 = 1 and support in {0} u coalition, if any."""
        keep = 1 << SECRET
        for u in coalition:
            if not 1 <= u < self.spec.n_bin:
                raise ParameterError(f"no user at position {u}")
            keep |= 1 << u
        off = ((1 << self.spec.n_bin) - 1) & ~keep
        combo = solve_combination([r & (off | (1 << SECRET)) for r in self.rows], 1 << SECRET)
        if combo is None:
            return None
        c = 0
        for j, r in enumerate(self.rows):
            if (combo >> j) & 1:
                c ^= r
        return c

    def is_qualified(self, coalition: Iterable[int]) -> bool:
        return self.recovery_vector(coalition) is not None

    def reconstruct(self, shares: Mapping[int, int]) -> int:
        c = self.recovery_vector(shares)
        if c is None:
            raise ReconstructionError(f"coalition of {len(shares)} users is not qualified")
        vec = 0
        for u, bit in shares.items():
            if bit:
                vec |= 1 << u
        return parity(c & vec)


def deal_shares(secret: int, rng_seed: int, spec: CodeSpec) -> Shares:
    return MasseyScheme(spec).deal(secret, rng_seed)


def reconstruct(
    shares: Mapping[int, int], structure: Optional[AccessStructure], spec: CodeSpec
) -> int:
    if structure is not None and structure.degenerate:
        raise ReconstructionError("degenerate access structure")
    return MasseyScheme(spec).reconstruct(shares)


def in_dealing_code(word: int, rows: list[int]) -> bool:
    """Orthogonal to every generator row, i.e. a word of the binary dual."""
    return all(parity(word & r) == 0 for r in rows)


@dataclass
class RoundTripReport:
    trials: int
    successes: int
    single_user_failures: int
    single_user_tested: int
    full_set_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.successes == self.trials
            and self.single_user_failures == self.single_user_tested
            and self.full_set_ok
        )

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "successes": self.successes,
            "single_non_dictator_tested": self.single_user_tested,
            "single_non_dictator_refused": self.single_user_failures,
            "full_user_set_ok": self.full_set_ok,
            "ok": self.ok,
        }


def roundtrip_check(
    spec: CodeSpec, structure: AccessStructure, trials: int = 100, seed: int = 0
) -> RoundTripReport:
    """Deal then reconstruct on sampled minimal access sets; refuse single non-dictators."""
    scheme = MasseyScheme(spec)
    rng = random.Random(seed)
    ok = 0
    for t in range(trials):
        secret = rng.getrandbits(1)
        shares = scheme.deal(secret, rng.getrandbits(64))
        coalition = rng.choice(structure.minimal_access_sets)
        try:
            if scheme.reconstruct(shares.restrict(coalition)) == secret:
                ok += 1
        except ReconstructionError:
            pass
    users = [u for u in range(1, spec.n_bin) if u not in structure.dictators]
    refused = sum(1 for u in users if not scheme.is_qualified([u]))
    full_ok = True
    for t in range(4):
        secret = t & 1
        shares = scheme.deal(secret, seed + t)
        full_ok &= scheme.reconstruct(shares.restrict(range(1, spec.n_bin))) == secret
    return RoundTripReport(trials, ok, refused, len(users), full_ok)
