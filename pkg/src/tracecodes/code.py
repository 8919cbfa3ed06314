"""The trace code C_m = {(Tr(ax + bx^3))_{x in R_m^*} : a, b in R_m}.

Codewords are tuples of base-ring ints (see :mod:`tracecodes.ring`) indexed
by the unit order of :meth:`Ring.units`.  Gray images are Python ints: bit i
(i < n) holds the u-part of coordinate i and bit n + i holds the sum of its
two parts.

Every (a, b) pair has a combination index in ``range(2**(4m))`` whose bit
fields are a.alpha | a.beta << m | b.alpha << 2m | b.beta << 3m.  Because Ev
and the Gray map are additive, the Gray image of that pair is the XOR of the
generator rows selected by the index bits.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import FeasibilityError, ParameterError, UnsupportedParameterError
from .gf2m import FieldElem, FieldParams, GF2m, field_for
from .ring import LEE, Ring, RingElem

MAX_ENUM_BITS = 40
MAX_TABLE_BITS = 24
_CHUNK = 1 << 16

Pair = tuple[int, int]


@dataclass(frozen=True)
class CodeSpec:
    params: FieldParams

    @classmethod
    def from_m(cls, m: int, poly: Optional[int] = None) -> "CodeSpec":
        return cls(FieldParams.default(m, poly))

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return ((1 << self.m) - 1) << self.m

    @property
    def n_bin(self) -> int:
        return 2 * self.n

    @property
    def k_bin(self) -> int:
        return 4 * self.m

    @property
    def field(self) -> GF2m:
        return field_for(self.params)

    @property
    def ring(self) -> Ring:
        return Ring(self.field)

    @cached_property
    def units(self) -> list[Pair]:
        return self.ring.units()

    @cached_property
    def unit_index(self) -> dict[Pair, int]:
        return {x: i for i, x in enumerate(self.units)}

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "reduction_poly": self.params.reduction_poly,
            "n": self.n,
            "n_bin": self.n_bin,
            "k_bin": self.k_bin,
            "units": self.n,
        }


@dataclass(frozen=True)
class GrayWord:
    bits: int
    length: int

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        b = self.bits
        out = []
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def __xor__(self, other: "GrayWord") -> "GrayWord":
        if other.length != self.length:
            raise ParameterError("Gray words of different lengths")
        return GrayWord(self.bits ^ other.bits, self.length)

    def hex(self) -> str:
        return format(self.bits, f"0{(self.length + 3) // 4}x")


@dataclass
class WeightDistribution:
    """Exact weight -> count map (zero weight included)."""

    counts: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_weights(cls, weights: Iterable[int]) -> "WeightDistribution":
        counts: dict[int, int] = {}
        for w in weights:
            counts[int(w)] = counts.get(int(w), 0) + 1
        return cls(counts)

    @classmethod
    def from_histogram(cls, hist: np.ndarray) -> "WeightDistribution":
        return cls({int(w): int(c) for w, c in enumerate(hist) if c})

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> list[int]:
        """Nonzero weights that occur, ascending."""
        return sorted(w for w, c in self.counts.items() if w and c)

    def min_distance(self) -> int:
        return self.support()[0]

    def max_weight(self) -> int:
        return self.support()[-1]

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        strip = lambda d: {w: c for w, c in d.items() if c}
        return strip(self.counts) == strip(other.counts)

    def merge(self, other: "WeightDistribution") -> "WeightDistribution":
        out = dict(self.counts)
        for w, c in other.counts.items():
            out[w] = out.get(w, 0) + c
        return WeightDistribution(out)

    def to_json(self) -> dict[str, str]:
        return {str(w): str(self.counts[w]) for w in sorted(self.counts) if self.counts[w]}

    @classmethod
    def from_json(cls, d: dict) -> "WeightDistribution":
        return cls({int(w): int(c) for w, c in d.items()})


# --- evaluation -------------------------------------------------------------

def ev_pairs(spec: CodeSpec, a: Pair, b: Pair) -> tuple[int, ...]:
    """Ev(a, b) for int-pair ring elements."""
    ring = spec.ring
    out = []
    for x in spec.units:
        v = ring.add(ring.mul(a, x), ring.mul(b, ring.cube(x)))
        out.append(ring.trace(v))
    return tuple(out)


def _spec_of(x: RingElem) -> CodeSpec:
    return CodeSpec(x.alpha.field.params)


def ev(a: RingElem, b: RingElem) -> tuple[int, ...]:
    """Codeword Ev(a, b) = (Tr(ax + bx^3))_{x in R_m^*}."""
    if a.alpha.field.params != b.alpha.field.params:
        raise ParameterError("a and b belong to different rings")
    return ev_pairs(_spec_of(a), a.pair, b.pair)


def lee_weight_of(word: Iterable[int]) -> int:
    return sum(LEE[c] for c in word)


def gray_bits(word: tuple[int, ...]) -> int:
    n = len(word)
    lo = 0
    hi = 0
    for i, c in enumerate(word):
        beta = c >> 1
        if beta:
            lo |= 1 << i
        if beta ^ (c & 1):
            hi |= 1 << i
    return lo | (hi << n)


def gray_image(word: tuple[int, ...]) -> GrayWord:
    return GrayWord(gray_bits(word), 2 * len(word))


def from_gray_bits(bits: int, n: int) -> tuple[int, ...]:
    """Inverse Gray map: (b, a+b) -> a + bu."""
    out = []
    for i in range(n):
        beta = (bits >> i) & 1
        s = (bits >> (n + i)) & 1
        out.append((beta ^ s) | (beta << 1))
    return tuple(out)


# --- generator rows and combination indices ----------------------------------

def index_to_pairs(idx: int, m: int) -> tuple[Pair, Pair]:
    mask = (1 << m) - 1
    return (idx & mask, (idx >> m) & mask), ((idx >> 2 * m) & mask, (idx >> 3 * m) & mask)


def pairs_to_index(a: Pair, b: Pair, m: int) -> int:
    return a[0] | (a[1] << m) | (b[0] << 2 * m) | (b[1] << 3 * m)


def generator_row_bits(spec: CodeSpec) -> list[int]:
    """Gray images of Ev(g, 0) then Ev(0, g), g over {x^j} then {x^j u}, as ints."""
    m = spec.m
    rows = []
    for j in range(4 * m):
        a, b = index_to_pairs(1 << j, m)
        rows.append(gray_bits(ev_pairs(spec, a, b)))
    return rows


def generator_rows(spec: CodeSpec) -> list[GrayWord]:
    return [GrayWord(r, spec.n_bin) for r in generator_row_bits(spec)]


def gray_of_index(rows: list[int], idx: int) -> int:
    acc = 0
    j = 0
    while idx:
        if idx & 1:
            acc ^= rows[j]
        idx >>= 1
        j += 1
    return acc


# --- enumeration kernel -------------------------------------------------------

def _gray_chunk(rows: list[int], start: int, stop: int) -> np.ndarray:
    """Weights of combinations gray(t) = t ^ (t >> 1) for t in [start, stop).

    Consecutive Gray codes differ in bit ctz(t), so each step is one row XOR.
    """
    acc = gray_of_index(rows, start ^ (start >> 1))
    out = [acc.bit_count()]
    push = out.append
    for t in range(start + 1, stop):
        acc ^= rows[(t & -t).bit_length() - 1]
        push(acc.bit_count())
    return np.array(out, dtype=np.uint32)


def _chunk_histogram(rows: list[int], start: int, stop: int, n_bin: int) -> np.ndarray:
    return np.bincount(_gray_chunk(rows, start, stop), minlength=n_bin + 1)


def _ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def _check_enum(spec: CodeSpec, limit: int) -> None:
    if spec.k_bin > limit:
        raise FeasibilityError(
            f"enumerating 2^{spec.k_bin} codewords exceeds the 2^{limit} guard (m={spec.m})"
        )


def enumerate_weights(spec: CodeSpec, workers: int = 1) -> WeightDistribution:
    """Exact Hamming weight distribution of the Gray image.

    Gray-code ordered XOR accumulation over all 2^(4m) combinations of the
    generator rows; the index range is split into contiguous chunks whose
    local histograms are summed.
    """
    _check_enum(spec, MAX_ENUM_BITS)
    rows = generator_row_bits(spec)
    total = 1 << spec.k_bin
    hist = np.zeros(spec.n_bin + 1, dtype=object)
    ranges = _ranges(total, _CHUNK)
    if workers <= 1:
        parts = (_chunk_histogram(rows, s, e, spec.n_bin) for s, e in ranges)
        for h in parts:
            hist += h.astype(object)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(_chunk_histogram, rows, s, e, spec.n_bin) for s, e in ranges]
            for f in futs:
                hist += f.result().astype(object)
    return WeightDistribution.from_histogram(hist)


def weight_table(spec: CodeSpec, workers: int = 1) -> np.ndarray:
    """Gray-image weight of every combination index, shape (2^(4m),)."""
    _check_enum(spec, MAX_TABLE_BITS)
    rows = generator_row_bits(spec)
    total = 1 << spec.k_bin
    ranges = _ranges(total, _CHUNK)
    if workers <= 1:
        parts = [_gray_chunk(rows, s, e) for s, e in ranges]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_gray_chunk, [rows] * len(ranges), *zip(*ranges)))
    by_step = np.concatenate(parts)
    t = np.arange(total, dtype=np.int64)
    table = np.empty(total, dtype=np.uint32)
    table[t ^ (t >> 1)] = by_step
    return table


def direct_weights(spec: CodeSpec) -> np.ndarray:
    """Lee weight of Ev(a, b) by direct evaluation, for every combination index."""
    _check_enum(spec, 16)
    m = spec.m
    out = np.empty(1 << spec.k_bin, dtype=np.uint32)
    for idx in range(1 << spec.k_bin):
        a, b = index_to_pairs(idx, m)
        out[idx] = lee_weight_of(ev_pairs(spec, a, b))
    return out


# --- case tree over (a, b) ------------------------------------------------------

class CaseLabel(str, enum.Enum):
    I = "I"
    II1 = "II1"
    II2 = "II2"
    III1 = "III1"
    III2 = "III2"
    IV1 = "IV1"
    IV2 = "IV2"
    IV3 = "IV3"
    IV4 = "IV4"


# membership class: 0 -> zero, 1 -> M \ {0}, 2 -> unit
_LABELS = {
    (0, 0): CaseLabel.I,
    (1, 0): CaseLabel.II1,
    (2, 0): CaseLabel.II2,
    (0, 1): CaseLabel.III1,
    (0, 2): CaseLabel.III2,
    (1, 1): CaseLabel.IV1,
    (1, 2): CaseLabel.IV2,
    (2, 1): CaseLabel.IV3,
    (2, 2): CaseLabel.IV4,
}
_LABEL_ORDER = list(CaseLabel)


def _membership(x: Pair) -> int:
    if x[0]:
        return 2
    return 1 if x[1] else 0


def classify_pairs(a: Pair, b: Pair) -> CaseLabel:
    return _LABELS[(_membership(a), _membership(b))]


def classify(a: RingElem, b: RingElem) -> CaseLabel:
    return classify_pairs(a.pair, b.pair)


def _require_odd(m: int) -> None:
    if m % 2 == 0:
        raise UnsupportedParameterError(f"hypothesis not met: m must be odd, got m={m}")


def predicted_weights(label: CaseLabel, m: int) -> frozenset[int]:
    _require_odd(m)
    q2 = 1 << (2 * m)
    units = ((1 << m) - 1) << m
    shift = 1 << ((3 * m + 1) // 2)
    label = CaseLabel(label)
    if label is CaseLabel.I:
        return frozenset({0})
    if label in (CaseLabel.II1, CaseLabel.III1):
        return frozenset({q2})
    if label in (CaseLabel.II2, CaseLabel.III2, CaseLabel.IV2, CaseLabel.IV3):
        return frozenset({units})
    if label is CaseLabel.IV1:
        return frozenset({q2, q2 - shift, q2 + shift})
    return frozenset({(1 << m) * ((1 << m) - 2), q2})


def five_weights(m: int) -> list[int]:
    """The five nonzero weights w1 < ... < w5 for odd m."""
    _require_odd(m)
    q2 = 1 << (2 * m)
    shift = 1 << ((3 * m + 1) // 2)
    return [q2 - shift, (1 << m) * ((1 << m) - 2), ((1 << m) - 1) << m, q2, q2 + shift]


# --- character sums -------------------------------------------------------------

def _sign(bit: int) -> int:
    return -1 if bit else 1


def charsum_A_int(f: GF2m, beta1: int, beta2: int) -> int:
    """sum over all x0 of (-1)^tr(beta1 x0 + beta2 x0^3)."""
    total = 0
    for x in f.elements():
        x3 = f.mul(f.mul(x, x), x)
        total += _sign(f.tr(f.mul(beta1, x) ^ f.mul(beta2, x3)))
    return total


def charsum_A(beta1: FieldElem, beta2: FieldElem) -> int:
    if beta1.field.params != beta2.field.params:
        raise ParameterError("operands belong to different fields")
    return charsum_A_int(beta1.field, beta1.bits, beta2.bits)


def charsum_A_table(f: GF2m) -> np.ndarray:
    q = f.order
    table = np.empty((q, q), dtype=np.int64)
    cubes = [f.mul(f.mul(x, x), x) for x in f.elements()]
    for b1 in range(q):
        lin = [f.tr(f.mul(b1, x)) for x in f.elements()]
        for b2 in range(q):
            table[b1, b2] = sum(_sign(lin[x] ^ f.tr(f.mul(b2, cubes[x]))) for x in range(q))
    return table


def charsum_B_int(f: GF2m, a1: int, b1: int, a2: int, b2: int, phased: bool = False) -> int:
    """The double sum B for a, b both units.

    With ``phased`` the extra factor (-1)^tr(a1 x0 + a2 x0^3) is included,
    giving the second inner sum of that computation.
    """
    if a1 == 0 or a2 == 0:
        raise ParameterError("charsum_B needs alpha1, alpha2 != 0")
    total = 0
    for x0 in range(1, f.order):
        x0sq = f.mul(x0, x0)
        x0cube = f.mul(x0sq, x0)
        outer = f.tr(f.mul(b1, x0) ^ f.mul(b2, x0cube))
        if phased:
            outer ^= f.tr(f.mul(a1, x0) ^ f.mul(a2, x0cube))
        coeff = a1 ^ f.mul(a2, x0sq)
        inner = sum(_sign(f.tr(f.mul(coeff, x1))) for x1 in f.elements())
        total += _sign(outer) * inner
    return total


def charsum_B(alpha1: FieldElem, beta1: FieldElem, alpha2: FieldElem, beta2: FieldElem) -> int:
    f = alpha1.field
    for e in (beta1, alpha2, beta2):
        if e.field.params != f.params:
            raise ParameterError("operands belong to different fields")
    return charsum_B_int(f, alpha1.bits, beta1.bits, alpha2.bits, beta2.bits)


def charsum_B_sign_point(f: GF2m, a1: int, b1: int, a2: int, b2: int) -> int:
    """(-1)^tr(b1 x0 + b2 x0^3) at the unique x0 = sqrt(a1/a2) killing the inner sum."""
    x0 = f.sqrt(f.div(a1, a2))
    x0cube = f.mul(f.mul(x0, x0), x0)
    return _sign(f.tr(f.mul(b1, x0) ^ f.mul(b2, x0cube)))


# --- case-tree verification -----------------------------------------------------------

@dataclass
class CaseTreeReport:
    m: int
    pairs_checked: int
    violations: list[dict]
    violation_count: int
    iv1_closed_form_mismatches: int
    weights_by_label: dict[str, dict[int, int]]
    iv1_split: dict[int, int]
    iv1_by_charsum: dict[int, int]

    @property
    def ok(self) -> bool:
        return self.violation_count == 0 and self.iv1_closed_form_mismatches == 0

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "pairs_checked": str(self.pairs_checked),
            "violation_count": str(self.violation_count),
            "violations": self.violations,
            "iv1_closed_form": "w = 2^(2m) - 2^m * A(beta1, beta2) for a = beta1 u, b = beta2 u",
            "iv1_closed_form_mismatches": str(self.iv1_closed_form_mismatches),
            "weights_by_label": {
                k: {str(w): str(c) for w, c in sorted(v.items())}
                for k, v in self.weights_by_label.items()
            },
            "iv1_split": {str(w): str(c) for w, c in sorted(self.iv1_split.items())},
            "iv1_by_charsum": {str(a): str(c) for a, c in sorted(self.iv1_by_charsum.items())},
            "ok": self.ok,
        }


def label_array(m: int) -> np.ndarray:
    """CaseLabel position (index into list(CaseLabel)) for every combination index."""
    idx = np.arange(1 << (4 * m), dtype=np.int64)
    mask = (1 << m) - 1
    a0, a1 = idx & mask, (idx >> m) & mask
    b0, b1 = (idx >> 2 * m) & mask, (idx >> 3 * m) & mask
    ca = np.where(a0 != 0, 2, np.where(a1 != 0, 1, 0))
    cb = np.where(b0 != 0, 2, np.where(b1 != 0, 1, 0))
    lut = np.empty((3, 3), dtype=np.int64)
    for (x, y), lab in _LABELS.items():
        lut[x, y] = _LABEL_ORDER.index(lab)
    return lut[ca, cb]


def verify_theorem_4_3(
    spec: CodeSpec,
    workers: int = 1,
    table: Optional[np.ndarray] = None,
    max_listed: int = 20,
) -> CaseTreeReport:
    """Check every (a, b) against the predicted weights of its case label."""
    m = spec.m
    _require_odd(m)
    if table is None:
        table = weight_table(spec, workers)
    labels = label_array(m)
    w = table.astype(np.int64)
    bad = np.zeros(len(w), dtype=bool)
    weights_by_label: dict[str, dict[int, int]] = {}
    for pos, lab in enumerate(_LABEL_ORDER):
        sel = labels == pos
        allowed = np.array(sorted(predicted_weights(lab, m)), dtype=np.int64)
        bad |= sel & ~np.isin(w, allowed)
        vals, cnts = np.unique(w[sel], return_counts=True)
        weights_by_label[lab.value] = {int(v): int(c) for v, c in zip(vals, cnts)}

    # IV1: a = beta1 u, b = beta2 u
    mask = (1 << m) - 1
    iv1 = np.nonzero(labels == _LABEL_ORDER.index(CaseLabel.IV1))[0]
    beta1 = (iv1 >> m) & mask
    beta2 = (iv1 >> 3 * m) & mask
    A = charsum_A_table(spec.field)[beta1, beta2]
    closed = (1 << 2 * m) - (1 << m) * A
    mismatches = int(np.count_nonzero(closed != w[iv1]))
    split_vals, split_cnts = np.unique(w[iv1], return_counts=True)
    a_vals, a_cnts = np.unique(A, return_counts=True)

    bad_idx = np.nonzero(bad)[0]
    listed = []
    for idx in bad_idx[:max_listed]:
        a, b = index_to_pairs(int(idx), m)
        lab = _LABEL_ORDER[labels[idx]]
        listed.append({"a": list(a), "b": list(b), "label": lab.value, "weight": int(w[idx])})
    return CaseTreeReport(
        m=m,
        pairs_checked=len(w),
        violations=listed,
        violation_count=len(bad_idx),
        iv1_closed_form_mismatches=mismatches,
        weights_by_label=weights_by_label,
        iv1_split={int(v): int(c) for v, c in zip(split_vals, split_cnts)},
        iv1_by_charsum={int(v): int(c) for v, c in zip(a_vals, a_cnts)},
    )


# --- coordinate symmetry ---------------------------------------------------------

def translation_permutation(spec: CodeSpec, g: Pair) -> list[int]:
    """perm[i] = index of g * units[i]; the coordinate map x -> g x."""
    ring = spec.ring
    if not ring.is_unit(g):
        raise ParameterError("translation by a non-unit")
    idx = spec.unit_index
    return [idx[ring.mul(g, x)] for x in spec.units]


def regular_permutation(spec: CodeSpec, v: Pair, w: Pair) -> list[int]:
    """The translation x -> (w / v) x, which sends coordinate v to coordinate w."""
    ring = spec.ring
    return translation_permutation(spec, ring.mul(w, ring.inv(v)))


@dataclass
class PermutationReport:
    trials: list[dict]

    @property
    def ok(self) -> bool:
        return all(t["equal"] for t in self.trials)

    def to_json(self) -> dict:
        return {"trials": len(self.trials), "passed": sum(t["equal"] for t in self.trials), "ok": self.ok}


def permutation_invariance_check(spec: CodeSpec, trials: int, seed: int = 0) -> PermutationReport:
    """ev(a, b) read through x -> g x equals ev(a g, b g^3), for random units g."""
    rng = random.Random(seed)
    ring = spec.ring
    q = spec.field.order
    out = []
    for _ in range(trials):
        g = (rng.randrange(1, q), rng.randrange(q))
        a = (rng.randrange(q), rng.randrange(q))
        b = (rng.randrange(q), rng.randrange(q))
        perm = translation_permutation(spec, g)
        word = ev_pairs(spec, a, b)
        moved = tuple(word[perm[i]] for i in range(spec.n))
        ga = ring.mul(a, g)
        gb = ring.mul(b, ring.cube(g))
        out.append({"g": g, "a": a, "b": b, "equal": moved == ev_pairs(spec, ga, gb)})
    return PermutationReport(out)
