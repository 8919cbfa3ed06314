"""Arithmetic in GF(2^m), polynomial basis.

Elements are plain ints at the kernel level: bit i is the coefficient of x^i.
:class:`FieldElem` wraps an int together with its :class:`FieldParams` for
checked, operator-style use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotInvertibleError, ParameterError, UnsupportedParameterError

M_MIN = 2
M_MAX = 20

# Lexicographically smallest irreducible polynomial of each degree.
DEFAULT_POLYS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
    17: 0x20009,
    18: 0x40009,
    19: 0x80027,
    20: 0x100009,
}


def poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b, both GF(2)[x] polynomials as bitmasks."""
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    m = poly.bit_length() - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for q in range(1 << d, 1 << (d + 1)):
            if poly_mod(poly, q) == 0:
                return False
    return True


def clmul(a: int, b: int) -> int:
    """Carryless product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


@dataclass(frozen=True)
class FieldParams:
    m: int
    reduction_poly: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not (M_MIN <= self.m <= M_MAX):
            raise ParameterError(f"m must be an integer in [{M_MIN}, {M_MAX}], got {self.m!r}")
        if self.reduction_poly.bit_length() - 1 != self.m:
            raise ParameterError(
                f"reduction polynomial {self.reduction_poly:#x} does not have degree {self.m}"
            )
        if not is_irreducible(self.reduction_poly):
            raise ParameterError(f"reduction polynomial {self.reduction_poly:#x} is reducible")

    @classmethod
    def default(cls, m: int, poly: int | None = None) -> "FieldParams":
        if poly is None:
            if m not in DEFAULT_POLYS:
                raise ParameterError(f"m must be an integer in [{M_MIN}, {M_MAX}], got {m!r}")
            poly = DEFAULT_POLYS[m]
        return cls(m, poly)

    @property
    def order(self) -> int:
        return 1 << self.m


class GF2m:
    """The field GF(2^m) over int-encoded elements.

    All methods take and return ints in ``range(2**m)``; nothing here checks
    membership, so callers holding foreign ints get garbage, not errors.
    """

    def __init__(self, params: FieldParams):
        self.params = params
        self.m = params.m
        self.poly = params.reduction_poly
        self.order = 1 << self.m
        self.mask = self.order - 1
        self.trace_mask = self._compute_trace_mask()
        self._cube_exp = None
        if self.m % 2 == 1:
            # 3e = 1 mod 2^m - 1; exists because gcd(3, 2^m - 1) = 1 for odd m
            self._cube_exp = pow(3, -1, self.order - 1)

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, poly={self.poly:#x})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2m) and other.params == self.params

    def __hash__(self) -> int:
        return hash(self.params)

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        r = 0
        top = self.order
        poly = self.poly
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= poly
        return r

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ParameterError("exponent must be nonnegative")
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotInvertibleError("zero has no multiplicative inverse in GF(2^m)")
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        return self.pow(a, self.order >> 1)

    def cuberoot(self, a: int) -> int:
        if self._cube_exp is None:
            raise UnsupportedParameterError(
                f"cube roots are not unique in GF(2^{self.m}) for even m"
            )
        if a == 0:
            return 0
        return self.pow(a, self._cube_exp)

    def trace_by_definition(self, a: int) -> int:
        """sum_{j<m} a^(2^j), which always lands in {0, 1}."""
        acc = 0
        x = a
        for _ in range(self.m):
            acc ^= x
            x = self.mul(x, x)
        if acc not in (0, 1):
            raise ArithmeticError(f"trace left the prime field: {acc}")
        return acc

    def tr(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    def _compute_trace_mask(self) -> int:
        # tr is GF(2)-linear, so it is a parity against tr(x^i) per basis bit
        mask = 0
        for i in range(self.m):
            if self.trace_by_definition(1 << i):
                mask |= 1 << i
        return mask

    def elem(self, bits: int) -> "FieldElem":
        return FieldElem(bits, self)


@lru_cache(maxsize=None)
def field_for(params: FieldParams) -> GF2m:
    return GF2m(params)


def make_field(m: int, poly: int | None = None) -> GF2m:
    return field_for(FieldParams.default(m, poly))


@dataclass(frozen=True)
class FieldElem:
    """An element of GF(2^m) bound to its field."""

    bits: int
    field: GF2m

    def __post_init__(self) -> None:
        if not (0 <= self.bits < self.field.order):
            raise ParameterError(f"{self.bits} is not an element of GF(2^{self.field.m})")

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem) or other.field.params != self.field.params:
            raise ParameterError("operands belong to different fields")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.bits ^ other.bits, self.field)

    __sub__ = __add__

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field.mul(self.bits, other.bits), self.field)

    def __pow__(self, e: int) -> "FieldElem":
        return FieldElem(self.field.pow(self.bits, e), self.field)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.field.div(self.bits, other.bits), self.field)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __int__(self) -> int:
        return self.bits

    def __lt__(self, other: "FieldElem") -> bool:
        self._check(other)
        return self.bits < other.bits

    def __repr__(self) -> str:
        return f"FieldElem({self.bits:#0{self.field.m + 2}b})"


# Function-style API over FieldElem.

def fe_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def fe_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def fe_pow(a: FieldElem, e: int) -> FieldElem:
    return a ** e


def fe_inv(a: FieldElem) -> FieldElem:
    return FieldElem(a.field.inv(a.bits), a.field)


def fe_sqrt(a: FieldElem) -> FieldElem:
    return FieldElem(a.field.sqrt(a.bits), a.field)


def fe_cuberoot(a: FieldElem) -> FieldElem:
    return FieldElem(a.field.cuberoot(a.bits), a.field)


def tr(a: FieldElem) -> int:
    return a.field.tr(a.bits)
