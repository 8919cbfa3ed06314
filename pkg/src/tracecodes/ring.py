"""The chain ring R_m = GF(2^m) + u GF(2^m) with u^2 = 0.

Base-ring values (m = 1, the four-element ring R = F_2 + uF_2) are encoded
as ints 0..3 with bit 0 the constant part and bit 1 the u part, so
0 -> 0, 1 -> 1, 2 -> u, 3 -> 1+u.  Addition in R is then plain XOR.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInvertibleError, ParameterError
from .gf2m import FieldElem, FieldParams, GF2m, field_for

ZERO, ONE, U, ONE_PLUS_U = 0, 1, 2, 3
BASE_RING = (ZERO, ONE, U, ONE_PLUS_U)
BASE_NAMES = ("0", "1", "u", "1+u")
LEE = (0, 1, 2, 1)
GRAY = ((0, 0), (0, 1), (1, 1), (1, 0))


def base_name(r: int) -> str:
    return BASE_NAMES[r]


def base_from_name(name: str) -> int:
    try:
        return BASE_NAMES.index(name.replace(" ", ""))
    except ValueError:
        raise ParameterError(f"not a base-ring element: {name!r}") from None


def base_mul(r: int, s: int) -> int:
    """Product in R: (a + bu)(c + du) = ac + (ad + bc)u."""
    a, b = r & 1, r >> 1
    c, d = s & 1, s >> 1
    return (a & c) | (((a & d) ^ (b & c)) << 1)


def gray(r: int) -> tuple[int, int]:
    """Phi(a + bu) = (b, a + b)."""
    return GRAY[r]


def lee_weight(r: int) -> int:
    return LEE[r]


class Ring:
    """R_m over int pairs (alpha, beta) meaning alpha + beta*u."""

    def __init__(self, field: GF2m):
        self.field = field
        self.m = field.m

    @classmethod
    def from_params(cls, params: FieldParams) -> "Ring":
        return cls(field_for(params))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.field == self.field

    def __hash__(self) -> int:
        return hash(self.field)

    def __repr__(self) -> str:
        return f"Ring(m={self.m}, poly={self.field.poly:#x})"

    def elements(self):
        q = self.field.order
        for a in range(q):
            for b in range(q):
                yield (a, b)

    def add(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        return (x[0] ^ y[0], x[1] ^ y[1])

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        f = self.field
        return (f.mul(x[0], y[0]), f.mul(x[0], y[1]) ^ f.mul(x[1], y[0]))

    def cube(self, x: tuple[int, int]) -> tuple[int, int]:
        # (x0 + x1 u)^3 = x0^3 + x0^2 x1 u
        f = self.field
        sq = f.mul(x[0], x[0])
        return (f.mul(sq, x[0]), f.mul(sq, x[1]))

    def inv(self, x: tuple[int, int]) -> tuple[int, int]:
        a, b = x
        if a == 0:
            raise NotInvertibleError("elements of the maximal ideal (u) are not invertible")
        f = self.field
        ai = f.inv(a)
        return (ai, f.mul(f.mul(ai, ai), b))

    def is_unit(self, x: tuple[int, int]) -> bool:
        return x[0] != 0

    def frobenius(self, x: tuple[int, int]) -> tuple[int, int]:
        f = self.field
        return (f.mul(x[0], x[0]), f.mul(x[1], x[1]))

    def trace(self, x: tuple[int, int]) -> int:
        """Tr(a + bu) = tr(a) + tr(b)u, as a base-ring int."""
        f = self.field
        return f.tr(x[0]) | (f.tr(x[1]) << 1)

    def trace_by_definition(self, x: tuple[int, int]) -> int:
        acc = (0, 0)
        y = x
        for _ in range(self.m):
            acc = self.add(acc, y)
            y = self.frobenius(y)
        if acc[0] > 1 or acc[1] > 1:
            raise ArithmeticError(f"trace left the base ring: {acc}")
        return acc[0] | (acc[1] << 1)

    def embed(self, r: int) -> tuple[int, int]:
        """Base-ring value r as an element of R_m."""
        return (r & 1, r >> 1)

    def units(self) -> list[tuple[int, int]]:
        """R_m^* ordered lexicographically by (x0, x1); the coordinate order of C_m."""
        q = self.field.order
        return [(x0, x1) for x0 in range(1, q) for x1 in range(q)]

    def elem(self, alpha: int, beta: int = 0) -> "RingElem":
        return RingElem(FieldElem(alpha, self.field), FieldElem(beta, self.field))


@dataclass(frozen=True)
class RingElem:
    """alpha + beta*u in R_m."""

    alpha: FieldElem
    beta: FieldElem

    def __post_init__(self) -> None:
        if self.alpha.field.params != self.beta.field.params:
            raise ParameterError("alpha and beta belong to different fields")

    @property
    def ring(self) -> Ring:
        return Ring(self.alpha.field)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.alpha.bits, self.beta.bits)

    def _wrap(self, pair: tuple[int, int]) -> "RingElem":
        f = self.alpha.field
        return RingElem(FieldElem(pair[0], f), FieldElem(pair[1], f))

    def _check(self, other: "RingElem") -> None:
        if not isinstance(other, RingElem) or other.alpha.field.params != self.alpha.field.params:
            raise ParameterError("operands belong to different rings")

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ring.add(self.pair, other.pair))

    __sub__ = __add__

    def __mul__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        return self._wrap(self.ring.mul(self.pair, other.pair))

    def is_unit(self) -> bool:
        return self.alpha.bits != 0

    def in_maximal_ideal(self) -> bool:
        return self.alpha.bits == 0

    def __bool__(self) -> bool:
        return bool(self.alpha.bits or self.beta.bits)

    def __repr__(self) -> str:
        return f"RingElem({self.alpha.bits} + {self.beta.bits}u)"


def r_add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def r_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def r_inv(x: RingElem) -> RingElem:
    return x._wrap(x.ring.inv(x.pair))


def frobenius(x: RingElem) -> RingElem:
    return x._wrap(x.ring.frobenius(x.pair))


def trace_R(x: RingElem) -> int:
    return x.ring.trace(x.pair)


def enumerate_units(params: FieldParams) -> list[RingElem]:
    ring = Ring.from_params(params)
    return [ring.elem(a, b) for a, b in ring.units()]
