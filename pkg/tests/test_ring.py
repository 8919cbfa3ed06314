import itertools
import random

import pytest

from tracecodes.errors import NotInvertibleError, ParameterError
from tracecodes.gf2m import FieldParams, make_field
from tracecodes.ring import (
    GRAY,
    LEE,
    Ring,
    base_from_name,
    base_mul,
    enumerate_units,
    frobenius,
    gray,
    lee_weight,
    r_inv,
    r_mul,
    trace_R,
)


@pytest.fixture(scope="module")
def ring3():
    return Ring(make_field(3))


def matrix_mul(f, x, y):
    # alpha + beta u as the 2x2 matrix [[alpha, beta], [0, alpha]]
    return (f.mul(x[0], y[0]), f.mul(x[0], y[1]) ^ f.mul(x[1], y[0]))


def test_base_ring_tables():
    # (a + bu)(c + du) over F_2[u]/(u^2) as polynomials in u
    for r, s in itertools.product(range(4), repeat=2):
        prod = [0, 0, 0]
        for i in range(2):
            for j in range(2):
                prod[i + j] ^= ((r >> i) & 1) & ((s >> j) & 1)
        assert base_mul(r, s) == prod[0] | (prod[1] << 1)
    assert LEE == tuple(sum(gray(r)) for r in range(4))
    assert GRAY[base_from_name("1+u")] == (1, 0)
    assert [lee_weight(base_from_name(n)) for n in ("0", "1", "u", "1+u")] == [0, 1, 2, 1]
    with pytest.raises(ParameterError):
        base_from_name("2u")


def test_ring_axioms_exhaustive_m3(ring3):
    E = list(ring3.elements())
    assert len(E) == 64
    for x, y in itertools.product(E, repeat=2):
        assert ring3.mul(x, y) == ring3.mul(y, x)
        assert ring3.mul(x, y) == matrix_mul(ring3.field, x, y)
    for x, y, z in itertools.product(E, repeat=3):
        assert ring3.mul(x, ring3.mul(y, z)) == ring3.mul(ring3.mul(x, y), z)
        assert ring3.mul(x, ring3.add(y, z)) == ring3.add(ring3.mul(x, y), ring3.mul(x, z))


def test_units_and_inverses(ring3):
    units = ring3.units()
    assert len(units) == 7 * 8
    assert units == sorted(units)
    for x in ring3.elements():
        if ring3.is_unit(x):
            assert ring3.mul(x, ring3.inv(x)) == (1, 0)
        else:
            with pytest.raises(NotInvertibleError):
                ring3.inv(x)


def test_cube(ring3):
    for x in ring3.elements():
        assert ring3.cube(x) == ring3.mul(x, ring3.mul(x, x))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_trace_lands_in_base_ring_and_is_additive(m):
    ring = Ring(make_field(m))
    E = list(ring.elements())
    for x in E:
        assert ring.trace(x) == ring.trace_by_definition(x)
        assert ring.trace(ring.frobenius(x)) == ring.trace(x)
    rng = random.Random(m)
    for _ in range(500):
        x, y = rng.choice(E), rng.choice(E)
        assert ring.trace(ring.add(x, y)) == ring.trace(x) ^ ring.trace(y)
        assert ring.frobenius(ring.mul(x, y)) == ring.mul(ring.frobenius(x), ring.frobenius(y))


def test_trace_is_r_linear(ring3):
    for x in ring3.elements():
        for r in range(4):
            assert ring3.trace(ring3.mul(ring3.embed(r), x)) == base_mul(r, ring3.trace(x))


def test_gray_map_additive_and_isometric():
    for r, s in itertools.product(range(4), repeat=2):
        g = tuple(a ^ b for a, b in zip(gray(r), gray(s)))
        assert gray(r ^ s) == g
        assert lee_weight(r ^ s) == sum(g)


def test_elem_api():
    params = FieldParams.default(3)
    units = enumerate_units(params)
    assert len(units) == 56
    x = units[10]
    assert r_mul(x, r_inv(x)).pair == (1, 0)
    assert frobenius(x).pair == Ring(make_field(3)).frobenius(x.pair)
    assert trace_R(x) in range(4)
    assert x.is_unit() and not x.in_maximal_ideal()
    other = Ring(make_field(3, 0xD)).elem(1, 1)
    with pytest.raises(ParameterError):
        x + other
