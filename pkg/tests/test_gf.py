import random

import pytest

from coverlab.gf import PRIMITIVE_POLYS, FieldGF2m, clmul_mod, cyclotomic_coset, field_new


@pytest.mark.parametrize("m", sorted(PRIMITIVE_POLYS))
def test_alpha_is_primitive(m):
    f = field_new(m)
    assert f.pow(f.alpha, f.order) == 1
    assert f.element_order(f.alpha) == f.order


def test_small_fields():
    assert field_new(2).poly == 0b111
    f = field_new(4)
    assert f.size == 16
    assert f.pow(f.alpha, 15) == 1


def test_gf256_orders():
    f = field_new(8)
    for a in range(1, 256):
        assert 255 % f.element_order(a) == 0
    assert f.element_order(f.alpha) == 255


def test_m4_table_matches_polynomial_reduction():
    f = field_new(4)
    for a in range(16):
        for b in range(16):
            assert f.mul(a, b) == clmul_mod(a, b, f.poly, 4)


def test_basic_axioms():
    f = field_new(5)
    for a in range(32):
        assert f.mul(a, 0) == 0
        assert f.add(a, a) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("m", [2, 3, 4])
def test_exhaustive_ring_laws(m):
    f = field_new(m)
    q = f.size
    for a in range(q):
        for b in range(q):
            for c in range(q):
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


@pytest.mark.parametrize("m", [8, 12, 16])
def test_random_ring_laws(m):
    f = field_new(m)
    rnd = random.Random(m)
    for _ in range(20_000):
        a, b, c = (rnd.randrange(f.size) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, b) == clmul_mod(a, b, f.poly, m)


def test_describe():
    assert field_new(4).describe() == "GF(2^4) / 0x13"


def test_out_of_range():
    with pytest.raises(ValueError):
        field_new(1)
    with pytest.raises(ValueError):
        field_new(21)


def test_non_primitive_polynomial_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but alpha has order 5
    with pytest.raises(ValueError):
        FieldGF2m(4, 0b11111)


def test_cyclotomic_cosets():
    assert sorted(cyclotomic_coset(1, 15)) == [1, 2, 4, 8]
    assert sorted(cyclotomic_coset(5, 15)) == [5, 10]
