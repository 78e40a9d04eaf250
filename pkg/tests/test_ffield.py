import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import euler_legendre, monic_irreducibles, poly_mulmod
from zetalab.errors import CompositeModulus, DivisionByZero, EvenPrime, SizeExceeded
from zetalab.ffield import (
    build_field,
    enumerate_field,
    field_arith,
    frobenius,
    generator,
    is_irreducible,
    legendre,
    tables,
)
from zetalab.policy import Policy


SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def test_build_field_examples():
    assert build_field(2, 1).modulus == (0, 1)
    assert build_field(2, 2).modulus == (1, 1, 1)
    with pytest.raises(CompositeModulus):
        build_field(4, 1)


def test_build_field_size_policy():
    with pytest.raises(SizeExceeded):
        build_field(2, 21)
    with pytest.raises(SizeExceeded):
        build_field(7, 2, Policy(max_field=40))


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_is_smallest_irreducible(p, n):
    # the oracle sieves out all products, then takes the enumeration-least survivor
    irred = monic_irreducibles(p, n)
    least = min(irred, key=lambda f: tuple(reversed(f)))
    assert build_field(p, n).modulus == least


def test_is_irreducible_matches_sieve():
    for p, d in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
        irred = set(monic_irreducibles(p, d))
        for tail in itertools.product(range(p), repeat=d):
            f = tuple(tail) + (1,)
            assert is_irreducible(f, p) == (f in irred)


def test_field_arith_examples():
    F5 = build_field(5)
    assert field_arith(F5, F5.element(2), F5.element(3), "mul") == F5.element(1)
    F4 = build_field(2, 2)
    x = F4.element([0, 1])
    assert field_arith(F4, x, F4.element([1, 1]), "mul") == F4.one
    F7 = build_field(7)
    assert field_arith(F7, F7.element(3), 6, "pow") == F7.one


def test_division_by_zero():
    F = build_field(3, 2)
    with pytest.raises(DivisionByZero):
        field_arith(F, F.one, F.zero, "div")
    with pytest.raises(DivisionByZero):
        F.zero.inverse()


def test_enumerate_examples():
    assert [e.index for e in enumerate_field(build_field(3))] == [0, 1, 2]
    assert len(list(enumerate_field(build_field(2, 2)))) == 4
    elems = list(enumerate_field(build_field(2, 5)))
    assert len(elems) == 32 and len(set(elems)) == 32


def test_frobenius_examples():
    F4 = build_field(2, 2)
    assert frobenius(F4, F4.element([0, 1])) == F4.element([1, 1])
    F11 = build_field(11)
    for a in enumerate_field(F11):
        assert frobenius(F11, a) == a


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_frobenius_is_automorphism_exhaustive(p, n):
    F = build_field(p, n)
    elems = list(enumerate_field(F))
    for a, b in itertools.product(elems, repeat=2):
        assert frobenius(F, a + b) == frobenius(F, a) + frobenius(F, b)
        assert frobenius(F, a * b) == frobenius(F, a) * frobenius(F, b)
    # fixed points of Frobenius are exactly the prime field
    fixed = [a for a in elems if frobenius(F, a) == a]
    assert len(fixed) == p


@pytest.mark.parametrize("p,n", [(2, 8), (3, 5), (5, 3), (7, 2), (17, 1), (2, 6)])
def test_frobenius_additive_vectorized(p, n):
    # q up to 256 exhaustively, through the table layer
    F = build_field(p, n)
    T = tables(F)
    a, b = np.meshgrid(np.arange(F.q), np.arange(F.q))
    a, b = a.ravel(), b.ravel()
    lhs = T.power(T.add(a, b), p)
    rhs = T.add(T.power(a, p), T.power(b, p))
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("p,n", [(2, 10), (3, 6), (5, 4), (31, 2), (1021, 1)])
def test_fermat_little_theorem(p, n):
    # scalar arithmetic, independent of the log tables
    F = build_field(p, n)
    for a in enumerate_field(F):
        if not a.is_zero():
            assert a ** (F.q - 1) == F.one


def test_generator_examples():
    assert generator(build_field(5)).index == 2
    assert generator(build_field(7)).index == 3
    assert generator(build_field(2)).index == 1


@pytest.mark.parametrize("p,n", SMALL_FIELDS + [(2, 8), (13, 1)])
def test_generator_has_full_order(p, n):
    F = build_field(p, n)
    g = generator(F)
    seen = set()
    x = F.one
    for _ in range(F.q - 1):
        seen.add(x)
        x = x * g
    assert x == F.one and len(seen) == F.q - 1
    # and it is the least such element in enumeration order
    for a in enumerate_field(F):
        if a.index >= g.index:
            break
        if a.is_zero():
            continue
        y, k = a, 1
        while y != F.one:
            y, k = y * a, k + 1
        assert k < F.q - 1


def test_legendre_examples():
    assert legendre(0, 5) == 0
    assert legendre(2, 3) == -1
    assert legendre(2, 7) == 1
    with pytest.raises(EvenPrime):
        legendre(1, 2)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
                               79, 83, 89, 97, 101])
def test_legendre_multiplicative_and_balanced(p):
    vals = [legendre(a, p) for a in range(p)]
    assert vals == [euler_legendre(a, p) for a in range(p)]
    assert sum(vals) == 0
    for a in range(p):
        for b in range(p):
            assert vals[a * b % p] == vals[a] * vals[b]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 4), (3, 3), (5, 2), (7, 2), (2, 7)]), st.data())
def test_tables_agree_with_scalar_arithmetic(pn, data):
    F = build_field(*pn)
    T = tables(F)
    i = data.draw(st.integers(0, F.q - 1))
    j = data.draw(st.integers(0, F.q - 1))
    a, b = F.element(i), F.element(j)
    assert T.add(np.array([i]), np.array([j]))[0] == (a + b).index
    assert T.sub(np.array([i]), np.array([j]))[0] == (a - b).index
    assert T.mul(np.array([i]), np.array([j]))[0] == (a * b).index
    e = data.draw(st.integers(0, 50))
    assert T.power(np.array([i]), e)[0] == (a**e).index


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (11, 1)]), st.data())
def test_inverse_and_distributivity(pn, data):
    F = build_field(*pn)
    a, b, c = (F.element(data.draw(st.integers(0, F.q - 1))) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == F.one
        assert (b / a) * a == b


def test_element_coefficients_match_polynomial_product():
    F = build_field(3, 2)  # modulus x^2 + 1
    assert F.modulus == (1, 0, 1)
    for i, j in itertools.product(range(9), repeat=2):
        a, b = F.element(i), F.element(j)
        prod = poly_mulmod(list(a.coeffs), list(b.coeffs), 3) + [0]
        # reduce x^2 = -1
        expect = [(prod[0] - prod[2]) % 3, prod[1] % 3]
        assert list((a * b).coeffs) == expect
