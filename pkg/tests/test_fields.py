from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isogeny_lab.errors import FieldMismatchError
from isogeny_lab.fields import (
    ExtensionField,
    Polynomial,
    PrimeField,
    QQ,
    find_irreducible,
    is_prime,
    poly_roots,
    rational_roots,
    rational_sqrt,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def test_inverse_in_f7():
    F7 = PrimeField(7)
    assert (F7.element(3).inverse()).rep == 5
    assert (F7.element(3) * F7.element(5)).rep == 1


def test_additive_inverse():
    F = PrimeField(11)
    x = F.element(4)
    assert (x + (11 - 1) * x).is_zero()


def test_extension_multiplication_reduces_by_modulus():
    F25 = ExtensionField(5, 2)
    assert F25.modulus == (2, 0, 1)  # t^2 + 2, the lexicographically first
    t = F25.gen()
    assert (t * t) == F25.element(3)  # t^2 = -2 = 3


def test_mixed_field_operands_rejected():
    a = PrimeField(5).element(1)
    b = PrimeField(7).element(1)
    with pytest.raises(FieldMismatchError):
        a + b


def test_division_by_zero():
    F = PrimeField(5)
    with pytest.raises(ZeroDivisionError):
        F.element(1) / F.element(0)


@given(st.sampled_from(SMALL_PRIMES), st.data())
@settings(max_examples=60, deadline=None)
def test_field_axioms_prime(p, data):
    F = PrimeField(p)
    a = F.element(data.draw(st.integers(0, p - 1)))
    b = F.element(data.draw(st.integers(0, p - 1)))
    c = F.element(data.draw(st.integers(0, p - 1)))
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert (a * a.inverse()) == F.one()
        assert a ** (p - 1) == F.one()


@given(st.sampled_from([(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]), st.data())
@settings(max_examples=40, deadline=None)
def test_field_axioms_extension(pk, data):
    p, k = pk
    F = ExtensionField(p, k)
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=k, max_size=k))
    a = F.element(coeffs)
    if a.is_zero():
        return
    assert a * a.inverse() == F.one()
    assert a ** (p**k - 1) == F.one()


def test_poly_roots_examples():
    F5 = PrimeField(5)
    f = Polynomial(F5, [1, 0, 1])  # x^2 + 1
    assert {r.rep for r in poly_roots(f)} == {2, 3}
    g = Polynomial(F5, [2, 0, 1])  # x^2 + 2
    # oracle: 3 = -2 is a non-square mod 5 (exhaustive check)
    squares = {(y * y) % 5 for y in range(5)}
    assert 3 not in squares
    assert poly_roots(g) == set()
    h = Polynomial(F5, [0, -1, 0, 1])  # x^3 - x
    assert {r.rep for r in poly_roots(h)} == {0, 1, 4}


@given(st.sampled_from([5, 7, 11]), st.data())
@settings(max_examples=40, deadline=None)
def test_poly_roots_are_exact(p, data):
    F = PrimeField(p)
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=6))
    f = Polynomial(F, coeffs)
    if f.is_zero():
        return
    roots = poly_roots(f)
    assert len(roots) <= max(f.degree, 0)
    zero = F.zero()
    for x in F.iter_elements():
        assert (f(x) == zero) == (x in roots)


def test_find_irreducible_examples():
    assert find_irreducible(5, 1).int_coeffs() == [0, 1]  # x
    assert find_irreducible(5, 2).int_coeffs() == [2, 0, 1]  # x^2 + 2
    # oracle for (7, 2): lexicographic scan with exhaustive root check
    found = None
    for a1 in range(7):
        for a0 in range(7):
            if all((x * x + a1 * x + a0) % 7 for x in range(7)):
                found = [a0, a1, 1]
                break
        if found:
            break
    assert find_irreducible(7, 2).int_coeffs() == found


@given(st.sampled_from([(2, 3), (3, 2), (5, 2), (7, 2), (2, 4)]))
@settings(max_examples=20, deadline=None)
def test_find_irreducible_is_irreducible(pk):
    p, k = pk
    f = find_irreducible(p, k)
    assert f.degree == k
    assert f.leading() == PrimeField(p).one()
    # independent factor-free test: f | x^(p^k) - x, gcd(f, x^(p^j) - x) = 1
    F = PrimeField(p)
    x = Polynomial.x(F)
    assert (x.pow_mod(p**k, f) - x % f).is_zero() or ((x.pow_mod(p**k, f) - x) % f).is_zero()
    for j in range(1, k):
        g = (x.pow_mod(p**j, f) - x).gcd(f)
        assert g.degree == 0


def test_rational_roots_examples():
    f = Polynomial(QQ, [Fraction(-1), Fraction(0), Fraction(1)])  # x^2 - 1
    assert rational_roots(f) == {Fraction(1), Fraction(-1)}
    g = Polynomial(QQ, [Fraction(-3), Fraction(2)])  # 2x - 3
    assert rational_roots(g) == {Fraction(3, 2)}
    h = Polynomial(QQ, [Fraction(-2), Fraction(0), Fraction(1)])  # x^2 - 2
    assert rational_roots(h) == set()


@given(
    st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=6),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=50, deadline=None)
def test_rational_roots_found_are_roots(roots):
    # build prod (x - r) and confirm every declared root is recovered
    f = Polynomial(QQ, [Fraction(1)])
    x = Polynomial.x(QQ)
    for r in roots:
        f = f * (x - Polynomial(QQ, [Fraction(r)]))
    got = rational_roots(f)
    assert got == {Fraction(r) for r in roots}


@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20))
@settings(max_examples=60)
def test_fraction_normalization_invariant(a, b):
    from math import gcd

    for v in (a + b, a - b, a * b):
        assert v.denominator > 0
        assert gcd(abs(v.numerator), v.denominator) == 1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_primality():
    assert is_prime(2) and is_prime(3) and is_prime(199) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2**32)


def test_polynomial_degree_sentinel():
    F = PrimeField(5)
    z = Polynomial.zero(F)
    assert z.degree == -1 and z.is_zero()
    f = Polynomial(F, [1, 2, 0, 0])
    assert f.degree == 1  # trailing zeros trimmed


@given(st.sampled_from([5, 7]), st.data())
@settings(max_examples=40, deadline=None)
def test_poly_divmod_gcd(p, data):
    F = PrimeField(p)
    fc = data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=5))
    gc = data.draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=4))
    f, g = Polynomial(F, fc), Polynomial(F, gc)
    if g.is_zero():
        return
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.degree < g.degree
    d = f.gcd(g)
    if not f.is_zero():
        assert (f % d).is_zero() and (g % d).is_zero()
