"""Scalar arithmetic, digit combinatorics and binomials modulo p against
big-integer references."""

import random
from math import comb

import pytest

import oracles
from shufflefp.errors import NotDivisible, NotPrime
from shufflefp.rings import (
    FpScalar,
    LiftScalar,
    PrimeModulus,
    as_modulus,
    binom_mod_p,
    carry_count,
    digit_sum,
    div_by_p,
    tm,
)

PRIMES = (2, 3, 5, 7)


def test_prime_modulus_accepts_primes():
    for p in (2, 3, 5, 7, 11, 251):
        assert PrimeModulus(p).p == p


def test_prime_modulus_rejects_composites_and_out_of_range():
    for bad in (0, 1, 4, 6, 9, 91, 252, 257):
        with pytest.raises(NotPrime):
            PrimeModulus(bad)


def test_thue_morse_base_cases():
    assert tm(0) == 0
    assert tm(7) == 3
    assert tm(2 ** 20) == 1


def test_thue_morse_recursion():
    for n in range(1024):
        assert tm(2 * n) == tm(n)
        assert tm(2 * n + 1) == 1 + tm(n)


def test_digit_sum_matches_oracle():
    rng = random.Random(1)
    for p in PRIMES:
        for _ in range(500):
            n = rng.randrange(0, 1 << 40)
            assert digit_sum(n, p) == oracles.digit_sum_base(n, p)


def test_carry_count_examples():
    assert carry_count(0, 12345, 2) == 0
    assert carry_count(2, 2, 2) == 1
    assert carry_count(1, 3, 2) == 2


def test_carry_count_equals_valuation_and_digit_sum_formula():
    rng = random.Random(2)
    for p in PRIMES:
        pairs = [(i, j) for i in range(24) for j in range(24)]
        pairs += [(rng.randrange(4096), rng.randrange(4096)) for _ in range(300)]
        for i, j in pairs:
            expected = oracles.binom_valuation(i, j, p)
            assert carry_count(i, j, p) == expected
            s = oracles.digit_sum_base
            assert carry_count(i, j, p) == (s(i, p) + s(j, p) - s(i + j, p)) // (p - 1)


def test_binom_mod_p_matches_pascal():
    rng = random.Random(3)
    for p in PRIMES:
        for i in range(48):
            for j in range(48):
                assert binom_mod_p(i, j, p) == comb(i + j, i) % p
        for _ in range(500):
            i, j = rng.randrange(1 << 10), rng.randrange(1 << 10)
            assert binom_mod_p(i, j, p) == comb(i + j, i) % p


def test_binom_parity_iff_digit_sums_add():
    for i in range(128):
        for j in range(128):
            assert (binom_mod_p(i, j, 2) == 1) == (tm(i + j) == tm(i) + tm(j))


def test_scalar_arithmetic():
    p = as_modulus(5)
    a, b = FpScalar(3, p), FpScalar(4, p)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (-a).value == 2
    assert (a.inverse() * a).value == 1
    with pytest.raises(ValueError):
        FpScalar(0, p).inverse()


def test_lift_scalar_reduces_homomorphically():
    p = as_modulus(5)
    for x in range(25):
        for y in range(25):
            lhs = (LiftScalar(x, p) * LiftScalar(y, p)).reduce()
            rhs = FpScalar(x % 5, p) * FpScalar(y % 5, p)
            assert lhs.value == rhs.value


def test_div_by_p():
    assert div_by_p(LiftScalar(0, 2)) == 0
    assert div_by_p(LiftScalar(2, 2)) == 1
    assert div_by_p(LiftScalar(15, 5)) == 3
    with pytest.raises(NotDivisible):
        div_by_p(LiftScalar(3, 2))
