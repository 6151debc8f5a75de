"""Polynomials, reduced fractions, expansion, rational reconstruction and
the finite certification of identities for the p-homogeneous form."""

import numpy as np
import pytest

import oracles
from shufflefp.errors import OrderTooSmall, ZeroFraction
from shufflefp.rational import (
    FpPoly,
    PolyFraction,
    certify_sigma_identity,
    frac_degree,
    poly_gcd,
    reconstruct,
    sigma_certification_order,
    sigma_inv_rational,
    sigma_rational,
)
from shufflefp.series import TruncSeries, sigma_inv


def random_fraction(rng, p, max_degree):
    while True:
        num = FpPoly(list(rng.integers(0, p, rng.integers(1, max_degree + 2))), p)
        den_c = list(rng.integers(0, p, rng.integers(1, max_degree + 2)))
        den_c[0] = 1
        den = FpPoly(den_c, p)
        if not num.is_zero():
            return PolyFraction(num, den)


# -- polynomial arithmetic ----------------------------------------------------


def test_poly_examples():
    p2 = 2
    assert poly_gcd(FpPoly([1, 1], p2), FpPoly([1, 0, 1], p2)) == FpPoly([1, 1], p2)
    q, r = FpPoly([0, 0, 0, 1], p2).divmod(FpPoly([1, 1], p2))
    assert q == FpPoly([1, 1, 1], p2)
    assert r == FpPoly([1], p2)
    assert FpPoly([1, 1], p2) * FpPoly([1, 1, 1], p2) == FpPoly([1, 0, 0, 1], p2)


def test_poly_degree_and_zero():
    assert FpPoly([], 2).degree == -1
    assert FpPoly([0, 0], 2).is_zero()
    assert FpPoly([1, 0, 3], 5).degree == 2


def test_poly_ring_axioms_random():
    rng = np.random.default_rng(30)
    for p in (2, 3, 5):
        for _ in range(50):
            a = FpPoly(list(rng.integers(0, p, 6)), p)
            b = FpPoly(list(rng.integers(0, p, 6)), p)
            c = FpPoly(list(rng.integers(0, p, 6)), p)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c
            if not b.is_zero():
                q, r = a.divmod(b)
                assert q * b + r == a
                assert r.degree < b.degree


# -- fractions and expansion --------------------------------------------------


def test_fraction_normalization():
    # common factors are removed and the denominator constant term is 1
    f = PolyFraction(FpPoly([1, 0, 1], 2), FpPoly([1, 1], 2))  # (1+X)^2/(1+X)
    assert f.num == FpPoly([1, 1], 2)
    assert f.den == FpPoly([1], 2)


def test_expand_examples():
    one = PolyFraction.one(2)
    assert list(one.expand(4).coeffs) == [1, 0, 0, 0]
    inv = PolyFraction(FpPoly([1], 2), FpPoly([1, 1], 2))
    assert list(inv.expand(5).coeffs) == [1, 1, 1, 1, 1]
    f = PolyFraction(FpPoly([1, 1, 1], 2), FpPoly([1, 0, 1], 2))  # (1+X+X^2)/(1+X)^2
    assert list(f.expand(8).coeffs) == [1, 1, 0, 1, 0, 1, 0, 1]


def test_expand_matches_long_division_oracle():
    rng = np.random.default_rng(31)
    for p in (2, 3, 5):
        for _ in range(60):
            f = random_fraction(rng, p, 5)
            got = list(f.expand(40).coeffs)
            want = oracles.naive_expand(f.num.coeffs, f.den.coeffs, 40, p)
            assert got == want


def test_frac_degree_and_complexity():
    inv = PolyFraction(FpPoly([1], 2), FpPoly([1, 1], 2))
    assert frac_degree(inv) == 1
    assert inv.complexity() == 1
    f = PolyFraction(FpPoly([1, 1, 0, 1], 2), FpPoly([1, 1], 2) ** 4)
    assert frac_degree(f) == 4
    assert f.complexity() == 4
    cube = PolyFraction.from_poly(FpPoly([1, 1], 2) ** 3)
    assert frac_degree(cube) == 3
    assert cube.complexity() == 4
    with pytest.raises(ZeroFraction):
        frac_degree(PolyFraction(FpPoly([], 2), FpPoly([1], 2)))


# -- reconstruction -----------------------------------------------------------


def test_reconstruct_round_trip_random():
    rng = np.random.default_rng(32)
    for p in (2, 3, 5):
        for _ in range(150):
            f = random_fraction(rng, p, 6)
            d = frac_degree(f)
            got = reconstruct(f.expand(2 * d + 1 + int(rng.integers(0, 8))), d)
            assert got == f


def test_reconstruct_not_found_for_lacunary_series():
    c = np.zeros(64, np.int64)
    k = 1
    while k < 64:
        c[k] = 1
        k *= 2
    assert reconstruct(TruncSeries(c, 2), 8) is None


def test_reconstruct_published_preimage():
    # preimage of 1+X+X^2+X^3+X^4 is (1+X+X^3)/(1+X)^4
    image = TruncSeries([1, 1, 1, 1, 1] + [0] * 59, 2)
    got = reconstruct(sigma_inv(image), 8)
    expected = PolyFraction(FpPoly([1, 1, 0, 1], 2), FpPoly([1, 1], 2) ** 4)
    assert got == expected


def test_reconstruct_requires_enough_coefficients():
    series = TruncSeries([1, 1, 1, 1], 2)
    with pytest.raises(OrderTooSmall):
        reconstruct(series, 8)


def test_reconstruct_ultimately_periodic_sequences():
    rng = np.random.default_rng(33)
    for _ in range(60):
        p = int(rng.choice([2, 3, 5]))
        pre = list(rng.integers(0, p, int(rng.integers(0, 4))))
        per = list(rng.integers(0, p, int(rng.integers(1, 5))))
        coeffs = (pre + per * 100)[:80]
        cap = len(pre) + len(per) + 1
        got = reconstruct(TruncSeries(coeffs, p), cap)
        assert got is not None
        assert list(got.expand(80).coeffs) == coeffs


# -- certification ------------------------------------------------------------


def test_certification_order_formula():
    inv = PolyFraction(FpPoly([1], 2), FpPoly([1, 1], 2))
    one_x = PolyFraction.from_poly(FpPoly([1, 1], 2))
    # M = 2 + C(deg+p, p) + deg(image) = 2 + C(3,2) + 1 = 6
    assert sigma_certification_order(inv, one_x) == 6


def test_certify_published_identities():
    p = 2
    inv = PolyFraction(FpPoly([1], p), FpPoly([1, 1], p))
    one_x = PolyFraction.from_poly(FpPoly([1, 1], p))
    assert certify_sigma_identity(inv, one_x)[0]
    one = PolyFraction.one(p)
    assert certify_sigma_identity(one, one)[0]
    cube = PolyFraction.from_poly(FpPoly([1, 1], p) ** 3)
    assert not certify_sigma_identity(one_x, cube)[0]


def test_sigma_rational_pipeline():
    p = 2
    one_x = PolyFraction.from_poly(FpPoly([1, 1], p))
    inv = PolyFraction(FpPoly([1], p), FpPoly([1, 1], p))
    assert sigma_inv_rational(one_x, 4) == inv
    assert sigma_rational(inv, 4) == one_x
    # section 4.5.2-style fraction with a bigger cap
    src = PolyFraction(FpPoly([1, 1, 1], p), FpPoly([1, 1], p) ** 3)
    expected = PolyFraction(FpPoly([1, 0, 0, 1, 0, 0, 0, 1], p), FpPoly([1, 1, 1], p) ** 4)
    assert sigma_inv_rational(src, 16) == expected


def test_sigma_inv_rational_p3():
    one_x = PolyFraction.from_poly(FpPoly([1, 1], 3))
    expected = PolyFraction(FpPoly([1], 3), FpPoly([1, -1], 3))
    assert sigma_inv_rational(one_x, 4) == expected


def test_sigma_rational_round_trip_random():
    rng = np.random.default_rng(34)
    for p in (2, 3):
        for _ in range(10):
            f = random_fraction(rng, p, 2)
            num = FpPoly([1] + list(f.num.coeffs[1:]), p)  # force constant term 1
            f = PolyFraction(num, f.den)
            image = sigma_rational(f, 24)
            if image is None:
                continue
            assert sigma_inv_rational(image, frac_degree(f)) == f
