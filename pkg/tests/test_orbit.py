"""Orbit dynamics of the p-homogeneous form over F_2: iteration, finite
orbits of polynomials, the auxiliary power-of-two coefficient series and
its binomial law, and degree growth along rational orbits."""

import numpy as np
import pytest

from shufflefp.errors import BadConstantTerm
from shufflefp.orbit import (
    EXHAUSTED,
    FINITE,
    INFINITE_CERTIFIED,
    aux_series,
    aux_series_law_check,
    degree_growth,
    iterate_sigma,
    orbit_cardinality,
    power_of_two_monomial_present,
    sigma_poly,
)
from shufflefp.rational import FpPoly, PolyFraction
from shufflefp.series import TruncSeries, sigma


def naive_orbit_size(poly, budget):
    """Independent re-implementation of the orbit walk."""
    current = poly
    for i in range(1, budget + 1):
        current = sigma_poly(current)
        if current == poly:
            return i
    return None


def test_iterate_sigma_basics():
    a = TruncSeries([1, 1] + [0] * 62, 2)
    assert iterate_sigma(a, 0) == a
    assert iterate_sigma(a, 1) == sigma(a)
    # two backward steps from 1+X reach the expansion of 1/(1+X+X^2)
    back2 = iterate_sigma(a, -2)
    expected = PolyFraction(FpPoly([1], 2), FpPoly([1, 1, 1], 2)).expand(64)
    assert back2 == expected
    with pytest.raises(BadConstantTerm):
        iterate_sigma(TruncSeries([0, 1], 2), -1)


def test_iterate_round_trip():
    rng = np.random.default_rng(50)
    for _ in range(25):
        c = rng.integers(0, 2, 128)
        c[0] = 1
        a = TruncSeries(c, 2)
        n = int(rng.integers(1, 7))
        assert iterate_sigma(iterate_sigma(a, n), -n) == a


def test_power_of_two_monomial_present():
    assert power_of_two_monomial_present(FpPoly([1, 1], 2))
    assert not power_of_two_monomial_present(FpPoly([1, 0, 0, 1], 2))
    assert power_of_two_monomial_present(FpPoly([1, 0, 0, 1, 1], 2))


def test_orbit_examples():
    assert orbit_cardinality(FpPoly([1, 0, 0, 1], 2), 8).status == FINITE
    assert orbit_cardinality(FpPoly([1, 0, 0, 1], 2), 8).cardinality == 1
    assert orbit_cardinality(FpPoly([1, 1], 2), 8).status == INFINITE_CERTIFIED
    # 1 + X^6 + X^9 has a genuine 2-cycle
    two_cycle = FpPoly([1, 0, 0, 0, 0, 0, 1, 0, 0, 1], 2)
    record = orbit_cardinality(two_cycle, 64)
    assert record.status == FINITE
    assert record.cardinality == 2
    assert record.cardinality == naive_orbit_size(two_cycle, 64)


def test_all_sixteen_safe_polynomials_have_power_of_two_orbits():
    # constant term 1, degree < 8, no monomial at X, X^2 or X^4:
    # free coefficients at X^3, X^5, X^6, X^7
    for mask in range(16):
        coeffs = [1, 0, 0, mask & 1, 0, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1]
        poly = FpPoly(coeffs, 2)
        record = orbit_cardinality(poly, 256)
        assert record.status == FINITE
        c = record.cardinality
        assert c >= 1 and c & (c - 1) == 0
        assert c == naive_orbit_size(poly, 256)


def test_budget_exhaustion_is_never_reported_infinite():
    two_cycle = FpPoly([1, 0, 0, 0, 0, 0, 1, 0, 0, 1], 2)
    record = orbit_cardinality(two_cycle, 1)
    assert record.status == EXHAUSTED


def test_aux_series_extraction():
    a = TruncSeries([1, 1] + [0] * 14, 2)
    assert list(aux_series(a).coeffs) == [1, 0, 0, 0]
    b = TruncSeries([1, 1, 1] + [0] * 13, 2)
    assert list(aux_series(b).coeffs) == [1, 1, 0, 0]
    ones = TruncSeries(np.ones(16, np.int64), 2)
    assert list(aux_series(ones).coeffs) == [1, 1, 1, 1]


def test_aux_series_law():
    one_x = TruncSeries([1, 1] + [0] * 30, 2)
    assert aux_series_law_check(one_x, 0)
    assert aux_series_law_check(one_x, 1)
    rng = np.random.default_rng(51)
    for _ in range(60):
        c = rng.integers(0, 2, 512)
        c[0] = 1
        a = TruncSeries(c, 2)
        k = int(rng.integers(-8, 9))
        assert aux_series_law_check(a, k)


def test_degree_growth_table():
    one_x = PolyFraction.from_poly(FpPoly([1, 1], 2))
    table = degree_growth(one_x, -2, 0)
    by_n = {row["n"]: row for row in table}
    assert by_n[-2]["degree"] == 2
    assert by_n[0]["degree"] == 1
    cubic = PolyFraction(FpPoly([1], 2), FpPoly([1, 1, 0, 1], 2))
    table = degree_growth(cubic, 0, 2)
    by_n = {row["n"]: row for row in table}
    assert by_n[2]["degree"] == 8
    expected = PolyFraction(
        FpPoly([1, 1, 1, 1, 1, 0, 1, 0, 1], 2), FpPoly([1, 0, 1, 1], 2) ** 2
    )
    assert by_n[2]["fraction"] == expected


def test_degree_growth_statistic_bounded_on_fixed_point():
    fixed = PolyFraction.from_poly(FpPoly([1, 0, 0, 1], 2))
    table = degree_growth(fixed, -3, 3)
    for row in table:
        assert row["fraction"] is not None
        assert row["degree"] == 3
