"""Dynamics of the p-homogeneous form on series with constant term 1 over
F_2: iteration in both directions, finite-orbit detection on exact
polynomials, the auxiliary series recording coefficients at power-of-two
exponents, and degree growth of rational starting points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BadConstantTerm, WrongModulus
from .rational import (
    FpPoly,
    PolyFraction,
    sigma_inv_rational,
    sigma_rational,
)
from .series import TruncSeries, sigma, sigma_inv

FINITE = "Finite"
INFINITE_CERTIFIED = "InfiniteCertified"
EXHAUSTED = "Exhausted"


def iterate_sigma(a: TruncSeries, n: int) -> TruncSeries:
    """n-fold application of the form (negative n inverts); order preserved."""
    if n < 0 and a.constant_term() != 1:
        raise BadConstantTerm("backward iteration needs constant term 1")
    step = sigma if n >= 0 else sigma_inv
    for _ in range(abs(n)):
        a = step(a)
    return a


def power_of_two_monomial_present(a) -> bool:
    """True when some coefficient at exponent 2^k is nonzero.

    Exact for polynomials; for a truncated series the verdict only covers
    the known exponents.
    """
    if isinstance(a, FpPoly):
        coeffs, n = a.coeffs, len(a.coeffs)
    else:
        coeffs, n = a.coeffs, a.order
    k = 1
    while k < n:
        if coeffs[k]:
            return True
        k *= 2
    return False


def sigma_poly(a: FpPoly) -> FpPoly:
    """Exact polynomial image of the form over F_2 (no truncation)."""
    if a.p != 2:
        raise WrongModulus("polynomial orbits are implemented over F_2")
    order = 2 * max(a.degree, 0) + 1
    c = np.zeros(order, np.int64)
    for i, v in enumerate(a.coeffs):
        c[i] = v
    return FpPoly(_kernels.sigma2_fast(c), 2)


@dataclass
class OrbitRecord:
    start: object
    status: str
    cardinality: int = 0
    budget: int = 0
    trace: list = field(default_factory=list)


def orbit_cardinality(start: FpPoly, budget: int, keep_trace: bool = True) -> OrbitRecord:
    """Size of the orbit of a constant-term-1 polynomial over F_2.

    A power-of-two monomial certifies an infinite orbit; otherwise the form
    is iterated exactly until it returns to the start.  Budget exhaustion is
    reported as such, never as infinity.
    """
    if start.p != 2:
        raise WrongModulus("polynomial orbits are implemented over F_2")
    if start(0) != 1:
        raise BadConstantTerm("orbit analysis needs constant term 1")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if power_of_two_monomial_present(start):
        return OrbitRecord(start, INFINITE_CERTIFIED, budget=budget)
    trace = [start]
    current = start
    for i in range(1, budget + 1):
        current = sigma_poly(current)
        if current == start:
            return OrbitRecord(
                start, FINITE, cardinality=i, budget=budget,
                trace=trace if keep_trace else [],
            )
        trace.append(current)
    return OrbitRecord(start, EXHAUSTED, budget=budget, trace=trace if keep_trace else [])


@dataclass
class AuxSeries:
    """Coefficients of the source series at exponents 1, 2, 4, ... read as a
    series in an auxiliary variable t."""

    coeffs: tuple
    order: int

    def __eq__(self, other):
        return isinstance(other, AuxSeries) and other.coeffs == self.coeffs


def aux_series(a: TruncSeries) -> AuxSeries:
    """Extract sum_n a_{2^n} t^n; the aux order counts exponents 2^n below
    the source order."""
    if a.p != 2 or a.lift:
        raise WrongModulus("the auxiliary series is defined over F_2")
    out = []
    k = 1
    while k < a.order:
        out.append(int(a.coeffs[k]))
        k *= 2
    return AuxSeries(tuple(out), len(out))


def _binomial_pow_f2(k: int, order: int):
    """Coefficients of (1+t)^k in F_2[[t]] for k in Z, to the given order."""
    if k >= 0:
        return [math.comb(k, n) % 2 for n in range(order)]
    # (1+t)^{-1} = sum t^n over F_2 is wrong; invert the truncated polynomial
    pos = np.array([math.comb(-k, n) % 2 for n in range(order)], np.int64)
    inv = np.zeros(order, np.int64)
    inv[0] = 1
    for n in range(1, order):
        inv[n] = int(pos[1 : n + 1] @ inv[n - 1 :: -1][: n]) % 2
    return [int(x) for x in inv]


def aux_series_law_check(a: TruncSeries, k: int) -> bool:
    """Verify that iterating the form k times multiplies the auxiliary
    series by (1+t)^k."""
    if k < 0 and a.constant_term() != 1:
        raise BadConstantTerm("backward iteration needs constant term 1")
    lhs = aux_series(iterate_sigma(a, k))
    base = aux_series(a)
    order = min(lhs.order, base.order)
    fac = _binomial_pow_f2(k, order)
    prod = [
        sum(fac[i] * base.coeffs[n - i] for i in range(n + 1)) % 2
        for n in range(order)
    ]
    return list(lhs.coeffs[:order]) == prod


def degree_growth(a: PolyFraction, n_min: int, n_max: int, degree_cap: int = 64):
    """Iterate the form on a fraction in both directions, reconstructing and
    certifying a fraction at every step.

    Returns rows sorted by n with keys n, fraction, degree and stat
    (log(degree)/|n|); a failed reconstruction yields a row with fraction
    None and ends that direction.
    """
    if n_min > 0 or n_max < 0:
        raise ValueError("the range must contain 0")
    rows = {0: a}
    current = a
    for n in range(1, n_max + 1):
        current = sigma_rational(current, degree_cap)
        rows[n] = current
        if current is None:
            break
    current = a
    for n in range(-1, n_min - 1, -1):
        current = sigma_inv_rational(current, degree_cap)
        rows[n] = current
        if current is None:
            break
    table = []
    for n in sorted(rows):
        fr = rows[n]
        if fr is None:
            table.append({"n": n, "fraction": None, "degree": None, "stat": None})
            continue
        deg = max(fr.num.degree, fr.den.degree)
        stat = math.log(deg) / abs(n) if n != 0 and deg > 0 else 0.0
        table.append({"n": n, "fraction": fr, "degree": deg, "stat": stat})
    return table
