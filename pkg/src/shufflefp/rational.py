"""Polynomials and rational fractions over F_p, with fast expansion into
truncated series, fraction reconstruction from a truncation (extended
Euclid / Pade), and sound certification of p-homogeneous-form identities
between fractions.

A fraction f/g is kept in lowest terms with g(0) = 1, so equality is
literal equality of coefficient tuples.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    DivisionByZeroPoly,
    NonUnitDenominator,
    OrderTooSmall,
    WrongModulus,
    ZeroFraction,
)
from .rings import as_modulus
from .series import TruncSeries, poly_str, sigma


class FpPoly:
    """Polynomial over F_p: an immutable coefficient tuple without trailing zeros."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p):
        p = as_modulus(p).p
        c = [int(x) % p for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "p", p)

    def __setattr__(self, *a):
        raise AttributeError("FpPoly is immutable")

    @classmethod
    def zero(cls, p):
        return cls((), p)

    @classmethod
    def one(cls, p):
        return cls((1,), p)

    @classmethod
    def x(cls, p):
        return cls((0, 1), p)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __call__(self, x):
        r = 0
        for c in reversed(self.coeffs):
            r = (r * x + c) % self.p
        return r

    def __eq__(self, other):
        return (
            isinstance(other, FpPoly)
            and other.p == self.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return "FpPoly(%s; p=%d)" % (poly_str(self.coeffs), self.p)

    def _check(self, other):
        if isinstance(other, int):
            other = FpPoly((other,), self.p)
        if not isinstance(other, FpPoly) or other.p != self.p:
            raise TypeError("expected an FpPoly over F_%d" % self.p)
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly([self[i] + other[i] for i in range(n)], self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpPoly([-c for c in self.coeffs], self.p)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return FpPoly.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly(out, self.p)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative polynomial power")
        r = FpPoly.one(self.p)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, k) -> "FpPoly":
        """Multiply by X^k."""
        if self.is_zero():
            return self
        return FpPoly((0,) * k + self.coeffs, self.p)

    def scale(self, c) -> "FpPoly":
        return FpPoly([c * a for a in self.coeffs], self.p)

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        return self.scale(pow(self.coeffs[-1], -1, self.p))

    def divmod(self, other):
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZeroPoly("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        d = other.degree
        lead_inv = pow(other.coeffs[-1], -1, p)
        quo = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] % p
            if c:
                q = c * lead_inv % p
                quo[i - d] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] = (rem[i - d + j] - q * b) % p
        return FpPoly(quo, p), FpPoly(rem[:d], p)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def to_series(self, order, lift=False) -> TruncSeries:
        c = np.zeros(order, np.int64)
        for i, a in enumerate(self.coeffs[:order]):
            c[i] = a
        return TruncSeries(c, self.p, lift)


def poly_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic greatest common divisor."""
    while b:
        a, b = b, a % b
    return a.monic()


class PolyFraction:
    """Rational fraction f/g over F_p in lowest terms with g(0) = 1."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num, den):
        if not isinstance(num, FpPoly) or not isinstance(den, FpPoly):
            raise TypeError("PolyFraction takes two FpPoly values")
        if num.p != den.p:
            raise WrongModulus("numerator and denominator over different fields")
        if den.is_zero():
            raise DivisionByZeroPoly("zero denominator")
        if den(0) == 0:
            raise NonUnitDenominator("denominator must not vanish at 0")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        u = pow(den(0), -1, num.p)
        object.__setattr__(self, "num", num.scale(u))
        object.__setattr__(self, "den", den.scale(u))
        object.__setattr__(self, "p", num.p)

    def __setattr__(self, *a):
        raise AttributeError("PolyFraction is immutable")

    @classmethod
    def from_poly(cls, f: FpPoly):
        return cls(f, FpPoly.one(f.p))

    @classmethod
    def one(cls, p):
        return cls.from_poly(FpPoly.one(p))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def complexity(self) -> int:
        """max(1 + deg numerator, deg denominator); the Hankel rank of the
        expansion, and the natural size measure for reconstruction."""
        if self.is_zero():
            raise ZeroFraction("the zero fraction has no complexity")
        return max(1 + self.num.degree, self.den.degree)

    def degree_pair(self):
        return (self.num.degree, self.den.degree)

    def __eq__(self, other):
        return (
            isinstance(other, PolyFraction)
            and other.p == self.p
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        return "PolyFraction((%s)/(%s); p=%d)" % (
            poly_str(self.num.coeffs),
            poly_str(self.den.coeffs),
            self.p,
        )

    def __add__(self, other):
        return PolyFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return PolyFraction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other):
        return PolyFraction(self.num * other.num, self.den * other.den)

    def inverse(self) -> "PolyFraction":
        if self.is_zero():
            raise ZeroFraction("cannot invert the zero fraction")
        if self.num(0) == 0:
            raise NonUnitDenominator("inverse would have a pole at 0")
        return PolyFraction(self.den, self.num)

    def expand(self, order, lift=False) -> TruncSeries:
        """Taylor expansion at 0 to the given order, by the denominator's
        linear recurrence (vectorised over blocks of the recurrence length)."""
        p = self.p
        m = p * p if lift else p
        out = np.zeros(order, np.int64)
        f = self.num.coeffs
        g = self.den.coeffs
        d = len(g) - 1
        for n in range(min(order, len(f))):
            out[n] = f[n]
        if d == 0:
            return TruncSeries(out % m, p, lift)
        # g0 = 1, so a_n = f_n - sum_{k=1..d} g_k a_{n-k}
        neg_g = (-np.array(g[1:], np.int64)) % p
        for n in range(1, order):
            k = min(d, n)
            out[n] = (out[n] + neg_g[:k] @ out[n - k : n][::-1]) % p
        return TruncSeries(out % m, p, lift)


def frac_degree(a: PolyFraction) -> int:
    """max(deg f, deg g), the fraction's degree for certification bounds."""
    if a.is_zero():
        raise ZeroFraction("the zero fraction has no degree")
    return max(a.num.degree, a.den.degree)


def reconstruct(series: TruncSeries, degree_cap=None):
    """Find the unique fraction f/g with both degrees at most the cap that
    agrees with the truncation, or None if no such fraction exists.

    The extended Euclidean algorithm on (X^N, truncation) yields the
    candidate; the cap needs 2*cap + 1 <= N for uniqueness, and the
    candidate's full re-expansion must match every known coefficient.
    """
    if series.lift:
        raise WrongModulus("reconstruction works over F_p, not the lift ring")
    p = series.p
    N = series.order
    if degree_cap is None:
        degree_cap = (N - 1) // 2
    if 2 * degree_cap + 1 > N:
        raise OrderTooSmall(
            "need order >= %d for degree cap %d, have %d"
            % (2 * degree_cap + 1, degree_cap, N)
        )
    h = FpPoly(series.coeffs, p)
    if h.is_zero():
        return PolyFraction(FpPoly.zero(p), FpPoly.one(p))
    mod = FpPoly.one(p).shift(N)
    # extended Euclid tracking r = t * h (mod X^N)
    r0, r1 = mod, h
    t0, t1 = FpPoly.zero(p), FpPoly.one(p)
    while r1 and r1.degree >= (N + 1) // 2:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    g = poly_gcd(r1, t1)
    if g.degree > 0:
        r1, t1 = r1 // g, t1 // g
    if t1(0) == 0:
        return None
    cand = PolyFraction(r1, t1)
    if cand.is_zero() or cand.num.degree > degree_cap or cand.den.degree > degree_cap:
        return None
    if cand.expand(N) != series.truncate(N):
        return None
    return cand


def sigma_certification_order(a: PolyFraction, b: PolyFraction) -> int:
    """Coefficients to check so that sigma(expansion of a) = expansion of b
    as full power series: 2 + C(frac_degree(a) + p, p) + frac_degree(b).

    The form maps a fraction of degree d to a series annihilated by a
    denominator of degree at most C(d + p, p), so the difference against b
    satisfies a recurrence of bounded length and vanishes entirely once
    that many leading coefficients vanish."""
    p = a.p
    return 2 + math.comb(frac_degree(a) + p, p) + frac_degree(b)


def certify_sigma_identity(a: PolyFraction, b: PolyFraction):
    """Soundly decide whether sigma(a) = b as power series.

    Returns (holds, order_checked).
    """
    if a.p != b.p:
        raise WrongModulus("fractions over different fields")
    order = sigma_certification_order(a, b)
    got = sigma(a.expand(order))
    want = b.expand(order)
    return got == want, order


def sigma_rational(a: PolyFraction, degree_cap, margin=8):
    """Apply sigma to a fraction and reconstruct the image as a fraction.

    Returns the certified PolyFraction, or None when no fraction within the
    degree cap matches (sigma does not always preserve rationality).
    """
    order = 2 * degree_cap + 1 + margin
    image = sigma(a.expand(order))
    cand = reconstruct(image, degree_cap)
    if cand is None:
        return None
    holds, _ = certify_sigma_identity(a, cand)
    return cand if holds else None


def sigma_inv_rational(a: PolyFraction, degree_cap, margin=8):
    """Reconstruct sigma^{-1}(a) as a fraction, certified, or None."""
    from .series import sigma_inv

    order = 2 * degree_cap + 1 + margin
    pre = sigma_inv(a.expand(order))
    cand = reconstruct(pre, degree_cap)
    if cand is None:
        return None
    holds, _ = certify_sigma_identity(cand, a)
    return cand if holds else None
