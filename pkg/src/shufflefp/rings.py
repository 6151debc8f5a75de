"""Exact scalar arithmetic in F_p and Z/p^2, digit sums and binomials mod p.

All values are immutable and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDivisible, ModulusMismatch, NotPrime

MAX_P = 251


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeModulus:
    """A prime p with 2 <= p <= 251; p^2 always fits in a machine word."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise NotPrime("p = %r is not prime" % (self.p,))
        if self.p > MAX_P:
            raise NotPrime("p = %d exceeds the supported bound %d" % (self.p, MAX_P))

    @property
    def p2(self) -> int:
        return self.p * self.p

    def __int__(self):
        return self.p


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


class _Scalar:
    __slots__ = ("value", "modulus")

    _ring_of = staticmethod(lambda mod: 0)  # overridden

    def __init__(self, value, modulus):
        modulus = as_modulus(modulus)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "value", int(value) % self._ring_of(modulus))

    def __setattr__(self, *a):
        raise AttributeError("scalars are immutable")

    def _check(self, other):
        if isinstance(other, int):
            return type(self)(other, self.modulus)
        if type(other) is not type(self) or other.modulus != self.modulus:
            raise ModulusMismatch("%r vs %r" % (self, other))
        return other

    def __add__(self, other):
        other = self._check(other)
        return type(self)(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(-self.value, self.modulus)

    def __sub__(self, other):
        other = self._check(other)
        return type(self)(self.value - other.value, self.modulus)

    def __mul__(self, other):
        other = self._check(other)
        return type(self)(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def inverse(self):
        m = self._ring_of(self.modulus)
        return type(self)(pow(self.value, -1, m), self.modulus)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self._ring_of(self.modulus)
        return (
            type(other) is type(self)
            and other.modulus == self.modulus
            and other.value == self.value
        )

    def __hash__(self):
        return hash((type(self).__name__, self.value, self.modulus.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return "%s(%d mod %d)" % (
            type(self).__name__,
            self.value,
            self._ring_of(self.modulus),
        )


class FpScalar(_Scalar):
    """Residue in [0, p)."""

    _ring_of = staticmethod(lambda mod: mod.p)


class LiftScalar(_Scalar):
    """Residue in [0, p^2); reduction mod p maps onto FpScalar."""

    _ring_of = staticmethod(lambda mod: mod.p2)

    def reduce(self) -> FpScalar:
        return FpScalar(self.value % self.modulus.p, self.modulus)


def tm(n: int) -> int:
    """Binary digit sum (integral Thue-Morse function)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return bin(n).count("1")


def digit_sum(n: int, p) -> int:
    """Base-p digit sum s_p(n)."""
    p = as_modulus(p).p
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def carry_count(i: int, j: int, p) -> int:
    """Number of carries when adding i and j in base p.

    Equals the p-adic valuation of C(i+j, i) (Kummer).
    """
    p = as_modulus(p).p
    return (digit_sum(i, p) + digit_sum(j, p) - digit_sum(i + j, p)) // (p - 1)


def binom_mod_p(i: int, j: int, p) -> FpScalar:
    """C(i+j, i) mod p by Lucas' theorem."""
    mod = as_modulus(p)
    p = mod.p
    n = i + j
    r = 1
    while n:
        nd, id_ = n % p, i % p
        if id_ > nd:
            return FpScalar(0, mod)
        num, den = 1, 1
        for k in range(id_):
            num = num * (nd - k) % p
            den = den * (k + 1) % p
        r = r * num * pow(den, -1, p) % p
        n //= p
        i //= p
    return FpScalar(r, mod)


def div_by_p(x: LiftScalar) -> FpScalar:
    """Extract (x/p) mod p from a lift-ring value divisible by p."""
    p = x.modulus.p
    if x.value % p != 0:
        raise NotDivisible("%r is not divisible by %d" % (x, p))
    return FpScalar(x.value // p, x.modulus)
