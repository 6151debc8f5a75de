"""Truncated one-variable power series over F_p or the lift ring Z/p^2,
with Cauchy and shuffle products, the p-homogeneous form sigma and its
inverse, and the p=2 variant quadratic forms sigma_tilde and psi.

A TruncSeries knows exactly how many leading coefficients are trustworthy
(its order).  Every binary operation returns a series whose order is the
minimum of the input orders; all operations here are graded, so no further
order is lost.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .errors import (
    BadConstantTerm,
    ModulusMismatch,
    NonConvergence,
    NonInvertibleConstantTerm,
    WrongModulus,
)
from .rings import as_modulus


class TruncSeries:
    """Finitely many known coefficients of a power series over F_p or Z/p^2."""

    __slots__ = ("coeffs", "p", "lift")

    def __init__(self, coeffs, p, lift=False):
        p = as_modulus(p).p
        m = p * p if lift else p
        arr = np.array(coeffs, dtype=np.int64) % m
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("a series needs at least one known coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lift", lift)

    def __setattr__(self, *a):
        raise AttributeError("TruncSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order, p, lift=False):
        return cls(np.zeros(order, np.int64), p, lift)

    @classmethod
    def one(cls, order, p, lift=False):
        c = np.zeros(order, np.int64)
        c[0] = 1
        return cls(c, p, lift)

    @classmethod
    def monomial(cls, exponent, order, p, coeff=1, lift=False):
        c = np.zeros(order, np.int64)
        if exponent < order:
            c[exponent] = coeff
        return cls(c, p, lift)

    @classmethod
    def from_function(cls, f, order, p, lift=False):
        return cls([f(n) for n in range(order)], p, lift)

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def ring_mod(self) -> int:
        return self.p * self.p if self.lift else self.p

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return int(self.coeffs[n])

    def constant_term(self) -> int:
        return int(self.coeffs[0])

    def in_one_plus_m(self) -> bool:
        return self.constant_term() == 1

    def in_m(self) -> bool:
        return self.constant_term() == 0

    def support(self):
        return [int(i) for i in np.flatnonzero(self.coeffs)]

    def truncate(self, order) -> "TruncSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncSeries(self.coeffs[:order], self.p, self.lift)

    def to_lift(self) -> "TruncSeries":
        """Canonical lift: representatives [0, p) read in Z/p^2."""
        if self.lift:
            return self
        return TruncSeries(self.coeffs, self.p, lift=True)

    def to_fp(self) -> "TruncSeries":
        """Reduction mod p (a ring homomorphism)."""
        if not self.lift:
            return self
        return TruncSeries(self.coeffs % self.p, self.p, lift=False)

    def _like(self, coeffs) -> "TruncSeries":
        return TruncSeries(coeffs, self.p, self.lift)

    def _check(self, other) -> int:
        if not isinstance(other, TruncSeries):
            raise TypeError("expected a TruncSeries, got %r" % (other,))
        if other.p != self.p or other.lift != self.lift:
            raise ModulusMismatch(
                "series over different rings: p=%d/lift=%s vs p=%d/lift=%s"
                % (self.p, self.lift, other.p, other.lift)
            )
        return min(self.order, other.order)

    def __eq__(self, other):
        return (
            isinstance(other, TruncSeries)
            and other.p == self.p
            and other.lift == self.lift
            and other.order == self.order
            and bool(np.array_equal(other.coeffs, self.coeffs))
        )

    def __hash__(self):
        return hash((self.p, self.lift, self.coeffs.tobytes()))

    def agrees_with(self, other, upto=None) -> bool:
        n = self._check(other)
        if upto is not None:
            n = min(n, upto)
        return bool(np.array_equal(self.coeffs[:n], other.coeffs[:n]))

    def __repr__(self):
        shown = poly_str(self.coeffs[: min(self.order, 12)])
        more = ", ..." if self.order > 12 else ""
        return "TruncSeries(%s%s; order=%d, p=%d%s)" % (
            shown,
            more,
            self.order,
            self.p,
            ", lift" if self.lift else "",
        )

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        n = self._check(other)
        return self._like((self.coeffs[:n] + other.coeffs[:n]) % self.ring_mod)

    def __sub__(self, other):
        n = self._check(other)
        return self._like((self.coeffs[:n] - other.coeffs[:n]) % self.ring_mod)

    def __neg__(self):
        return self._like((-self.coeffs) % self.ring_mod)

    def scale(self, c) -> "TruncSeries":
        return self._like(self.coeffs * (int(c) % self.ring_mod) % self.ring_mod)

    # -- products ------------------------------------------------------------

    def __mul__(self, other):
        return cauchy_mul(self, other)

    def shuffle(self, other) -> "TruncSeries":
        return shuffle_mul(self, other)


def poly_str(coeffs, var="X"):
    terms = []
    for n, c in enumerate(coeffs):
        c = int(c)
        if c == 0:
            continue
        if n == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else "%d*" % c
            terms.append("%s%s^%d" % (head, var, n) if n > 1 else "%s%s" % (head, var))
    return " + ".join(terms) if terms else "0"


def cauchy_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Ordinary product: coefficient n is sum_{i+j=n} a_i b_j."""
    n = a._check(b)
    out = np.convolve(a.coeffs[:n], b.coeffs[:n])[:n] % a.ring_mod
    return TruncSeries(out, a.p, a.lift)


def shuffle_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Shuffle product: coefficient n is sum_{i+j=n} C(n, i) a_i b_j."""
    n = a._check(b)
    out = _kernels.shuffle_convolve(
        a.coeffs, b.coeffs, a.p, a.ring_mod, n, symmetric=a.coeffs is b.coeffs
    )
    return TruncSeries(out, a.p, a.lift)


def shuffle_pow(a: TruncSeries, k: int) -> TruncSeries:
    """k-fold shuffle power by binary exponentiation; a^{sh 0} = 1."""
    if k < 0:
        raise ValueError("use shuffle_inv for negative powers")
    result = TruncSeries.one(a.order, a.p, a.lift)
    base = a
    while k:
        if k & 1:
            result = shuffle_mul(result, base)
        k >>= 1
        if k:
            base = shuffle_mul(base, base)
    return result


def shuffle_inv(a: TruncSeries) -> TruncSeries:
    """Inverse for the shuffle product, by the quadratically convergent
    recursion B <- B + B sh C, C <- C sh C."""
    a0 = a.constant_term()
    if math.gcd(a0, a.ring_mod) != 1:
        raise NonInvertibleConstantTerm(
            "constant term %d is not a unit mod %d" % (a0, a.ring_mod)
        )
    u = pow(a0, -1, a.ring_mod)
    # a = a0 (1 - c) with c in m; invert 1 - c, then scale by a0^{-1}
    one = TruncSeries.one(a.order, a.p, a.lift)
    c = one - a.scale(u)
    b = one
    known = 1
    while known < a.order:
        b = b + shuffle_mul(b, c)
        c = shuffle_mul(c, c)
        known *= 2
    return b.scale(u)


# -- the p-homogeneous form sigma -------------------------------------------


def sigma(a: TruncSeries, force_generic: bool = False) -> TruncSeries:
    """p-homogeneous form: reduction of (lift(a)^{sh p} - a0^p) / p.

    For p = 2 a direct quadratic-form evaluation is used; the lift-ring
    path is the reference implementation (force_generic=True).
    """
    if a.lift:
        raise WrongModulus("sigma is defined on series over F_p")
    if a.p == 2 and not force_generic:
        return TruncSeries(_kernels.sigma2_fast(a.coeffs), 2)
    return sigma_generic(a)


def sigma_generic(a: TruncSeries) -> TruncSeries:
    """sigma through the Z/p^2 lift, any prime p."""
    if a.lift:
        raise WrongModulus("sigma is defined on series over F_p")
    p = a.p
    t = shuffle_pow(a.to_lift(), p)
    c = t.coeffs.copy()
    c[0] -= pow(a.constant_term(), p, p * p)
    c %= p * p
    if (c % p).any():
        raise AssertionError("lift-ring p-th power not divisible by p")
    out = c // p % p
    out[0] = pow(a.constant_term(), p, p)
    return TruncSeries(out, p)


def _budget(order: int) -> int:
    return max(1, math.ceil(math.log2(order))) + 2 if order > 1 else 3


def _fixed_point_inverse(a: TruncSeries, form, budget: int) -> TruncSeries:
    """Unique Z with Z(0)=1 and form(Z)=a, by Z <- Z + a - form(Z)."""
    if a.constant_term() != 1:
        raise BadConstantTerm("inversion needs constant term 1, got %d" % a[0])
    z = a
    for _ in range(budget):
        nz = z + a - form(z)
        if nz == z:
            return z
        z = nz
    raise NonConvergence(
        "fixed-point inversion did not stabilise in %d iterations" % budget
    )


def sigma_inv(a: TruncSeries) -> TruncSeries:
    """Inverse of sigma on 1 + X F_p[[X]] (quadratically convergent iteration)."""
    return _fixed_point_inverse(a, sigma, _budget(a.order))


def sigma_tilde(a: TruncSeries) -> TruncSeries:
    """Variant quadratic form sum_{i<=j} C(i+j,i) a_i a_j X^{i+j} (p = 2 only)."""
    _require_f2(a)
    return TruncSeries(_kernels.sigma_tilde_fast(a.coeffs), 2)


def sigma_tilde_inv(a: TruncSeries) -> TruncSeries:
    return _fixed_point_inverse(a, sigma_tilde, _budget(a.order))


def psi(a: TruncSeries) -> TruncSeries:
    """Binomial-free quadratic form sum_{i<=j} a_i a_j X^{i+j} (p = 2 only)."""
    _require_f2(a)
    return TruncSeries(_kernels.psi_fast(a.coeffs), 2)


def psi_inv(a: TruncSeries) -> TruncSeries:
    """Inverse of psi on 1 + X F_2[[X]].

    The fixed-point iteration for psi gains only one trustworthy coefficient
    per step, so the limit is computed directly by the triangular recurrence
    z_n = a_n - sum_{0<i<j, i+j=n} z_i z_j - [n even] z_{n/2}^2.
    """
    _require_f2(a)
    if a.constant_term() != 1:
        raise BadConstantTerm("psi_inv needs constant term 1, got %d" % a[0])
    N = a.order
    z = np.zeros(N, np.int64)
    z[0] = 1
    for n in range(1, N):
        # cross terms of psi(z)_n not involving z_n (the (0, n) pair)
        c = 0
        for i in range(1, (n + 1) // 2):
            c ^= int(z[i]) & int(z[n - i])
        if n % 2 == 0:
            c ^= int(z[n // 2])
        z[n] = (int(a.coeffs[n]) ^ c) & 1
    out = TruncSeries(z, 2)
    if psi(out) != a:
        raise NonConvergence("psi_inv round-trip failed")
    return out


def _require_f2(a: TruncSeries):
    if a.p != 2 or a.lift:
        raise WrongModulus("this form is defined only over F_2")


def frobenius(a: TruncSeries) -> TruncSeries:
    """A(X)^p = sum a_n^p X^{np}, truncated to the input order."""
    if a.lift:
        raise WrongModulus("frobenius is defined on series over F_p")
    p = a.p
    out = np.zeros(a.order, np.int64)
    idx = np.arange((a.order + p - 1) // p)
    out[idx * p] = a.coeffs[idx]  # a^p = a in F_p
    return TruncSeries(out, p)
