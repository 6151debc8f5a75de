"""Truncated series in k free non-commuting variables over F_p or Z/p^2:
shuffle algebra, shuffle inverse, the p-homogeneous form and its inverse,
linear changes of variables, and abelianization onto one-variable series.

Words are tuples of variable indices; a series stores a sparse map from
words of degree < order to nonzero residues.  Sizes are deliberately
capped (k <= 4, order <= 10) since the word count grows like k^order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import (
    BadConstantTerm,
    CapExceeded,
    ModulusMismatch,
    NonConvergence,
    NonInvertibleConstantTerm,
    ShapeMismatch,
    SingularMatrix,
    WrongModulus,
)
from .rings import as_modulus
from .series import TruncSeries

K_CAP = 4
ORDER_CAP = 10


def _check_caps(k, order):
    if not 1 <= k <= K_CAP:
        raise CapExceeded("variable count %d outside [1, %d]" % (k, K_CAP))
    if not 1 <= order <= ORDER_CAP:
        raise CapExceeded("order %d outside [1, %d]" % (order, ORDER_CAP))


class NCSeries:
    """Finitely many known word coefficients of a free power series."""

    __slots__ = ("k", "order", "coeffs", "p", "lift")

    def __init__(self, coeffs, k, order, p, lift=False):
        _check_caps(k, order)
        p = as_modulus(p).p
        m = p * p if lift else p
        clean = {}
        for w, c in coeffs.items():
            w = tuple(int(x) for x in w)
            if any(not 0 <= x < k for x in w):
                raise ShapeMismatch("word %r uses a variable outside [0, %d)" % (w, k))
            if len(w) >= order:
                continue
            c = int(c) % m
            if c:
                clean[w] = c
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lift", lift)

    def __setattr__(self, *a):
        raise AttributeError("NCSeries is immutable")

    @classmethod
    def zero(cls, k, order, p, lift=False):
        return cls({}, k, order, p, lift)

    @classmethod
    def one(cls, k, order, p, lift=False):
        return cls({(): 1}, k, order, p, lift)

    @classmethod
    def word(cls, letters, k, order, p, coeff=1, lift=False):
        return cls({tuple(letters): coeff}, k, order, p, lift)

    @property
    def ring_mod(self):
        return self.p * self.p if self.lift else self.p

    def __getitem__(self, w):
        return self.coeffs.get(tuple(w), 0)

    def constant_term(self):
        return self.coeffs.get((), 0)

    def in_one_plus_m(self):
        return self.constant_term() == 1

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return NCSeries(self.coeffs, self.k, order, self.p, self.lift)

    def to_lift(self):
        if self.lift:
            return self
        return NCSeries(self.coeffs, self.k, self.order, self.p, lift=True)

    def to_fp(self):
        if not self.lift:
            return self
        return NCSeries(self.coeffs, self.k, self.order, self.p, lift=False)

    def _check(self, other):
        if not isinstance(other, NCSeries):
            raise TypeError("expected an NCSeries")
        if other.k != self.k:
            raise ShapeMismatch("variable counts differ: %d vs %d" % (self.k, other.k))
        if other.p != self.p or other.lift != self.lift:
            raise ModulusMismatch("series over different rings")
        return min(self.order, other.order)

    def __eq__(self, other):
        return (
            isinstance(other, NCSeries)
            and other.k == self.k
            and other.p == self.p
            and other.lift == self.lift
            and other.order == self.order
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.k, self.p, self.lift, self.order, frozenset(self.coeffs.items())))

    def __repr__(self):
        return "NCSeries(%s; k=%d, order=%d, p=%d%s)" % (
            nc_str(self),
            self.k,
            self.order,
            self.p,
            ", lift" if self.lift else "",
        )

    def __add__(self, other):
        n = self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return NCSeries(out, self.k, n, self.p, self.lift)

    def __sub__(self, other):
        n = self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) - c
        return NCSeries(out, self.k, n, self.p, self.lift)

    def __neg__(self):
        return NCSeries(
            {w: -c for w, c in self.coeffs.items()}, self.k, self.order, self.p, self.lift
        )

    def scale(self, c):
        c = int(c)
        return NCSeries(
            {w: c * v for w, v in self.coeffs.items()}, self.k, self.order, self.p, self.lift
        )

    def shuffle(self, other):
        return nc_shuffle(self, other)


def nc_str(a: NCSeries, max_terms=12) -> str:
    items = sorted(a.coeffs.items(), key=lambda wc: (len(wc[0]), wc[0]))
    parts = []
    for w, c in items[:max_terms]:
        word = "".join("x%d" % (i + 1) for i in w) or "1"
        if c == 1:
            parts.append(word)
        elif word == "1":
            parts.append(str(c))
        else:
            parts.append("%d*%s" % (c, word))
    if len(items) > max_terms:
        parts.append("...")
    return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=200_000)
def _shuffle_words(u: tuple, v: tuple):
    """Integer-multiplicity shuffle of two words, as a word -> count map.

    Recursive law: (u s) sh (v t) = ((u sh (v t)) s) + (((u s) sh v) t).
    """
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out = {}
    for w, c in _shuffle_words(u[:-1], v):
        out[w + u[-1:]] = out.get(w + u[-1:], 0) + c
    for w, c in _shuffle_words(u, v[:-1]):
        out[w + v[-1:]] = out.get(w + v[-1:], 0) + c
    return tuple(out.items())


def shuffle_word_pair(u, v):
    """Public view of the word-pair shuffle as a dict (exact multiplicities)."""
    return dict(_shuffle_words(tuple(u), tuple(v)))


def nc_shuffle(a: NCSeries, b: NCSeries) -> NCSeries:
    n = a._check(b)
    m = a.ring_mod
    out = {}
    for u, cu in a.coeffs.items():
        if len(u) >= n:
            continue
        for v, cv in b.coeffs.items():
            if len(u) + len(v) >= n:
                continue
            cc = cu * cv % m
            if not cc:
                continue
            for w, mult in _shuffle_words(u, v):
                out[w] = (out.get(w, 0) + cc * mult) % m
    return NCSeries(out, a.k, n, a.p, a.lift)


def nc_shuffle_pow(a: NCSeries, k: int) -> NCSeries:
    if k < 0:
        raise ValueError("use nc_shuffle_inv for negative powers")
    result = NCSeries.one(a.k, a.order, a.p, a.lift)
    base = a
    while k:
        if k & 1:
            result = nc_shuffle(result, base)
        k >>= 1
        if k:
            base = nc_shuffle(base, base)
    return result


def nc_shuffle_inv(a: NCSeries) -> NCSeries:
    """Shuffle inverse via the doubling recursion on the geometric series."""
    a0 = a.constant_term()
    import math as _math

    if _math.gcd(a0, a.ring_mod) != 1:
        raise NonInvertibleConstantTerm(
            "constant term %d is not a unit mod %d" % (a0, a.ring_mod)
        )
    u = pow(a0, -1, a.ring_mod)
    one = NCSeries.one(a.k, a.order, a.p, a.lift)
    c = one - a.scale(u)
    b = one
    known = 1
    while known < a.order:
        b = b + nc_shuffle(b, c)
        c = nc_shuffle(c, c)
        known *= 2
    return b.scale(u)


def nc_sigma(a: NCSeries) -> NCSeries:
    """The p-homogeneous form through the canonical Z/p^2 lift."""
    if a.lift:
        raise WrongModulus("the form is defined on series over F_p")
    p = a.p
    t = nc_shuffle_pow(a.to_lift(), p)
    m = p * p
    out = dict(t.coeffs)
    out[()] = out.get((), 0) - pow(a.constant_term(), p, m)
    for w in list(out):
        c = out[w] % m
        if c % p:
            raise AssertionError("lift-ring p-th power not divisible by p")
        out[w] = c // p
    out[()] = pow(a.constant_term(), p, p)
    return NCSeries(out, a.k, a.order, p)


def nc_sigma_inv(a: NCSeries) -> NCSeries:
    """Inverse of the form on 1 + m, by the graded fixed point
    Z <- Z + A - sigma(Z) (one degree gained per sweep)."""
    if a.lift:
        raise WrongModulus("the form is defined on series over F_p")
    if a.constant_term() != 1:
        raise BadConstantTerm("inversion needs constant term 1")
    z = a
    for _ in range(a.order + 2):
        nz = z + a - nc_sigma(z)
        if nz == z:
            if nc_sigma(z) != a:
                raise NonConvergence("fixed point does not invert the form")
            return z
        z = nz
    raise NonConvergence("graded fixed point did not stabilise")


def gl_change_of_vars(a: NCSeries, matrix) -> NCSeries:
    """Substitute x_i -> sum_j M[i][j] x_j in every word (degree preserving)."""
    p = a.p
    m = a.ring_mod
    mat = [[int(x) % p for x in row] for row in matrix]
    if len(mat) != a.k or any(len(r) != a.k for r in mat):
        raise ShapeMismatch("matrix must be %d x %d" % (a.k, a.k))
    if _det_mod_p(mat, p) == 0:
        raise SingularMatrix("change of variables must be invertible mod %d" % p)
    out = {}
    for w, c in a.coeffs.items():
        expansions = [((), c)]
        for letter in w:
            nxt = []
            row = mat[letter]
            for word, coef in expansions:
                for j in range(a.k):
                    if row[j]:
                        nxt.append((word + (j,), coef * row[j] % m))
            expansions = nxt
        for word, coef in expansions:
            out[word] = (out.get(word, 0) + coef) % m
    return NCSeries(out, a.k, a.order, a.p, a.lift)


def _det_mod_p(matrix, p):
    m = [row[:] for row in matrix]
    n = len(m)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col] % p
        inv = pow(m[col][col], -1, p)
        for r in range(col + 1, n):
            f = m[r][col] * inv % p
            if f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[col])]
    return det % p


def abelianize(a: NCSeries) -> TruncSeries:
    """Identify all variables with X: coefficient n is the sum over words of
    degree n."""
    out = np.zeros(a.order, np.int64)
    for w, c in a.coeffs.items():
        out[len(w)] += c
    return TruncSeries(out % a.ring_mod, a.p, a.lift)


def geometric(lams, order, p, lift=False) -> NCSeries:
    """The series whose coefficient at x_{i1}...x_{id} is lam_{i1}...lam_{id};
    the shuffle exponential of sum lam_j x_j, and a one-parameter group:
    geometric(lam) sh geometric(mu) = geometric(lam + mu)."""
    k = len(lams)
    _check_caps(k, order)
    p = as_modulus(p).p
    m = p * p if lift else p
    lams = [int(x) % m for x in lams]
    out = {(): 1}
    frontier = {(): 1}
    for _ in range(1, order):
        nxt = {}
        for w, c in frontier.items():
            for j in range(k):
                if lams[j]:
                    v = c * lams[j] % m
                    if v:
                        nxt[w + (j,)] = v
        out.update(nxt)
        frontier = nxt
    return NCSeries(out, k, order, p, lift)
