"""Numba kernels for binomial-weighted (shuffle) convolutions.

The binomial C(n, i) mod p^2 is p^v * U[n] * invU[i] * invU[n-i] where
v is the number of base-p carries in i + (n-i) (Kummer) and U[x] is the
p-free part of x! reduced mod the ring modulus.  Terms with v >= 2 vanish
mod p^2 (and v >= 1 vanishes mod p), so the convolution only visits index
pairs with at most one carry.  Those are enumerated digit-wise, which makes
the product cost roughly proportional to the number of surviving terms.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MAX_DIGITS = 64


@njit(cache=True)
def _egcd_inverse(a, m):
    # inverse of a mod m for gcd(a, m) == 1
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    return old_s % m


@njit(cache=True)
def _build_tables(p, m, n):
    # digit sums, cumulative factorial units and their inverses, all length n
    S = np.zeros(n, np.int64)
    U = np.ones(n, np.int64)
    for x in range(1, n):
        S[x] = S[x // p] + x % p
        u = x
        while u % p == 0:
            u //= p
        U[x] = U[x - 1] * (u % m) % m
    invU = np.ones(n, np.int64)
    if n > 1:
        invU[n - 1] = _egcd_inverse(U[n - 1], m)
        for x in range(n - 1, 0, -1):
            u = x
            while u % p == 0:
                u //= p
            invU[x - 1] = invU[x] * (u % m) % m
    return S, U, invU


_TABLES = {}


def get_tables(p, m, n):
    """Cached (S, U, invU) tables of length >= n for modulus m in {p, p^2}."""
    key = (p, m)
    cached = _TABLES.get(key)
    if cached is not None and len(cached[0]) >= n:
        return cached
    size = max(n, 1024)
    if cached is not None:
        size = max(size, 2 * len(cached[0]))
    tables = _build_tables(p, m, size)
    _TABLES[key] = tables
    return tables


@njit(cache=True)
def _shuffle_into(a, b, out, p, m, U, invU, mode, symmetric):
    """out[n] = sum_i C(n, i) a[i] b[n-i] mod m, m in {p, p^2}.

    mode 0 reduces every term, mode 1 reduces once per term but keeps the
    accumulator unreduced (needs order * m^3 < 2^62), mode 2 keeps raw
    products (needs order * m^5 * p < 2^62); the caller picks the widest
    safe mode.  With symmetric=True (a is b) only pairs i <= n-i are
    visited and off-diagonal contributions are doubled.
    """
    N = out.shape[0]
    pw = np.empty(_MAX_DIGITS, np.int64)
    pw[0] = 1
    nd = 1
    while pw[nd - 1] <= N:
        pw[nd] = pw[nd - 1] * p
        nd += 1
    dig = np.zeros(_MAX_DIGITS, np.int64)
    e = np.zeros(_MAX_DIGITS, np.int64)
    lift = m != p
    for n in range(N):
        x = n
        D = 0
        while True:
            dig[D] = x % p
            x //= p
            D += 1
            if x == 0:
                break
        un = U[n]
        acc = 0
        # carry-free pairs: i runs over all digit-wise minorants of n
        for d in range(D):
            e[d] = 0
        i = 0
        while True:
            if not symmetric or 2 * i <= n:
                av = a[i]
                if av != 0:
                    bv = b[n - i]
                    if bv != 0:
                        if symmetric and 2 * i < n:
                            av += av
                        if mode == 2:
                            acc += un * invU[i] * invU[n - i] * av * bv
                        elif mode == 1:
                            acc += un * invU[i] * invU[n - i] % m * av * bv
                        else:
                            c = un * invU[i] % m * invU[n - i] % m
                            acc = (acc + c * av % m * bv) % m
            d = 0
            while d < D and e[d] == dig[d]:
                i -= e[d] * pw[d]
                e[d] = 0
                d += 1
            if d == D:
                break
            e[d] += 1
            i += pw[d]
        # single-carry pairs survive only mod p^2, with an extra factor p
        if lift:
            for t in range(D - 1):
                nt = dig[t]
                nt1 = dig[t + 1]
                if nt > p - 2 or nt1 < 1:
                    continue
                # column t emits the carry, column t+1 absorbs it
                base = (nt + 1) * pw[t]
                for d in range(D):
                    e[d] = 0
                i = base
                while True:
                    if not symmetric or 2 * i <= n:
                        av = a[i]
                        if av != 0:
                            bv = b[n - i]
                            if bv != 0:
                                if symmetric and 2 * i < n:
                                    av += av
                                if mode == 2:
                                    acc += un * invU[i] * invU[n - i] * p * av * bv
                                elif mode == 1:
                                    acc += un * invU[i] * invU[n - i] % m * p * av % m * bv
                                else:
                                    c = un * invU[i] % m * invU[n - i] % m * p % m
                                    acc = (acc + c * av % m * bv) % m
                    d = 0
                    while d < D:
                        if d == t:
                            hi = p - 2 - nt
                        elif d == t + 1:
                            hi = nt1 - 1
                        else:
                            hi = dig[d]
                        if e[d] < hi:
                            break
                        i -= e[d] * pw[d]
                        e[d] = 0
                        d += 1
                    if d == D:
                        break
                    e[d] += 1
                    i += pw[d]
        out[n] = acc % m


def shuffle_convolve(a, b, p, m, order, symmetric=False):
    """Binomial-weighted convolution of a and b to the given order, mod m.

    With symmetric=True the caller asserts a and b hold equal data, so the
    kernel only walks pairs i <= n-i (a square costs about half a product).
    """
    out = np.zeros(order, np.int64)
    _, U, invU = get_tables(p, m, order)
    limit = 2**62
    if order * m**5 * 2 * p < limit:
        mode = 2
    elif order * m**3 * 2 < limit:
        mode = 1
    else:
        mode = 0
    _shuffle_into(a[:order], b[:order], out, p, m, U, invU, mode, symmetric)
    return out


def sigma2_fast(coeffs):
    """Quadratic form over F_2: a0^2 + sum a_{2^t}^2 X^{2^{t+1}} +
    cross terms a_i a_j X^{i+j} over i<j with disjoint binary digits."""
    c = np.asarray(coeffs, dtype=np.int64)
    N = len(c)
    out = np.zeros(N, np.int64)
    s = np.flatnonzero(c)
    if len(s) > 1:
        ii, jj = np.triu_indices(len(s), 1)
        I, J = s[ii], s[jj]
        keep = ((I & J) == 0) & (I + J < N)
        np.add.at(out, (I + J)[keep], 1)
    out[0] += c[0]
    t = 1
    while 2 * t < N:
        out[2 * t] += c[t]
        t *= 2
    return out & 1


def sigma_tilde_fast(coeffs):
    """Quadratic form over F_2 with plain binomial diagonal (only i=j=0 survives)."""
    c = np.asarray(coeffs, dtype=np.int64)
    N = len(c)
    out = np.zeros(N, np.int64)
    s = np.flatnonzero(c)
    if len(s) > 1:
        ii, jj = np.triu_indices(len(s), 1)
        I, J = s[ii], s[jj]
        keep = ((I & J) == 0) & (I + J < N)
        np.add.at(out, (I + J)[keep], 1)
    out[0] += c[0]
    return out & 1


def psi_fast(coeffs):
    """Binomial-free quadratic form over F_2: sum_{i<=j} a_i a_j X^{i+j}."""
    c = np.asarray(coeffs, dtype=np.int64)
    N = len(c)
    out = np.zeros(N, np.int64)
    s = np.flatnonzero(c)
    if len(s) > 1:
        ii, jj = np.triu_indices(len(s), 1)
        I, J = s[ii], s[jj]
        keep = (I + J) < N
        np.add.at(out, (I + J)[keep], 1)
    half = s[2 * s < N]
    np.add.at(out, 2 * half, 1)
    return out & 1
