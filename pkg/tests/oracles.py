"""Independent reference implementations used only by the tests.

Everything here favors obviousness over speed: big-integer binomials from
the standard library, direct summation formulas, and brute-force word
interleaving.  The library under test must agree with these on every
sampled input.
"""

from math import comb


def digit_sum_base(n: int, p: int) -> int:
    total = 0
    while n:
        total += n % p
        n //= p
    return total


def binom_valuation(i: int, j: int, p: int) -> int:
    """p-adic valuation of C(i+j, i) by direct factorization of the big
    integer."""
    value = comb(i + j, i)
    count = 0
    while value % p == 0:
        value //= p
        count += 1
    return count


def naive_shuffle(a, b, modulus=None):
    """Coefficientwise shuffle product with big-integer binomials; exact
    over Z when no modulus is given."""
    a = [int(x) for x in a]  # plain ints: numpy scalars would overflow
    b = [int(x) for x in b]
    n = min(len(a), len(b))
    out = []
    for k in range(n):
        total = 0
        for i in range(k + 1):
            total += comb(k, i) * a[i] * b[k - i]
        out.append(total if modulus is None else total % modulus)
    return out


def naive_shuffle_pow(a, k, modulus=None):
    result = [1] + [0] * (len(a) - 1)
    for _ in range(k):
        result = naive_shuffle(result, a, modulus)
    return result


def naive_sigma(coeffs, p):
    """The p-homogeneous form through an exact integer lift.

    Lift canonically to [0, p), take the p-th shuffle power exactly over
    Z, subtract the constant lift to the p-th power, divide by p, reduce
    mod p; the constant term is alpha_0^p by convention (the form fixes
    constants).
    """
    lifted = [int(c) % p for c in coeffs]
    power = naive_shuffle_pow(lifted, p)
    power[0] -= lifted[0] ** p
    assert all(c % p == 0 for c in power)
    out = [(c // p) % p for c in power]
    out[0] = pow(lifted[0], p, p)
    return out


def naive_expand(num, den, order, p):
    """Power-series expansion of num/den by long division; both inputs are
    plain coefficient lists with den[0] == 1."""
    out = []
    state = list(num) + [0] * max(0, order - len(num))
    for n in range(order):
        c = state[n] % p if n < len(state) else 0
        out.append(c)
        for i, d in enumerate(den):
            if n + i < len(state):
                state[n + i] = (state[n + i] - c * d) % p
    return out


def interleavings(u, v):
    """All shuffle interleavings of two words, with multiplicity."""
    if not u:
        return [v]
    if not v:
        return [u]
    out = [(u[0],) + rest for rest in interleavings(u[1:], v)]
    out += [(v[0],) + rest for rest in interleavings(u, v[1:])]
    return out


def naive_word_shuffle(u, v):
    counts = {}
    for w in interleavings(tuple(u), tuple(v)):
        counts[w] = counts.get(w, 0) + 1
    return counts


def ultimately_periodic(coeffs, preperiod, period):
    for n in range(preperiod, len(coeffs) - period):
        if coeffs[n] != coeffs[n + period]:
            return False
    return True
