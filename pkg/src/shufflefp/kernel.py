"""Decimation (p-kernel) analysis of truncated series.

The p-kernel of A is the span of its decimated sections; it is finite
dimensional exactly when A is algebraic over F_p(X).  From a truncation we
can only estimate the dimension, so closure results carry a saturated flag
and every rank decision is made on a trustworthy prefix of at least
ORDER_FLOOR coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadShift, Unsaturated, WrongModulus
from .series import TruncSeries, cauchy_mul, sigma

ORDER_FLOOR = 8
DEFAULT_DIM_CAP = 64


def section(a: TruncSeries, k: int, f: int) -> TruncSeries:
    """The decimated series sum_n a_{k + n p^f} X^n."""
    q = a.p**f
    if not 0 <= k < q:
        raise BadShift("need 0 <= k < p^f, got k=%d, p^f=%d" % (k, q))
    n = -(-(a.order - k) // q)
    if n < 1:
        raise BadShift("section (%d, %d) has no known coefficients" % (k, f))
    return TruncSeries(a.coeffs[k::q][:n], a.p, a.lift)


def _rank_f2(rows):
    """Rank of bit-mask rows over F_2 by xor elimination."""
    pivots = []
    for r in rows:
        for p_ in pivots:
            r = min(r, r ^ p_)
        if r:
            pivots.append(r)
        pivots.sort(reverse=True)
    return len(pivots)


def _rank_fp(rows, p):
    """Rank of integer rows mod p by dense Gaussian elimination."""
    m = [list(int(x) % p for x in r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [x * inv % p for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                c = m[r][col]
                m[r] = [(x - c * y) % p for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def _in_span(vectors, v, length, p):
    """Whether v[:length] lies in the span of vectors[:length] over F_p."""
    rows = [w[:length] for w in vectors]
    if p == 2:
        packed = [int.from_bytes(np.packbits(r & 1).tobytes(), "big") for r in rows]
        cand = int.from_bytes(np.packbits(v[:length] & 1).tobytes(), "big")
        base = _rank_f2(packed)
        return _rank_f2(packed + [cand]) == base
    base = _rank_fp(rows, p) if rows else 0
    return _rank_fp(rows + [v[:length]], p) == base


@dataclass
class KernelBasis:
    """Estimated spanning set of the p-kernel of a truncated series."""

    basis: list = field(default_factory=list)
    dim: int = 0
    saturated: bool = False


def kernel_closure(a: TruncSeries, dim_cap: int = DEFAULT_DIM_CAP) -> KernelBasis:
    """Breadth-first closure of {A} under the p decimations S -> section(S, r, 1).

    Stops cleanly (saturated) when no section adds a new direction, or gives
    up (not saturated) when the dimension cap is hit or a rank decision
    would rest on fewer than ORDER_FLOOR coefficients.
    """
    if dim_cap < 1:
        raise ValueError("dim_cap must be at least 1")
    p = a.p
    result = KernelBasis()
    if not a.coeffs.any():
        result.saturated = True
        return result
    vectors = [np.asarray(a.coeffs)]
    orders = [a.order]
    result.basis.append(a)
    result.dim = 1
    queue = [a]
    while queue:
        s = queue.pop(0)
        for r in range(p):
            t = section(s, r, 1)
            length = min(t.order, min(orders))
            if length < ORDER_FLOOR:
                return result  # not saturated: ran out of trustworthy order
            if not t.coeffs[:length].any():
                continue
            if _in_span(vectors, np.asarray(t.coeffs), length, p):
                # a dependence on a prefix barely longer than the current
                # dimension is vacuous evidence, so stop instead of closing
                if length < len(vectors) + ORDER_FLOOR:
                    return result
                continue
            if len(vectors) + 1 > dim_cap:
                return result  # not saturated: cap exceeded
            vectors.append(np.asarray(t.coeffs))
            orders.append(t.order)
            result.basis.append(t)
            result.dim = len(vectors)
            queue.append(t)
    result.saturated = True
    return result


def verify_poly_relation(z: TruncSeries, relation) -> bool:
    """Check sum over (i, j, c) of c X^i z^j = 0 to the order of z.

    relation is a list of monomials (x_exponent, y_exponent, coefficient).
    """
    if z.order < 1:
        raise ValueError("need at least one known coefficient")
    max_j = max((j for _, j, _ in relation), default=0)
    powers = [TruncSeries.one(z.order, z.p, z.lift)]
    for _ in range(max_j):
        powers.append(cauchy_mul(powers[-1], z))
    acc = TruncSeries.zero(z.order, z.p, z.lift)
    for i, j, c in relation:
        term = cauchy_mul(powers[j], TruncSeries.monomial(i, z.order, z.p, coeff=c, lift=z.lift))
        acc = acc + term
    return not acc.coeffs.any()


def kernel_bound_check(a: TruncSeries, cap: int = DEFAULT_DIM_CAP) -> dict:
    """Check dim K(sigma(A)) <= 1 + C(1 + dim K(A), 2) over F_2.

    The estimate for the sigma side is a lower bound, so an unsaturated
    estimate can still prove a violation but never prove the bound.
    """
    if a.p != 2 or a.lift:
        raise WrongModulus("the kernel bound is stated over F_2")
    ka = kernel_closure(a, cap)
    if not ka.saturated:
        raise Unsaturated("kernel of the input did not saturate under cap %d" % cap)
    ks = kernel_closure(sigma(a), cap)
    bound = 1 + math.comb(1 + ka.dim, 2)
    report = {
        "dim_kernel": ka.dim,
        "dim_kernel_sigma": ks.dim,
        "bound": bound,
        "sigma_side_saturated": ks.saturated,
    }
    if ks.dim > bound:
        report["holds"] = False
        return report
    if not ks.saturated:
        raise Unsaturated(
            "sigma-side kernel estimate %d is under the bound %d but not saturated"
            % (ks.dim, bound)
        )
    report["holds"] = True
    return report


RATIONAL_CANDIDATE = "RationalCandidate"
ALGEBRAIC_CANDIDATE = "AlgebraicCandidate"
UNKNOWN = "Unknown"


def _ultimate_period(coeffs):
    """Smallest period observed over at least 3 repetitions, or None.

    The preperiod must occupy at most a quarter of the window; otherwise a
    lacunary series whose support happens to end early in the window would
    look periodic with period 1.
    """
    c = np.asarray(coeffs)
    n = len(c)
    for t in range(1, n // 3 + 1):
        diff = np.flatnonzero(c[t:] != c[:-t])
        start = int(diff[-1]) + 1 if len(diff) else 0
        if start <= n // 4 and n - start >= 3 * t:
            return t, start
    return None


def classify(a: TruncSeries, dim_cap: int = DEFAULT_DIM_CAP) -> str:
    """Heuristic triage: ultimately periodic coefficients suggest a rational
    series, a saturated decimation closure suggests an algebraic one.
    Never a proof in either direction."""
    if _ultimate_period(a.coeffs) is not None:
        return RATIONAL_CANDIDATE
    if kernel_closure(a, dim_cap).saturated:
        return ALGEBRAIC_CANDIDATE
    return UNKNOWN
