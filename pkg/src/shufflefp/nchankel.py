"""Rationality analysis of free-variable series: suffix shifts, the
recursive closure under those shifts with dimension estimates, finite
Hankel blocks and their ranks, and the closure and complexity bounds for
shuffle products and the p-homogeneous form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .errors import OrderExhausted, Unsaturated
from .kernel import _rank_fp
from .ncseries import NCSeries, nc_shuffle, nc_sigma


def rho_shift(a: NCSeries, t) -> NCSeries:
    """The series whose coefficient at word W is (A, W t); drops order by
    the degree of t."""
    t = tuple(t)
    if len(t) >= a.order:
        raise OrderExhausted(
            "shift by a degree-%d word exhausts order %d" % (len(t), a.order)
        )
    out = {}
    for w, c in a.coeffs.items():
        if w[len(w) - len(t) :] == t:
            out[w[: len(w) - len(t)]] = c
    return NCSeries(out, a.k, a.order - len(t), a.p, a.lift)


def _words_below(k, degree):
    """All words of degree < degree, shortest first."""
    out = [()]
    for d in range(1, degree):
        out.extend(product(range(k), repeat=d))
    return out


def _vector(a: NCSeries, words):
    return [a.coeffs.get(w, 0) for w in words]


@dataclass
class ClosureBasis:
    """Estimated spanning set of the closure of a series under suffix shifts."""

    basis: list = field(default_factory=list)
    dim: int = 0
    saturated: bool = False


def recursive_closure(a: NCSeries, dim_cap: int = 32) -> ClosureBasis:
    """Breadth-first closure of {A} under the k suffix shifts rho(x_s).

    Rank decisions happen on the word prefix shared by all basis elements;
    the result is unsaturated when the cap is hit or when a dependence
    verdict would rest on no more word slots than the current dimension.
    """
    if dim_cap < 1:
        raise ValueError("dim_cap must be at least 1")
    result = ClosureBasis()
    if not a.coeffs:
        result.saturated = True
        return result
    members = [a]
    orders = [a.order]
    result.basis.append(a)
    result.dim = 1
    queue = [a]
    while queue:
        s = queue.pop(0)
        if s.order == 1:
            return result  # cannot shift further: order exhausted
        for letter in range(a.k):
            t = rho_shift(s, (letter,))
            length = min(t.order, min(orders))
            words = _words_below(a.k, length)
            rows = [_vector(b, words) for b in members]
            v = _vector(t, words)
            if not any(v):
                continue
            if _rank_fp(rows + [v], a.p) == _rank_fp(rows, a.p):
                if len(words) <= len(members):
                    return result  # dependence on vacuous evidence
                continue
            if len(members) + 1 > dim_cap:
                return result
            members.append(t)
            orders.append(t.order)
            result.basis.append(t)
            result.dim = len(members)
            queue.append(t)
    result.saturated = True
    return result


@dataclass
class HankelSnapshot:
    row_words: list
    col_words: list
    matrix: list
    rank: int


def hankel_rank(a: NCSeries, d_r: int = None, d_c: int = None) -> HankelSnapshot:
    """Finite Hankel block H[u, v] = (A, uv) for words of degree <= d_r and
    <= d_c, with its rank over F_p (a lower bound for the rank of the full
    infinite matrix, equal to it once it stabilises in the block size)."""
    if d_r is None or d_c is None:
        half = (a.order - 1) // 2
        d_r = half if d_r is None else d_r
        d_c = (a.order - 1 - d_r) if d_c is None else d_c
    if d_r + d_c >= a.order:
        raise OrderExhausted(
            "block degrees %d + %d need order > %d" % (d_r, d_c, d_r + d_c)
        )
    rows = _words_below(a.k, d_r + 1)
    cols = _words_below(a.k, d_c + 1)
    mat = [[a.coeffs.get(u + v, 0) for v in cols] for u in rows]
    rank = _rank_fp(mat, a.p) if rows and cols else 0
    return HankelSnapshot(rows, cols, mat, rank)


def closure_product_bound_check(a: NCSeries, b: NCSeries, dim_cap: int = 32) -> dict:
    """Check dim(closure(A sh B)) <= dim(closure(A)) * dim(closure(B)).

    Unsaturated factor closures make the right side untrusted; an
    unsaturated product closure can still prove a violation (its dim is a
    lower bound) but never prove the bound.
    """
    ca = recursive_closure(a, dim_cap)
    cb = recursive_closure(b, dim_cap)
    if not (ca.saturated and cb.saturated):
        raise Unsaturated("factor closures did not saturate under cap %d" % dim_cap)
    cp = recursive_closure(nc_shuffle(a, b), dim_cap)
    bound = ca.dim * cb.dim
    report = {
        "dim_a": ca.dim,
        "dim_b": cb.dim,
        "dim_product": cp.dim,
        "bound": bound,
        "product_saturated": cp.saturated,
    }
    if cp.dim > bound:
        report["holds"] = False
        return report
    if not cp.saturated:
        raise Unsaturated(
            "product closure estimate %d under the bound %d but not saturated"
            % (cp.dim, bound)
        )
    report["holds"] = True
    return report


def sigma_complexity_bound_check(a: NCSeries, dim_cap: int = 32) -> dict:
    """Check dim(closure(sigma(A))) <= 1 + C(dim(closure(A)) + p - 1, p)."""
    ca = recursive_closure(a, dim_cap)
    if not ca.saturated:
        raise Unsaturated("closure of the input did not saturate under cap %d" % dim_cap)
    cs = recursive_closure(nc_sigma(a), dim_cap)
    bound = 1 + math.comb(ca.dim + a.p - 1, a.p)
    report = {
        "dim_a": ca.dim,
        "dim_sigma": cs.dim,
        "bound": bound,
        "sigma_saturated": cs.saturated,
    }
    if cs.dim > bound:
        report["holds"] = False
        return report
    if not cs.saturated:
        raise Unsaturated(
            "image closure estimate %d under the bound %d but not saturated"
            % (cs.dim, bound)
        )
    report["holds"] = True
    return report
