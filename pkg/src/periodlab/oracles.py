"""Independent reference values used by the test-suite and ``selftest``.

Nothing here shares code with the production evaluators: MZVs are summed
directly up to a cutoff K and the tails are closed with Euler-Maclaurin
expansions built on mpmath's own Bernoulli numbers.
"""

from __future__ import annotations

from typing import Sequence

import mpmath
from mpmath import mp, mpf


def _tail_expansion(s: int, order: int) -> dict[int, mpf]:
    """Sum_{m > K} m^-s as {power p: coefficient of K^-p} (asymptotic in K)."""
    out: dict[int, mpf] = {s - 1: mpf(1) / (s - 1), s: mpf(-1) / 2}
    rising = mpf(s)  # (s)_1
    for j in range(1, order + 1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        coeff = mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * rising
        out[s + 2 * j - 1] = out.get(s + 2 * j - 1, 0) + coeff
    return out


def mzv_reference(exponents: Sequence[int], cutoff: int = 60, order: int = 30, dps: int = 50) -> mpf:
    """zeta(n_1..n_d) with 0 < m_1 < ... < m_d, summed as head sums times tails.

    zeta = sum_j P_{j-1}(K) T_j(K) where P collects the inner indices <= K
    and T the outer ones > K.
    """
    d = len(exponents)
    if exponents[-1] < 2:
        raise ValueError("divergent index")
    max_power = 2 * order + sum(exponents) + 5
    with mp.workdps(dps):
        K = mpf(cutoff)
        # head sums: P[j] over m_1 < ... < m_j <= K
        heads = [mpf(1)] + [mpf(0)] * d
        for m in range(1, cutoff + 1):
            for j in range(d, 0, -1):
                heads[j] += heads[j - 1] / mpf(m) ** exponents[j - 1]
        # tails from the outside in; expansion of T_j(x) in powers of 1/x
        tails = [None] * (d + 2)
        tails[d + 1] = {0: mpf(1)}
        values = [mpf(0)] * (d + 2)
        values[d + 1] = mpf(1)
        for j in range(d, 0, -1):
            n = exponents[j - 1]
            acc: dict[int, mpf] = {}
            for p, c in tails[j + 1].items():
                for q, e in _tail_expansion(n + p, order).items():
                    if q <= max_power:
                        acc[q] = acc.get(q, 0) + c * e
            tails[j] = acc
            values[j] = sum(c * K ** (-q) for q, c in acc.items())
        return sum(heads[j - 1] * values[j] for j in range(1, d + 2))


def alternating_reference(exponents: Sequence[int], twists: Sequence[int], terms: int, dps: int = 40) -> mpf:
    """Plain truncated nested sum with m_d <= terms (no acceleration)."""
    d = len(exponents)
    with mp.workdps(dps):
        sums = [mpf(1)] + [mpf(0)] * d
        for m in range(1, terms + 1):
            for j in range(d, 0, -1):
                sums[j] += sums[j - 1] * mpf(twists[j - 1]) ** m / mpf(m) ** exponents[j - 1]
        return sums[d]


def _alternating_tail_sum(k: int, n) -> mpf:
    # sum_{j >= 0} (-1)^j (n + j)^(-k) through Hurwitz zeta (digamma when k = 1)
    if k == 1:
        return (mp.digamma((n + 1) / 2) - mp.digamma(n / 2)) / 2
    return (mp.zeta(k, n / 2) - mp.zeta(k, (n + 1) / 2)) / 2 ** k


def inner_twisted_reference(k_inner: int, k_outer: int, outer_twist: int, dps: int = 45) -> mpf:
    """sum_{0<m<n} (-1)^m m^-k_inner  t^n n^-k_outer  in closed-form pieces.

    The inner partial sum is Li_k(-1) minus its alternating tail, which has a
    Hurwitz-zeta form; the remaining outer series is left to mpmath.nsum.
    """
    with mp.workdps(dps):
        head = mp.polylog(k_inner, -1) * mp.polylog(k_outer, outer_twist)
        tail = mp.nsum(lambda n: (-outer_twist) ** int(n) * _alternating_tail_sum(k_inner, n) / n ** k_outer, [1, mp.inf])
        return head - tail
