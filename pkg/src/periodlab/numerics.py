"""Arbitrary-precision evaluation of polylogarithms, hyperlogarithms and MZVs.

All public functions take a :class:`~periodlab.arb.PrecisionPolicy` and return
balls whose radius bounds the absolute error.  Work is done at
``policy.working_dps``; every series is truncated from an explicit tail bound
(geometric for the power series, empirical two-order agreement for Euler's
transform of alternating sums).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
from mpmath import mp, mpc, mpf

from .arb import ArbComplex, ArbReal, PrecisionPolicy, to_mp
from .errors import DivergentSymbolError, DomainError
from .words import MZVIndex, Word, word_of_index

DEFAULT_POLICY = PrecisionPolicy()

HOELDER_POINT = Fraction(1, 2)


def _ball(value, rad, policy: PrecisionPolicy):
    rad = mpf(rad) + abs(value) * mpf(10) ** (-(policy.working_dps - 3)) + mpf(10) ** (-(policy.working_dps - 3))
    if isinstance(value, mpc) and value.imag != 0:
        return ArbComplex(value, rad, policy.digits)
    if isinstance(value, mpc):
        value = value.real
    return ArbReal(value, rad, policy.digits)


# --- multiple polylogarithm power series ---------------------------------------------


def _li_series(ks: Sequence[int], zs: Sequence, target) -> tuple[object, mpf]:
    """Nested power series Li_{ks}(zs) when every suffix product has modulus < 1.

    Summed in "gap" form: with w_i = z_i z_{i+1} ... z_r every partial quantity
    stays bounded, so no digits are lost to intermediate growth.
    Returns (value, tail bound).
    """
    r = len(ks)
    if r == 0:
        return mpf(1), mpf(0)
    suffix = [None] * r
    acc = mpf(1)
    for i in range(r - 1, -1, -1):
        acc = acc * zs[i]
        suffix[i] = acc
    rho = max(abs(w) for w in suffix)
    if rho >= 1:
        raise DomainError(f"series diverges: suffix product modulus {mpmath.nstr(rho, 5)} >= 1")
    n_terms = _geometric_cutoff(rho, r, ks[-1], target)
    w = list(suffix) + [mpf(1)]
    # a[j] = A_j(m); A_0(m) = w_1^m
    a = [mpf(1)] + [mpf(0)] * r
    for m in range(1, n_terms + 1):
        for j in range(r, 0, -1):
            a[j] = w[j] * a[j] + w[j - 1] * a[j - 1] / mpf(m) ** ks[j - 1]
        a[0] = a[0] * w[0]
    tail = _geometric_tail(rho, r, ks[-1], n_terms)
    return a[r], tail


def _geometric_tail(rho, r: int, k_last: int, n: int) -> mpf:
    q = rho * (n + 1) / mpf(n + 2 - r) if n + 2 - r > 0 else mpf(1)
    if q >= 1:
        return mpf("inf")
    return mpmath.binomial(n, r - 1) * rho ** (n + 1) / ((1 - q) * mpf(n + 1) ** k_last)


def _geometric_cutoff(rho, r: int, k_last: int, target) -> int:
    if rho == 0:
        return r
    n = max(r, 8)
    while _geometric_tail(rho, r, k_last, n) > target:
        n = int(n * 1.25) + 4
        if n > 10_000_000:
            raise DomainError("series converges too slowly for the requested precision")
    # tighten: step back while the bound still holds
    lo = max(r, n // 2)
    while lo < n:
        mid = (lo + n) // 2
        if _geometric_tail(rho, r, k_last, mid) <= target:
            n = mid
        else:
            lo = mid + 1
    return n


def _index_blocks(letters: Sequence) -> tuple[int, list, list[int]]:
    """Split ``0^{n0} s_1 0^{n1-1} ... s_d 0^{nd-1}`` into (n0, sigmas, ns)."""
    n0 = 0
    while n0 < len(letters) and letters[n0] == 0:
        n0 += 1
    sigmas: list = []
    ns: list[int] = []
    for a in letters[n0:]:
        if a == 0:
            ns[-1] += 1
        else:
            sigmas.append(a)
            ns.append(1)
    return n0, sigmas, ns


def _word_series(letters: Sequence, z, target) -> tuple[object, mpf]:
    """L_w(z) from the finite combination of log powers and Li series.

    (-1)^d L_{0^{n0} s_1 0^{n1-1} ... s_d 0^{nd-1}}(z)
        = sum_{k} (-1)^{k0+n0} prod_i C(k_i - 1, n_i - 1)
              (log z)^{k0}/k0!  Li_{k_1..k_d}(s_2/s_1, ..., s_d/s_{d-1}, z/s_d)
    over k0 >= 0, k_i >= n_i with k0 + ... + kd = n0 + ... + nd.
    """
    n0, sigmas, ns = _index_blocks(letters)
    d = len(sigmas)
    if d == 0:
        if n0 == 0:
            return mpf(1), mpf(0)
        return mpmath.log(z) ** n0 / mpmath.factorial(n0), mpf(0)
    args = [sigmas[i + 1] / sigmas[i] for i in range(d - 1)] + [z / sigmas[-1]]
    logz = mpmath.log(z) if n0 else None
    total = mpf(0)
    err = mpf(0)
    for extra in _distributions(n0, d + 1):
        k0 = extra[0]
        ks = [n + e for n, e in zip(ns, extra[1:])]
        coeff = (-1) ** (k0 + n0) * math.prod(math.comb(k - 1, n - 1) for k, n in zip(ks, ns))
        lp = logz ** k0 / mpmath.factorial(k0) if k0 else mpf(1)
        val, tail = _li_series(ks, args, target)
        total += coeff * lp * val
        err += abs(coeff * lp) * tail
    return (-1) ** d * total, err


def _distributions(total: int, slots: int):
    """All tuples of ``slots`` non-negative ints summing to ``total``."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _distributions(total - first, slots - 1):
            yield (first,) + rest


def _numeric_letters(w) -> list:
    if isinstance(w, Word):
        return [mpf(a) for a in w.letters]
    return [to_mp(a) for a in w]


def eval_word(w, z, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbComplex | ArbReal:
    """Hyperlogarithm L_w(z) inside the disc |z| < min |sigma| of convergence."""
    with policy.workdps():
        letters = _numeric_letters(w)
        zz = to_mp(z)
        nonzero = [abs(a) for a in letters if a != 0]
        if nonzero and not abs(zz) < min(nonzero):
            raise DomainError(f"|z| = {mpmath.nstr(abs(zz), 8)} outside the series domain |z| < {mpmath.nstr(min(nonzero), 8)}")
        if zz == 0:
            if letters and all(a == 0 for a in letters):
                raise DomainError("L_{0^n} is singular at z = 0")
            return _ball(mpf(1) if not letters else mpf(0), 0, policy)
        if zz.imag == 0 if isinstance(zz, mpc) else True:
            zr = mpf(mpmath.re(zz))
            if letters and letters[0] == 0 and zr < 0:
                zz = mpc(zr, 0)
        value, err = _word_series(letters, zz, _target(policy))
        return _ball(value, err, policy)


def _target(policy: PrecisionPolicy) -> mpf:
    return mpf(10) ** (-(policy.digits + 8))


# --- values at z = 1 -----------------------------------------------------------------


def _hoelder_pieces(letters: Sequence) -> list[tuple[list, list]]:
    n = len(letters)
    out = []
    for k in range(n + 1):
        prefix = list(letters[:k])
        suffix = [1 - a for a in reversed(letters[k:])]
        out.append((prefix, suffix))
    return out


def _check_hoelder_letters(letters: Sequence) -> None:
    half = mpf(1) / 2
    for a in letters:
        if a == 0 or a == 1:
            continue
        if not abs(a) > half or not abs(1 - a) > half:
            raise DomainError(f"letter {mpmath.nstr(a, 8)} too close to the split point 1/2")


def word_at_one(w, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbComplex | ArbReal:
    """Regularised value L_w(1) of a word whose last letter is not 1.

    Uses the path split at 1/2:  L_w(1) = sum_{w = uv} (-1)^{|v|} L_u(1/2) L_{tau v}(1/2)
    where tau reverses v and sends each letter s to 1 - s.
    """
    with policy.workdps():
        letters = _numeric_letters(w)
        if letters and letters[-1] == 1:
            raise DivergentSymbolError("word ends in letter 1: value at z = 1 diverges")
        _check_hoelder_letters(letters)
        half = mpf(1) / 2
        target = _target(policy) / (len(letters) + 1)
        total = mpf(0)
        err = mpf(0)
        for prefix, suffix in _hoelder_pieces(letters):
            u, eu = _word_series(prefix, half, target)
            v, ev = _word_series(suffix, half, target)
            sign = (-1) ** len(suffix)
            total += sign * u * v
            err += abs(u) * ev + abs(v) * eu + eu * ev
        return _ball(total, err, policy)


def eval_mzv(p: MZVIndex, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Value of a convergent index (any level) via its word at z = 1."""
    if not p.is_convergent:
        raise DivergentSymbolError(f"{p} is divergent")
    return _eval_mzv_cached(p, policy.digits, policy.guard)


@lru_cache(maxsize=4096)
def _eval_mzv_cached(p: MZVIndex, digits: int, guard: int) -> ArbReal:
    policy = PrecisionPolicy(digits, guard)
    sign, w = word_of_index(p)
    val = word_at_one(w, policy)
    return sign * val


def eval_Li(ks: Sequence[int], zs: Sequence, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Li_{k_1..k_r}(z_1..z_r) = sum_{0<m_1<...<m_r} prod z_i^{m_i} / m_i^{k_i}."""
    ks = [int(k) for k in ks]
    if len(ks) != len(zs):
        raise ValueError("exponent and argument vectors differ in length")
    if any(k < 1 for k in ks):
        raise ValueError("exponents must be >= 1")
    if not ks:
        return ArbReal.exact(1, policy.digits)
    with policy.workdps():
        zz = [to_mp(z) for z in zs]
        suffix = []
        acc = mpf(1)
        for z in reversed(zz):
            acc = acc * z
            suffix.append(abs(acc))
        rho = max(suffix)
        if rho < 1:
            val, tail = _li_series(ks, zz, _target(policy))
            return _ball(val, tail, policy)
        slack = mpf(10) ** (-(policy.working_dps - 5))
        if rho > 1 + slack:
            raise DomainError(f"series diverges: a suffix product has modulus {mpmath.nstr(rho, 8)} > 1")
        # on the unit circle: rewrite as a word at z = 1
        r = len(ks)
        letters: list = []
        for i in range(r):
            prod = mpf(1)
            for z in zz[i:]:
                prod *= z
            sigma = 1 / prod
            if abs(sigma - 1) < slack:
                sigma = mpf(1)
            elif abs(sigma + 1) < slack:
                sigma = mpf(-1)
            letters.append(sigma)
            letters.extend([mpf(0)] * (ks[i] - 1))
        if letters[-1] == 1:
            raise DivergentSymbolError("outermost sum diverges (k_r = 1 with z_r = 1)")
    return (-1) ** r * word_at_one(letters, policy)


# --- alternating sums ----------------------------------------------------------------


def _euler_tail(b: Callable[[int], mpf], start: int, eps, max_order: int) -> tuple[mpf, mpf]:
    """sum_{l >= start} (-1)^(l-start) b(l) by Euler's transform.

    sum_j (-1)^j (Delta^j b)(start) / 2^(j+1); stops once two consecutive
    orders change the sum by less than ``eps``.
    """
    # diag[i] holds Delta^i b at position start + (j - i) after step j
    diag = [b(start)]
    total = diag[0] / 2
    quiet = 0
    for j in range(1, max_order + 1):
        new = [b(start + j)]
        for i in range(j):
            new.append(new[i] - diag[i])
        diag = new
        # Delta^j b(start) is the last entry of the updated diagonal
        term = (-1) ** j * diag[j] / mpf(2) ** (j + 1)
        total += term
        if abs(term) < eps:
            quiet += 1
            if quiet >= 2:
                return total, 2 * abs(term) + eps
        else:
            quiet = 0
    raise DomainError("Euler transform did not settle; series is not smooth enough")


def _alternating(b: Callable[[int], mpf], policy: PrecisionPolicy) -> tuple[mpf, mpf]:
    """sum_{l >= 1} (-1)^l b(l) for smooth b, direct head plus transformed tail."""
    start = policy.digits + 12
    extra = int(0.35 * 3 * policy.working_dps) + 10
    with mp.workdps(policy.working_dps + extra):
        head = mpf(0)
        for l in range(1, start):
            head += (-1) ** l * b(l)
        eps = mpf(10) ** (-(policy.digits + 8))
        tail, err = _euler_tail(b, start, eps, 3 * policy.working_dps + 40)
        return head + (-1) ** start * tail, err


def phi_real(s, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Euler's alternating function phi(s) = sum (-1)^(n-1) n^(-s) for real s > 0."""
    with policy.workdps():
        ss = to_mp(s)
        if isinstance(ss, mpc) or ss <= 0:
            raise DomainError("phi(s) is only summed here for real s > 0")
    val, err = _alternating(lambda l: mpf(l) ** (-ss), policy)
    with policy.workdps():
        return _ball(-val, err, policy)


def eval_alternating(p: MZVIndex, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Value Li_n(e_1..e_d) of a level-2 index.

    Depth one and indexes whose only twist is the outermost one are summed
    directly, inner partial sums carried along, with the outer alternating sum
    accelerated by Euler's transform.  Indexes with an inner twist have
    oscillating partial sums which the transform cannot smooth; those go
    through the word at z = 1.
    """
    if not p.is_convergent:
        raise DivergentSymbolError(f"{p} is divergent")
    if all(e == 1 for e in p.twists):
        return eval_mzv(p, policy)
    if any(e != 1 for e in p.twists[:-1]):
        return eval_mzv(p, policy)
    return _eval_outer_alternating(p, policy.digits, policy.guard)


@lru_cache(maxsize=1024)
def _eval_outer_alternating(p: MZVIndex, digits: int, guard: int) -> ArbReal:
    policy = PrecisionPolicy(digits, guard)
    inner = p.exponents[:-1]
    n_last = p.exponents[-1]
    cache: dict[int, mpf] = {}
    state = {"m": 0, "sums": None}

    def inner_sum(upto: int) -> mpf:
        # S(upto) = sum over 0<m_1<...<m_{d-1} <= upto of prod m_i^{-n_i}
        if state["sums"] is None:
            state["sums"] = [mpf(1)] + [mpf(0)] * len(inner)
        sums = state["sums"]
        while state["m"] < upto:
            m = state["m"] + 1
            for j in range(len(inner), 0, -1):
                sums[j] += sums[j - 1] / mpf(m) ** inner[j - 1]
            state["m"] = m
            cache[m] = sums[-1]
        return cache.get(upto, sums[-1]) if upto > 0 else sums[-1]

    def b(l: int) -> mpf:
        s = inner_sum(l - 1) if l > 1 else (mpf(1) if not inner else mpf(0))
        return s / mpf(l) ** n_last

    val, err = _alternating(b, policy)
    with policy.workdps():
        return _ball(val, err, policy)


def phi(exponents: Sequence[int], policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Euler's phi(n_1..n_d) = sum_{k_1<...<k_d} prod (-1)^(k_i-1) / k_i^{n_i}."""
    exponents = tuple(exponents)
    val = eval_alternating(MZVIndex.phi(exponents), policy)
    return val if len(exponents) % 2 == 0 else -val


# --- closed forms and special functions ----------------------------------------------


def zeta2_fast(policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """zeta(2) = (log 2)^2 + 2 sum 1/(n^2 2^n)."""
    with policy.workdps():
        target = mpf(10) ** (-(policy.digits + 5))
        n = 1
        while 1 / (mpf(n + 1) ** 2 * mpf(2) ** n) > target:
            n += 1
        s = mpf(0)
        for k in range(1, n + 1):
            s += 1 / (mpf(k) ** 2 * mpf(2) ** k)
        tail = 1 / (mpf(n + 1) ** 2 * mpf(2) ** n)
        return _ball(mpmath.ln2 ** 2 + 2 * s, 2 * tail, policy)


def zeta2_partial(n_terms: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Same series cut after ``n_terms`` terms, with its tail bound as radius."""
    with policy.workdps():
        s = sum(1 / (mpf(k) ** 2 * mpf(2) ** k) for k in range(1, n_terms + 1))
        tail = 1 / (mpf(n_terms + 1) ** 2 * mpf(2) ** n_terms)
        return _ball(mpmath.ln2 ** 2 + 2 * s, 2 * tail, policy)


def _series_divide(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    q: list[Fraction] = []
    for n in range(len(num)):
        acc = num[n] - sum(q[k] * den[n - k] for k in range(n))
        q.append(acc / den[0])
    return q


@lru_cache(maxsize=None)
def _cot_coefficients(order: int) -> tuple[Fraction, ...]:
    # z cot z as a series in x = z^2: cos-type over sin-type
    num = [Fraction((-1) ** k, math.factorial(2 * k)) for k in range(order + 1)]
    den = [Fraction((-1) ** k, math.factorial(2 * k + 1)) for k in range(order + 1)]
    return tuple(_series_divide(num, den))


def zeta_even_exact(two_n: int) -> Fraction:
    """Rational c with zeta(2n) = c * pi^(2n)."""
    if two_n < 2 or two_n % 2:
        raise ValueError("argument must be an even integer >= 2")
    n = two_n // 2
    q = _cot_coefficients(n)
    # z cot z = 1 - 2 sum zeta(2n) (z^2/pi^2)^n
    return -q[n] / 2


def bernoulli_even(two_k: int) -> Fraction:
    """B_{2k} from the even zeta values."""
    k = two_k // 2
    if two_k == 0:
        return Fraction(1)
    return (-1) ** (k + 1) * 2 * math.factorial(two_k) * zeta_even_exact(two_k) / 4 ** k


def gamma(x, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """Gamma(x) for real x > 0: Stirling series at x + N, shifted back down."""
    with policy.workdps(5):
        xx = to_mp(x)
        if isinstance(xx, mpc) or xx <= 0:
            raise DomainError("gamma is implemented for real x > 0 only")
        eps = mpf(10) ** (-(policy.digits + 8))
        y0 = max(xx, mpf(policy.working_dps))
        shift = int(mpmath.ceil(y0 - xx))
        y = xx + shift
        series = mpf(0)
        k = 1
        while True:
            b = bernoulli_even(2 * k)
            series += mpf(b.numerator) / b.denominator / (2 * k * (2 * k - 1) * y ** (2 * k - 1))
            nb = bernoulli_even(2 * k + 2)
            bound = abs(mpf(nb.numerator) / nb.denominator) / ((2 * k + 2) * (2 * k + 1) * y ** (2 * k + 1))
            if bound < eps:
                break
            k += 1
        lg = (y - mpf(1) / 2) * mpmath.log(y) - y + mpmath.log(2 * mpmath.pi) / 2 + series
        g = mpmath.exp(lg)
        for j in range(shift):
            g /= xx + j
        return _ball(g, abs(g) * 2 * bound, policy)


def eta_funceq_residual(s, policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    """phi(1-s)/phi(s) + Gamma(s)(2^s - 1)cos(pi s/2) / ((2^(s-1) - 1) pi^s)."""
    with policy.workdps():
        ss = to_mp(s)
        if isinstance(ss, mpc) or not (0 < ss < 1):
            raise DomainError("functional-equation check needs real 0 < s < 1")
        reflected = 1 - ss
    lhs = phi_real(reflected, policy) / phi_real(ss, policy)
    g = gamma(ss, policy)
    with policy.workdps():
        factor = (mpf(2) ** ss - 1) * mpmath.cos(mpmath.pi * ss / 2) / ((mpf(2) ** (ss - 1) - 1) * mpmath.pi ** ss)
        rhs = -(g * _ball(factor, 0, policy))
        return lhs - rhs


def pi_value(policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    with policy.workdps():
        return _ball(+mpmath.pi, 0, policy)


def log2_value(policy: PrecisionPolicy = DEFAULT_POLICY) -> ArbReal:
    with policy.workdps():
        return _ball(+mpmath.ln2, 0, policy)
