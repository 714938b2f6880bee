"""Truncated noncommutative series in e0, e1 and the Hopf-algebra bookkeeping.

Coefficients live in a commutative graded polynomial algebra (:class:`Poly`)
whose generators are ``T`` (weight 1, standing for 2 pi i), MZV symbols and
free formal symbols.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

import mpmath

from .arb import ArbComplex, ArbReal, PrecisionPolicy
from .errors import DomainError
from .numerics import DEFAULT_POLICY, eval_alternating, eval_mzv
from .relations import ReductionTable, reduce, regularized_value_symbol
from .words import MZVIndex, QLinComb, Word, compositions, format_coeff_term, stuffle_lin

# --- graded symbol algebra -------------------------------------------------------------


@dataclass(frozen=True)
class Formal:
    """Free commuting symbol with a weight, e.g. a generic coefficient L_w."""

    name: str
    weight: int = 0

    def __str__(self) -> str:
        return self.name


TWO_PI_I = "T"

Generator = Union[str, MZVIndex, Formal]
Monomial = tuple  # sorted tuple of (generator, power)


def _gen_key(g: Generator):
    if isinstance(g, str):
        return (0, (), g)
    if isinstance(g, MZVIndex):
        return (1, g.sort_key(), "")
    return (2, (), g.name)


def gen_weight(g: Generator) -> int:
    if isinstance(g, str):
        return 1
    return g.weight


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    powers: dict = dict(a)
    for g, k in b:
        powers[g] = powers.get(g, 0) + k
    return tuple(sorted(powers.items(), key=lambda t: _gen_key(t[0])))


def _mono_str(m: Monomial) -> str:
    parts = []
    for g, k in m:
        parts.append(str(g) if k == 1 else f"{g}^{k}")
    return "*".join(parts)


class Poly:
    """Exact-rational commutative polynomial in graded generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def gen(cls, g: Generator, coeff=1) -> "Poly":
        return cls({((g, 1),): Fraction(coeff)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        return cls.gen(x)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def weights(self) -> set[int]:
        return {sum(gen_weight(g) * k for g, k in m) for m in self.terms}

    def t_degree(self) -> int:
        return max((dict(m).get(TWO_PI_I, 0) for m in self.terms), default=0)

    def evaluate(self, policy: PrecisionPolicy = DEFAULT_POLICY, values: Mapping | None = None):
        """Numeric value: T -> 2 pi i, MZV symbols -> their values."""
        with policy.workdps():
            total = ArbReal.exact(0, policy.digits)
            cache: dict = {}
            for m, c in self.terms.items():
                term = ArbReal.exact(c, policy.digits)
                for g, k in m:
                    if g not in cache:
                        cache[g] = _gen_value(g, policy, values)
                    term = term * cache[g] ** k
                total = total + term
            return total

    def sorted_terms(self):
        def key(item):
            m, _ = item
            return (sum(gen_weight(g) * k for g, k in m), [(_gen_key(g), k) for g, k in m])

        return sorted(self.terms.items(), key=key, reverse=True)

    def __str__(self) -> str:
        items = self.sorted_terms()
        if not items:
            return "0"
        return "".join(format_coeff_term(c, _mono_str(m) if m else "", i == 0) for i, (m, c) in enumerate(items))

    def __repr__(self) -> str:
        return f"Poly({self})"


def _gen_value(g: Generator, policy: PrecisionPolicy, values: Mapping | None):
    if values is not None and g in values:
        return values[g]
    if isinstance(g, str):
        with policy.workdps():
            return ArbComplex.exact(mpmath.mpc(0, 2 * mpmath.pi), policy.digits)
    if isinstance(g, MZVIndex):
        return eval_alternating(g, policy) if g.level == 2 else eval_mzv(g, policy)
    raise DomainError(f"formal symbol {g} has no numeric value")


T = Poly.gen(TWO_PI_I)


def linearize(poly: Poly) -> QLinComb[MZVIndex]:
    """Expand products of MZV symbols with stuffle into one linear combination.

    Indexes of mixed level are all lifted to the highest level present.
    """
    level = max((g.level for m in poly.terms for g, _ in m if isinstance(g, MZVIndex)), default=1)
    unit = MZVIndex((), (), level)
    acc: QLinComb[MZVIndex] = QLinComb()
    for mono, c in poly.terms.items():
        term = QLinComb.single(unit)
        for g, k in mono:
            if not isinstance(g, MZVIndex):
                raise DomainError(f"cannot linearise symbol {g}")
            g = g.at_level(level)
            for _ in range(k):
                term = stuffle_lin(term, QLinComb.single(g))
        acc = acc + term * c
    return acc


# --- noncommutative series ---------------------------------------------------------------

E0 = Word((0,))
E1 = Word((1,))
EMPTY = Word(())


def words_upto(weight: int) -> list[Word]:
    out = [EMPTY]
    for n in range(1, weight + 1):
        out.extend(Word(t) for t in itertools.product((0, 1), repeat=n))
    return out


class NCSeries:
    """Series sum_w c_w w over words in {0, 1}, truncated above ``trunc``."""

    def __init__(self, trunc: int, coeffs: Mapping[Word, object] | None = None):
        if trunc < 0:
            raise ValueError("truncation weight must be >= 0")
        self.trunc = trunc
        self.coeffs: dict[Word, Poly] = {}
        for w, c in (coeffs or {}).items():
            if w.level != 1 or any(a not in (0, 1) for a in w.letters):
                raise ValueError(f"series words use the letters 0 and 1 only, got {w}")
            if len(w) <= trunc:
                p = Poly.coerce(c)
                if p:
                    self.coeffs[w] = p

    @classmethod
    def one(cls, trunc: int) -> "NCSeries":
        return cls(trunc, {EMPTY: 1})

    def __getitem__(self, w: Word | str) -> Poly:
        if isinstance(w, str):
            w = Word.parse(w) if w not in ("", "()") else EMPTY
        return self.coeffs.get(w, Poly())

    def __eq__(self, other) -> bool:
        return isinstance(other, NCSeries) and self.coeffs == other.coeffs and self.trunc == other.trunc

    def __add__(self, other: "NCSeries") -> "NCSeries":
        t = min(self.trunc, other.trunc)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, Poly()) + c
        return NCSeries(t, out)

    def __neg__(self) -> "NCSeries":
        return NCSeries(self.trunc, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "NCSeries") -> "NCSeries":
        return self + (-other)

    def scale(self, k) -> "NCSeries":
        k = Poly.coerce(k)
        return NCSeries(self.trunc, {w: k * c for w, c in self.coeffs.items()})

    def __mul__(self, other: "NCSeries") -> "NCSeries":
        return nc_mul(self, other)

    def homogeneous(self, n: int) -> "NCSeries":
        return NCSeries(self.trunc, {w: c for w, c in self.coeffs.items() if len(w) == n})

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"NCSeries({self.trunc}, {self})"


def nc_mul(a: NCSeries, b: NCSeries, trunc: int | None = None) -> NCSeries:
    t = min(a.trunc, b.trunc) if trunc is None else trunc
    out: dict[Word, Poly] = {}
    for u, cu in a.coeffs.items():
        for v, cv in b.coeffs.items():
            if len(u) + len(v) <= t:
                w = u + v
                out[w] = out.get(w, Poly()) + cu * cv
    return NCSeries(t, out)


def nc_inverse(a: NCSeries, trunc: int | None = None) -> NCSeries:
    """Inverse of a series whose constant term is a non-zero rational."""
    t = a.trunc if trunc is None else trunc
    lead = a[EMPTY]
    if not lead or set(lead.terms) != {()}:
        raise DomainError("series needs a non-zero rational constant term to be inverted")
    c0 = lead.constant()
    # a = c0 (1 + x), so a^-1 = c0^-1 sum (-x)^k
    x = NCSeries(t, {w: c * (1 / c0) for w, c in a.coeffs.items() if w != EMPTY})
    out = NCSeries.one(t)
    power = NCSeries.one(t)
    for k in range(1, t + 1):
        power = nc_mul(power, -x, t)
        out = out + power
    return out.scale(Fraction(1) / c0)


def nc_exp(coeff, letter: int, trunc: int) -> NCSeries:
    """exp(coeff * e_letter), cut at ``trunc`` letters."""
    c = Poly.coerce(coeff)
    out = {}
    for k in range(trunc + 1):
        out[Word((letter,) * k)] = c ** k * Fraction(1, math.factorial(k))
    return NCSeries(trunc, out)


def associator(trunc: int, tables: Mapping[int, ReductionTable]) -> NCSeries:
    """Generating series of regularised MZVs with zeta(e0) = zeta(e1) = 0.

    Coefficients are written in the reduction-table bases.
    """
    coeffs: dict[Word, Poly] = {EMPTY: Poly.const(1)}
    for w in words_upto(trunc):
        if not w.letters:
            continue
        sym = regularized_value_symbol(w)
        if not sym:
            continue
        try:
            reduced = reduce(sym, tables)
        except KeyError as exc:
            raise DomainError(f"no reduction table for weight {len(w)}") from exc
        coeffs[w] = Poly({((p, 1),) if p.weight else (): c for p, c in reduced.items()})
    return NCSeries(trunc, coeffs)


def generic_series(trunc: int) -> NCSeries:
    """Series with an independent formal coefficient L_w per non-empty word."""
    coeffs = {EMPTY: Poly.const(1)}
    for w in words_upto(trunc)[1:]:
        coeffs[w] = Poly.gen(Formal(f"L_{w}", len(w)))
    return NCSeries(trunc, coeffs)


@dataclass(frozen=True)
class LeftMultiplication:
    """The operator L -> g L for an invertible series g."""

    series: NCSeries

    def __call__(self, s: NCSeries) -> NCSeries:
        return nc_mul(self.series, s, min(self.series.trunc, s.trunc))

    def inverse(self) -> "LeftMultiplication":
        return LeftMultiplication(nc_inverse(self.series))

    def then(self, other: "LeftMultiplication") -> "LeftMultiplication":
        """Apply self first, then other."""
        return LeftMultiplication(nc_mul(other.series, self.series))


def monodromy_M0(trunc: int) -> LeftMultiplication:
    """Loop around z = 0: left multiplication by exp(T e0)."""
    return LeftMultiplication(nc_exp(T, 0, trunc))


def monodromy_M1(trunc: int, tables: Mapping[int, ReductionTable]) -> LeftMultiplication:
    """Loop around z = 1: left multiplication by Z exp(T e1) Z^-1."""
    z = associator(trunc, tables)
    g = nc_mul(nc_mul(z, nc_exp(T, 1, trunc)), nc_inverse(z))
    return LeftMultiplication(g)


def _word_label(w: Word) -> str:
    return "[" + "".join(str(a) for a in w.letters) + "]"


def format_series(s: NCSeries) -> str:
    """Terms as ``coeff*[word]``, shortest words first."""
    parts = []
    for w in sorted(s.coeffs, key=Word.sort_key):
        c = s.coeffs[w]
        body = _word_label(w)
        if len(c.terms) == 1:
            (m, k), = c.terms.items()
            head = _mono_str(m)
            text = format_coeff_term(k, f"{head}*{body}" if head else body, not parts)
        else:
            text = ("" if not parts else " + ") + f"({c})*{body}"
        parts.append(text)
    return "".join(parts) if parts else "0"


# --- coproduct of classical polylogarithms ---------------------------------------------


@dataclass(frozen=True, order=True)
class PolylogSymbol:
    """``Li_n`` (kind "Li") or ``(ln z)^k / k!`` (kind "log"); log of order 0 is the unit."""

    kind: str
    order: int

    def __post_init__(self):
        if self.kind not in ("Li", "log"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "Li" and self.order < 1 or self.order < 0:
            raise ValueError("bad symbol order")

    def __str__(self) -> str:
        if self.kind == "log":
            return "1" if self.order == 0 else ("log" if self.order == 1 else f"log^{self.order}/{self.order}!")
        return f"Li{self.order}"


UNIT = PolylogSymbol("log", 0)

Tensor = dict  # tuple[PolylogSymbol, ...] -> Fraction


def coproduct_symbol(s: PolylogSymbol) -> Tensor:
    if s.kind == "log":
        return {(PolylogSymbol("log", a), PolylogSymbol("log", s.order - a)): Fraction(1) for a in range(s.order + 1)}
    return coproduct_polylog(s.order)


def coproduct_polylog(n: int) -> Tensor:
    """Delta Li_n = Li_n (x) 1 + sum_{k<n} (ln z)^k/k! (x) Li_{n-k}."""
    if n < 1:
        raise ValueError("polylog order must be >= 1")
    out: Tensor = {(PolylogSymbol("Li", n), UNIT): Fraction(1)}
    for k in range(n):
        key = (PolylogSymbol("log", k), PolylogSymbol("Li", n - k))
        out[key] = out.get(key, 0) + 1
    return out


def apply_on_slot(t: Tensor, slot: int, delta: Callable[[object], Tensor]) -> Tensor:
    """Apply a coproduct to one tensor slot, raising the tensor degree by one."""
    out: Tensor = {}
    for key, c in t.items():
        for pair, d in delta(key[slot]).items():
            new = key[:slot] + pair + key[slot + 1:]
            out[new] = out.get(new, 0) + c * d
    return {k: v for k, v in out.items() if v}


def format_tensor(t: Tensor) -> str:
    items = sorted(t.items(), key=lambda kv: kv[0])
    return "".join(format_coeff_term(c, " (x) ".join(str(s) for s in key), i == 0) for i, (key, c) in enumerate(items)) or "0"


# --- f-alphabet ------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FWord:
    """f2^p f_{a1} ... f_{ar} with odd a_i >= 3 (f2 central)."""

    letters: tuple[int, ...] = ()
    f2_power: int = 0

    def __post_init__(self):
        for a in self.letters:
            if a < 3 or a % 2 == 0:
                raise ValueError(f"f-letters are odd integers >= 3, got f{a}")
        if self.f2_power < 0:
            raise ValueError("f2 power must be non-negative")

    @property
    def weight(self) -> int:
        return sum(self.letters) + 2 * self.f2_power

    def __str__(self) -> str:
        parts = [f"f{a}" for a in self.letters]
        if self.f2_power:
            parts.insert(0, "f2" if self.f2_power == 1 else f"f2^{self.f2_power}")
        return "*".join(parts) if parts else "1"


def deconcat_coproduct(fw: FWord) -> Tensor:
    """Deconcatenation of the odd letters; every power of f2 stays on the right."""
    out: Tensor = {}
    r = len(fw.letters)
    for i in range(r + 1):
        key = (FWord(fw.letters[:i]), FWord(fw.letters[i:], fw.f2_power))
        out[key] = out.get(key, 0) + 1
    return out


def f_words(weight: int) -> list[FWord]:
    """All f-words of the given weight."""
    out = []
    for p in range(weight // 2 + 1):
        rest = weight - 2 * p
        for comp in compositions(rest, range(3, rest + 1, 2)):
            out.append(FWord(comp, p))
    return out


def motivic_dims(max_n: int) -> list[int]:
    """Coefficients of 1/(1 - t^2 - t^3) up to t^max_n."""
    d = []
    for n in range(max_n + 1):
        if n == 0:
            d.append(1)
        else:
            d.append((d[n - 2] if n >= 2 else 0) + (d[n - 3] if n >= 3 else 0))
    return d


def hoffman_count(n: int) -> int:
    """Number of indexes with all entries in {2, 3} and weight n."""
    return sum(1 for _ in compositions(n, (2, 3)))


def odd_letter_dims(max_n: int) -> list[int]:
    """Number of words in f3, f5, ... of each weight (no f2)."""
    return [sum(1 for _ in compositions(n, range(3, n + 1, 2))) if n else 1 for n in range(max_n + 1)]
