"""Words, MZV indexes and the two commutative products on them.

Letters are stored as the singular point they stand for: ``0``, ``1`` and,
at level 2, ``-1``.  Text form uses ``0``, ``1`` and ``m`` (for ``-1``), so the
word of zeta(2) is ``"10"``.  Concatenation is to the right: the last letter
belongs to the outermost integration.

An :class:`MZVIndex` ``(n_1..n_d; e_1..e_d)`` denotes the nested sum

    sum_{0 < k_1 < ... < k_d} prod e_i**k_i / k_i**n_i  =  Li_{n}(e_1, ..., e_d)

so twists are polylogarithm arguments.  The alternating function of Euler,
``phi(n_1..n_d)``, is ``(-1)**d`` times the all-twisted index.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Generic, Iterable, Iterator, Mapping, TypeVar, Union

LEVELS = (1, 2)
_LETTER_TEXT = {0: "0", 1: "1", -1: "m"}
_TEXT_LETTER = {v: k for k, v in _LETTER_TEXT.items()}
# canonical letter order: 0 < root 0 (sigma=1) < root 1 (sigma=-1)
_LETTER_RANK = {0: 0, 1: 1, -1: 2}


class AlphabetError(ValueError):
    """Operands live over different alphabets (levels)."""


@dataclass(frozen=True)
class Alphabet:
    level: int = 1

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(f"unsupported level {self.level!r}; expected 1 or 2")

    @property
    def roots(self) -> tuple[int, ...]:
        return (1,) if self.level == 1 else (1, -1)

    @property
    def letters(self) -> tuple[int, ...]:
        return (0,) + self.roots


def _check_level(level: int) -> None:
    if level not in LEVELS:
        raise ValueError(f"unsupported level {level!r}; expected 1 or 2")


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()
    level: int = 1

    def __post_init__(self):
        _check_level(self.level)
        allowed = Alphabet(self.level).letters
        for a in self.letters:
            if a not in allowed:
                raise ValueError(f"letter {a!r} not in level-{self.level} alphabet")

    @classmethod
    def parse(cls, text: str, level: int | None = None) -> "Word":
        """Read compact text such as ``"110"`` or ``"1m0"``."""
        text = text.strip()
        if text in ("", "()"):
            return cls((), level or 1)
        try:
            letters = tuple(_TEXT_LETTER[c] for c in text)
        except KeyError as exc:
            raise ValueError(f"bad letter {exc.args[0]!r} in word {text!r}") from None
        if level is None:
            level = 2 if -1 in letters else 1
        return cls(letters, level)

    def __str__(self) -> str:
        return "".join(_LETTER_TEXT[a] for a in self.letters) or "()"

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if other.level != self.level:
            raise AlphabetError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.level)

    @property
    def weight(self) -> int:
        return len(self.letters)

    @property
    def depth(self) -> int:
        return sum(1 for a in self.letters if a != 0)

    @property
    def convergent_at_one(self) -> bool:
        return not self.letters or self.letters[-1] != 1

    @property
    def log_free_at_zero(self) -> bool:
        return not self.letters or any(a != 0 for a in self.letters)

    def at_level(self, level: int) -> "Word":
        if level < self.level:
            raise AlphabetError(f"word {self} needs level {self.level}")
        return Word(self.letters, level)

    def sort_key(self):
        return (len(self.letters), tuple(_LETTER_RANK[a] for a in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()


@dataclass(frozen=True)
class MZVIndex:
    exponents: tuple[int, ...] = ()
    twists: tuple[int, ...] | None = None
    level: int = 1

    def __post_init__(self):
        _check_level(self.level)
        if self.twists is None:
            object.__setattr__(self, "twists", (1,) * len(self.exponents))
        if len(self.twists) != len(self.exponents):
            raise ValueError("exponents and twists differ in length")
        if any((not isinstance(n, int)) or n < 1 for n in self.exponents):
            raise ValueError(f"index entries must be integers >= 1, got {self.exponents}")
        roots = Alphabet(self.level).roots
        if any(e not in roots for e in self.twists):
            raise ValueError(f"twists {self.twists} not allowed at level {self.level}")

    @classmethod
    def signed(cls, entries: Iterable[int], level: int | None = None) -> "MZVIndex":
        """Build from signed entries: ``-n`` marks a twist of -1 on that slot."""
        entries = tuple(entries)
        if any(n == 0 for n in entries):
            raise ValueError("index entries must be non-zero")
        twists = tuple(1 if n > 0 else -1 for n in entries)
        if level is None:
            level = 2 if -1 in twists else 1
        return cls(tuple(abs(n) for n in entries), twists, level)

    @classmethod
    def phi(cls, exponents: Iterable[int]) -> "MZVIndex":
        exponents = tuple(exponents)
        return cls(exponents, (-1,) * len(exponents), 2)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(n * e for n, e in zip(self.exponents, self.twists))

    @property
    def weight(self) -> int:
        return sum(self.exponents)

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def is_convergent(self) -> bool:
        if not self.exponents:
            return True
        return self.exponents[-1] >= 2 or self.twists[-1] != 1

    def at_level(self, level: int) -> "MZVIndex":
        if level < self.level:
            raise AlphabetError(f"index {self} needs level {self.level}")
        return MZVIndex(self.exponents, self.twists, level)

    def __str__(self) -> str:
        if not self.exponents:
            return "1"
        return "zeta(" + ",".join(str(n) for n in self.entries) + ")"

    def sort_key(self):
        return word_of_index(self)[1].sort_key()

    def __lt__(self, other: "MZVIndex") -> bool:
        return self.sort_key() < other.sort_key()


K = TypeVar("K", Word, MZVIndex)
Scalar = Union[int, Fraction]


class QLinComb(Generic[K]):
    """Finite Q-linear combination of words or indexes.  Zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[K, Scalar] | Iterable[tuple[K, Scalar]] = ()):
        acc: dict = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[key] += c
        self._terms = {k: Fraction(v) for k, v in acc.items() if v != 0}

    @classmethod
    def single(cls, key: K, coeff: Scalar = 1) -> "QLinComb[K]":
        return cls({key: coeff})

    def __iter__(self) -> Iterator[K]:
        return iter(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __getitem__(self, key: K) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, QLinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "QLinComb[K]") -> "QLinComb[K]":
        if not isinstance(other, QLinComb):
            return NotImplemented
        return QLinComb(itertools.chain(self.items(), other.items()))

    def __sub__(self, other: "QLinComb[K]") -> "QLinComb[K]":
        if not isinstance(other, QLinComb):
            return NotImplemented
        return QLinComb(itertools.chain(self.items(), ((k, -c) for k, c in other.items())))

    def __neg__(self) -> "QLinComb[K]":
        return QLinComb({k: -c for k, c in self.items()})

    def __mul__(self, scalar: Scalar) -> "QLinComb[K]":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return QLinComb({k: c * scalar for k, c in self.items()})

    __rmul__ = __mul__

    def weights(self) -> set[int]:
        return {k.weight for k in self._terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def sorted_items(self, descending: bool = True) -> list[tuple[K, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key(), reverse=descending)

    def __str__(self) -> str:
        return format_lincomb(self)

    def __repr__(self) -> str:
        return f"QLinComb({self})"


def format_coeff_term(coeff: Fraction, body: str, first: bool) -> str:
    sign = "-" if coeff < 0 else "+"
    mag = abs(coeff)
    if body == "1":
        text = str(mag)
    elif mag == 1:
        text = body
    else:
        text = f"{mag}*{body}"
    if first:
        return text if sign == "+" else f"-{text}"
    return f" {sign} {text}"


def format_lincomb(comb: QLinComb, descending: bool = True) -> str:
    items = comb.sorted_items(descending)
    if not items:
        return "0"
    return "".join(format_coeff_term(c, str(k), i == 0) for i, (k, c) in enumerate(items))


# --- conversions ------------------------------------------------------------------


def word_of_index(p: MZVIndex) -> tuple[int, Word]:
    """Return ``(sign, w)`` with ``value(p) = sign * zeta_w``; sign is ``(-1)**depth``."""
    letters: list[int] = []
    d = p.depth
    for i, n in enumerate(p.exponents):
        sigma = math.prod(p.twists[i:])
        letters.append(sigma)
        letters.extend([0] * (n - 1))
    return (-1) ** d, Word(tuple(letters), p.level)


def index_of_word(w: Word) -> tuple[int, MZVIndex]:
    """Inverse of :func:`word_of_index`; the word must not start with ``0``."""
    if w.letters and w.letters[0] == 0:
        raise ValueError(f"word {w} starts with 0; leading zeros are not an index form")
    sigmas: list[int] = []
    exps: list[int] = []
    for a in w.letters:
        if a == 0:
            exps[-1] += 1
        else:
            sigmas.append(a)
            exps.append(1)
    twists = [sigmas[i + 1] * sigmas[i] for i in range(len(sigmas) - 1)]
    if sigmas:
        twists.append(sigmas[-1])
    d = len(exps)
    return (-1) ** d, MZVIndex(tuple(exps), tuple(twists), w.level)


def weight(x) -> int:
    return x.weight


def depth(x) -> int:
    return x.depth


def is_convergent(x) -> bool:
    if isinstance(x, Word):
        return x.convergent_at_one
    return x.is_convergent


def indexes_to_words(comb: QLinComb[MZVIndex]) -> QLinComb[Word]:
    out: list[tuple[Word, Fraction]] = []
    for p, c in comb.items():
        s, w = word_of_index(p)
        out.append((w, s * c))
    return QLinComb(out)


def words_to_indexes(comb: QLinComb[Word]) -> QLinComb[MZVIndex]:
    out: list[tuple[MZVIndex, Fraction]] = []
    for w, c in comb.items():
        s, p = index_of_word(w)
        out.append((p, s * c))
    return QLinComb(out)


# --- products ----------------------------------------------------------------------


@lru_cache(maxsize=200_000)
def _shuffle_tuples(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[tuple[int, ...], int] = defaultdict(int)
    a, b = u[0], v[0]
    for w, c in _shuffle_tuples(u[1:], v):
        acc[(a,) + w] += c
    for w, c in _shuffle_tuples(u, v[1:]):
        acc[(b,) + w] += c
    return tuple(acc.items())


def shuffle(u: Word, v: Word) -> QLinComb[Word]:
    """Shuffle product of two words over the same alphabet."""
    if u.level != v.level:
        raise AlphabetError(f"shuffle of level-{u.level} and level-{v.level} words")
    return QLinComb({Word(w, u.level): c for w, c in _shuffle_tuples(u.letters, v.letters)})


Entry = tuple[int, int]  # (exponent, twist)


@lru_cache(maxsize=200_000)
def _stuffle_tuples(p: tuple[Entry, ...], q: tuple[Entry, ...]) -> tuple[tuple[tuple[Entry, ...], int], ...]:
    if not p:
        return ((q, 1),)
    if not q:
        return ((p, 1),)
    acc: dict[tuple[Entry, ...], int] = defaultdict(int)
    a, b = p[-1], q[-1]
    merged = (a[0] + b[0], a[1] * b[1])
    for w, c in _stuffle_tuples(p[:-1], q):
        acc[w + (a,)] += c
    for w, c in _stuffle_tuples(p, q[:-1]):
        acc[w + (b,)] += c
    for w, c in _stuffle_tuples(p[:-1], q[:-1]):
        acc[w + (merged,)] += c
    return tuple(acc.items())


def _entries(p: MZVIndex) -> tuple[Entry, ...]:
    return tuple(zip(p.exponents, p.twists))


def stuffle(p: MZVIndex, q: MZVIndex) -> QLinComb[MZVIndex]:
    """Stuffle (quasi-shuffle) product of nested-sum indexes of the same level."""
    if p.level != q.level:
        raise AlphabetError(f"stuffle of level-{p.level} and level-{q.level} indexes")
    out = {}
    for ents, c in _stuffle_tuples(_entries(p), _entries(q)):
        exps = tuple(e[0] for e in ents)
        tw = tuple(e[1] for e in ents)
        out[MZVIndex(exps, tw, p.level)] = c
    return QLinComb(out)


def shuffle_lin(a: QLinComb[Word], b: QLinComb[Word]) -> QLinComb[Word]:
    acc: list[tuple[Word, Fraction]] = []
    for u, cu in a.items():
        for v, cv in b.items():
            acc.extend((w, cu * cv * c) for w, c in shuffle(u, v).items())
    return QLinComb(acc)


def stuffle_lin(a: QLinComb[MZVIndex], b: QLinComb[MZVIndex]) -> QLinComb[MZVIndex]:
    acc: list[tuple[MZVIndex, Fraction]] = []
    for p, cp in a.items():
        for q, cq in b.items():
            acc.extend((r, cp * cq * c) for r, c in stuffle(p, q).items())
    return QLinComb(acc)


# --- enumeration -------------------------------------------------------------------


def admissible_words(weight: int, level: int = 1) -> list[Word]:
    """Words of the given weight starting with a root and not ending in ``1``.

    These are exactly the words of convergent indexes.
    """
    if weight <= 0:
        return [Word((), level)] if weight == 0 else []
    alpha = Alphabet(level)
    out = []
    for letters in itertools.product(alpha.letters, repeat=weight):
        if letters[0] != 0 and letters[-1] != 1:
            out.append(Word(letters, level))
    out.sort(key=Word.sort_key)
    return out


def convergent_indexes(weight: int, level: int = 1) -> list[MZVIndex]:
    return [index_of_word(w)[1] for w in admissible_words(weight, level)]


def compositions(n: int, parts: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``n``, optionally restricted to the given part sizes."""
    allowed = None if parts is None else sorted(set(parts))
    if n == 0:
        yield ()
        return
    choices = range(1, n + 1) if allowed is None else [p for p in allowed if p <= n]
    for first in choices:
        for rest in compositions(n - first, allowed):
            yield (first,) + rest
