"""Double-shuffle relations, per-weight reduction tables and dimension bounds."""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DivergentSymbolError
from .linalg import SparseMatrix, rref
from .words import (
    MZVIndex,
    QLinComb,
    Word,
    admissible_words,
    convergent_indexes,
    index_of_word,
    shuffle,
    stuffle,
    words_to_indexes,
)

CACHE_FORMAT_VERSION = 1
CACHE_ENV = "PERIODLAB_CACHE_DIR"


@dataclass
class RelationSet:
    weight: int
    level: int
    relations: list[QLinComb[MZVIndex]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)


def _is_divergent(p: MZVIndex) -> bool:
    return not p.is_convergent


def _shuffle_stuffle(u: Word, v: Word) -> QLinComb[MZVIndex]:
    su, pu = index_of_word(u)
    sv, pv = index_of_word(v)
    return words_to_indexes(shuffle(u, v)) - stuffle(pu, pv) * (su * sv)


def hoffman_relation(w: Word) -> QLinComb[MZVIndex]:
    """Shuffle minus stuffle with the divergent letter ``1``; divergent terms cancel."""
    one = Word((1,), w.level)
    s1, p1 = index_of_word(one)
    sw, pw = index_of_word(w)
    rel = words_to_indexes(shuffle(one, w)) - stuffle(p1, pw) * (s1 * sw)
    bad = [p for p in rel if _is_divergent(p)]
    if bad:
        raise AssertionError(f"divergent terms survived in the relation for {w}: {[str(p) for p in bad]}")
    return rel


def generate_relations(weight: int, level: int = 1) -> RelationSet:
    """Shuffle-stuffle differences for convergent pairs plus the Hoffman family."""
    out = RelationSet(weight, level)
    if weight < 2:
        return out
    seen: set = set()

    def add(rel: QLinComb[MZVIndex]) -> None:
        if rel and rel not in seen:
            seen.add(rel)
            out.relations.append(rel)

    # at level 2 the weight-1 word m (log 2) is convergent and pairs with everything
    lowest = 1 if level == 2 else 2
    for wu in range(lowest, weight - lowest + 1):
        wv = weight - wu
        if wv < wu:
            break
        left = admissible_words(wu, level)
        right = admissible_words(wv, level)
        for i, u in enumerate(left):
            for v in right[i if wu == wv else 0:]:
                add(_shuffle_stuffle(u, v))
    for w in admissible_words(weight - 1, level):
        add(hoffman_relation(w))
    return out


# --- reduction tables ----------------------------------------------------------------


def _preference(p: MZVIndex):
    return (p.depth, p.exponents, tuple(0 if e == 1 else 1 for e in p.twists))


@dataclass
class ReductionTable:
    weight: int
    level: int
    basis: list[MZVIndex]
    rows: dict[MZVIndex, QLinComb[MZVIndex]]

    def __post_init__(self):
        self._basis_set = set(self.basis)

    def __contains__(self, p: MZVIndex) -> bool:
        return p in self.rows

    def expand(self, p: MZVIndex) -> QLinComb[MZVIndex]:
        if _is_divergent(p):
            raise DivergentSymbolError("divergent symbol; regularize first")
        try:
            return self.rows[p.at_level(self.level)]
        except KeyError:
            raise KeyError(f"{p} is not a weight-{self.weight} level-{self.level} index") from None

    def is_basis(self, p: MZVIndex) -> bool:
        return p in self._basis_set

    def to_json(self) -> dict:
        pos = {b: i for i, b in enumerate(self.basis)}
        rows = []
        for p in sorted(self.rows, key=MZVIndex.sort_key):
            coeffs = [[pos[b], _frac_str(c)] for b, c in sorted(self.rows[p].items(), key=lambda t: pos[t[0]])]
            rows.append({"index": str(p), "coeffs": coeffs})
        return {
            "format_version": CACHE_FORMAT_VERSION,
            "level": self.level,
            "weight": self.weight,
            "basis": [str(b) for b in self.basis],
            "rows": rows,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ReductionTable":
        if data.get("format_version") != CACHE_FORMAT_VERSION:
            raise ValueError(f"unsupported cache format {data.get('format_version')!r}")
        level = int(data["level"])
        basis = [parse_index(s, level) for s in data["basis"]]
        rows = {}
        for r in data["rows"]:
            p = parse_index(r["index"], level)
            rows[p] = QLinComb({basis[int(i)]: Fraction(c) for i, c in r["coeffs"]})
        return cls(int(data["weight"]), level, basis, rows)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


_INDEX_RE = re.compile(r"^\s*zeta\(\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\)\s*$")


def parse_index(text: str, level: int = 1) -> MZVIndex:
    """Parse ``zeta(n1,...,nd)`` (negative entries carry a -1 twist) or ``1``."""
    if text.strip() == "1":
        return MZVIndex((), (), level)
    m = _INDEX_RE.match(text)
    if not m:
        raise ValueError(f"not an index: {text!r}")
    entries = [int(x) for x in m.group(1).split(",")] if m.group(1) else []
    return MZVIndex.signed(entries).at_level(level)


def build_table(weight: int, level: int = 1, relations: RelationSet | None = None) -> ReductionTable:
    """Row-reduce the relations with least-preferred indexes as leading columns."""
    indexes = convergent_indexes(weight, level)
    if weight == 0:
        empty = MZVIndex((), (), level)
        return ReductionTable(0, level, [empty], {empty: QLinComb.single(empty)})
    # pivots land on the earliest columns, so the preferred symbols stay free
    columns = sorted(indexes, key=_preference, reverse=True)
    col = {p: j for j, p in enumerate(columns)}
    rels = relations if relations is not None else generate_relations(weight, level)
    rows = [{col[p]: c for p, c in rel.items()} for rel in rels]
    reduced = rref(SparseMatrix(rows, len(columns), columns))
    pivots = set(reduced.pivots)
    basis = sorted((p for j, p in enumerate(columns) if j not in pivots), key=_preference)
    table: dict[MZVIndex, QLinComb[MZVIndex]] = {b: QLinComb.single(b) for b in basis}
    for pcol, row in zip(reduced.pivots, reduced.rows.rows):
        table[columns[pcol]] = QLinComb({columns[j]: -c for j, c in row.items() if j != pcol})
    return ReductionTable(weight, level, basis, table)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "periodlab"


class TableSet(Mapping[int, ReductionTable]):
    """Lazily built tables for one level, optionally persisted as JSON."""

    def __init__(self, level: int = 1, cache_dir: str | os.PathLike | None = None, use_cache: bool = True):
        self.level = level
        self.use_cache = use_cache
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self._tables: dict[int, ReductionTable] = {}
        self._lock = threading.Lock()

    def _path(self, weight: int) -> Path:
        return self.cache_dir / f"table-L{self.level}-W{weight}.json"

    def _load(self, weight: int) -> ReductionTable | None:
        path = self._path(weight)
        if not (self.use_cache and path.is_file()):
            return None
        try:
            return ReductionTable.from_json(json.loads(path.read_text()))
        except (ValueError, KeyError, TypeError):
            return None

    def _store(self, table: ReductionTable) -> None:
        if not self.use_cache:
            return
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            tmp = self._path(table.weight).with_suffix(".tmp")
            tmp.write_text(json.dumps(table.to_json()))
            tmp.replace(self._path(table.weight))
        except OSError:
            pass

    def __getitem__(self, weight: int) -> ReductionTable:
        with self._lock:
            table = self._tables.get(weight)
            if table is None:
                table = self._load(weight)
                if table is None:
                    table = build_table(weight, self.level)
                    self._store(table)
                self._tables[weight] = table
            return table

    def __iter__(self):
        return iter(sorted(self._tables))

    def __len__(self) -> int:
        return len(self._tables)


def reduce(expr: QLinComb[MZVIndex], tables: Mapping[int, ReductionTable]) -> QLinComb[MZVIndex]:
    """Rewrite a combination of convergent indexes in the table bases."""
    acc: list[tuple[MZVIndex, Fraction]] = []
    for p, c in expr.items():
        if _is_divergent(p):
            raise DivergentSymbolError("divergent symbol; regularize first")
        if p.weight == 0:
            acc.append((p, c))
            continue
        acc.extend((b, c * k) for b, k in tables[p.weight].expand(p).items())
    return QLinComb(acc)


def dims_upper_bound(max_weight: int, level: int = 1, tables: Mapping[int, ReductionTable] | None = None) -> list[int]:
    """Entry n is the basis size of the weight-n table (n = 0..max_weight)."""
    out = []
    for n in range(max_weight + 1):
        if n == 0:
            out.append(1)
        elif n == 1 and level == 1:
            out.append(0)
        else:
            table = tables[n] if tables is not None else build_table(n, level)
            out.append(len(table.basis))
    return out


# --- shuffle regularisation ------------------------------------------------------------


def shuffle_regularize(w: Word) -> QLinComb[Word]:
    """Word combination with the same value once zeta(e0) = zeta(e1) = 0 is imposed.

    The result only contains convergent words (first letter non-zero, last letter
    not 1).  Used for the coefficients of the generating series at z = 1.
    """
    return QLinComb({Word(t, w.level): c for t, c in _regularize(w.letters)})


@lru_cache(maxsize=100_000)
def _regularize(letters: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
    if not letters:
        return (((), Fraction(1)),)
    if letters[-1] == 1:
        r = 0
        while r < len(letters) and letters[-1 - r] == 1:
            r += 1
        v = letters[:-r]
        if not v:
            return ()
        acc: dict[tuple[int, ...], Fraction] = {}
        ones = (1,) * (r - 1)
        for i in range(len(v)):
            for t, c in _regularize(v[:i] + (1,) + v[i:] + ones):
                acc[t] = acc.get(t, 0) - c / r
        return tuple((t, c) for t, c in acc.items() if c)
    if letters[0] == 0:
        s = 0
        while s < len(letters) and letters[s] == 0:
            s += 1
        v = letters[s:]
        if not v:
            return ()
        acc = {}
        zeros = (0,) * (s - 1)
        for i in range(1, len(v) + 1):
            for t, c in _regularize(zeros + v[:i] + (0,) + v[i:]):
                acc[t] = acc.get(t, 0) - c / s
        return tuple((t, c) for t, c in acc.items() if c)
    return ((letters, Fraction(1)),)


def regularized_value_symbol(w: Word) -> QLinComb[MZVIndex]:
    """Regularised zeta_w as a combination of convergent indexes."""
    return words_to_indexes(shuffle_regularize(w))


def relation_residuals(rels: Iterable[QLinComb[MZVIndex]], table: ReductionTable) -> list[QLinComb[MZVIndex]]:
    """Each relation pushed through the table; all entries are zero for a consistent table."""
    return [reduce(rel, {table.weight: table}) for rel in rels]
