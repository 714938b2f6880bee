"""Exact sparse linear algebra over Q.

Rows are ``dict[int, Fraction]`` (column -> non-zero entry).  Everything here
is exact; nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

SparseRow = dict[int, Fraction]

DENSE_FILL = 0.5


class NotInSpan(ValueError):
    """The vector has a component outside the row space."""


@dataclass
class SparseMatrix:
    rows: list[SparseRow]
    ncols: int
    labels: list | None = None

    def __post_init__(self):
        clean = []
        for r in self.rows:
            row = {int(j): Fraction(v) for j, v in r.items() if v != 0}
            for j in row:
                if not 0 <= j < self.ncols:
                    raise ValueError(f"column {j} out of range for {self.ncols} columns")
            clean.append(row)
        self.rows = clean
        if self.labels is not None and len(self.labels) != self.ncols:
            raise ValueError("labels must match the column count")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], labels=None) -> "SparseMatrix":
        ncols = len(rows[0]) if rows else 0
        return cls([{j: Fraction(v) for j, v in enumerate(r) if v} for r in rows], ncols, labels)

    def to_dense(self) -> list[list[Fraction]]:
        return [[r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self.rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass
class RREF:
    rank: int
    pivots: list[int]
    rows: SparseMatrix
    stats: dict = field(default_factory=dict)


def bitsize(row: Mapping[int, Fraction]) -> int:
    return sum(v.numerator.bit_length() + v.denominator.bit_length() for v in row.values())


def _axpy(target: SparseRow, a: Fraction, src: SparseRow) -> None:
    """target += a * src, dropping cancelled entries."""
    for j, v in src.items():
        nv = target.get(j, 0) + a * v
        if nv:
            target[j] = nv
        else:
            target.pop(j, None)


def _normalize(row: SparseRow, col: int) -> SparseRow:
    inv = 1 / row[col]
    return {j: v * inv for j, v in row.items()}


def _dense_reduce(pivot_rows: dict[int, SparseRow], pending: list[SparseRow], ncols: int) -> None:
    """Finish elimination with dense lists once rows have filled in."""
    dense = [[r.get(j, Fraction(0)) for j in range(ncols)] for r in pending]
    # existing pivots first: clear their columns out of the pending block
    for col, prow in sorted(pivot_rows.items()):
        for drow in dense:
            a = drow[col]
            if a:
                for j, v in prow.items():
                    drow[j] -= a * v
    r = 0
    nrows = len(dense)
    for col in range(ncols):
        if col in pivot_rows or r >= nrows:
            continue
        cand = [i for i in range(r, nrows) if dense[i][col]]
        if not cand:
            continue
        best = min(cand, key=lambda i: sum(x.numerator.bit_length() + x.denominator.bit_length() for x in dense[i] if x))
        dense[r], dense[best] = dense[best], dense[r]
        inv = 1 / dense[r][col]
        dense[r] = [x * inv for x in dense[r]]
        prow = dense[r]
        for i in range(r + 1, nrows):
            a = dense[i][col]
            if a:
                row_i = dense[i]
                for j in range(col, ncols):
                    if prow[j]:
                        row_i[j] -= a * prow[j]
        pivot_rows[col] = {j: x for j, x in enumerate(prow) if x}
        r += 1


def rref(m: SparseMatrix) -> RREF:
    """Reduced row-echelon form over Q.

    Pivots are taken at the earliest available column; among candidate rows the
    one with the smallest total bit-size wins (rows are fed smallest-first).
    When the surviving rows fill in beyond half the columns the rest of the
    elimination is done on dense lists.
    """
    ncols = m.ncols
    pending = sorted((dict(r) for r in m.rows if r), key=bitsize)
    pivot_rows: dict[int, SparseRow] = {}
    dense_switch = False

    for idx, row in enumerate(pending):
        while row:
            col = min(row)
            prow = pivot_rows.get(col)
            if prow is None:
                pivot_rows[col] = _normalize(row, col)
                break
            _axpy(row, -row[col], prow)
        if row and len(row) > DENSE_FILL * ncols and ncols > 8:
            rest = [r for r in pending[idx + 1:] if r]
            if rest:
                _dense_reduce(pivot_rows, rest, ncols)
                dense_switch = True
            break

    # back substitution, highest pivot first
    order = sorted(pivot_rows)
    for col in reversed(order):
        prow = pivot_rows[col]
        for other in order:
            if other >= col:
                break
            orow = pivot_rows[other]
            a = orow.get(col)
            if a:
                _axpy(orow, -a, prow)

    rows = [pivot_rows[c] for c in order]
    return RREF(len(rows), order, SparseMatrix(rows, ncols, m.labels), {"dense_fallback": dense_switch})


def express(v: Mapping[int, Fraction], reduced: RREF) -> list[Fraction]:
    """Coefficients ``c`` with ``v == sum(c[i] * rows[i])``; raises :class:`NotInSpan`."""
    coeffs = [Fraction(v.get(p, 0)) for p in reduced.pivots]
    resid: SparseRow = {j: Fraction(x) for j, x in v.items() if x}
    for c, row in zip(coeffs, reduced.rows.rows):
        if c:
            _axpy(resid, -c, row)
    if resid:
        raise NotInSpan(f"vector has components outside the row space at columns {sorted(resid)[:5]}")
    return coeffs


def combine(coeffs: Sequence[Fraction], rows: Sequence[SparseRow]) -> SparseRow:
    out: SparseRow = {}
    for c, r in zip(coeffs, rows):
        if c:
            _axpy(out, Fraction(c), r)
    return out
