"""Exact Gaussian elimination over F_p and Q.

:class:`EchelonBasis` keeps an incrementally built sparse echelon form (pivot =
smallest column index of each stored row), which is what span-membership tests
use. :func:`row_reduce` and :func:`in_span` are the matrix-level wrappers.
"""

from __future__ import annotations

import csv
import heapq
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Mapping, Sequence, Union

from .field import Field, Scalar
from .partition import Partition, graded_lex_key

__all__ = ["EchelonBasis", "GradedMatrix", "row_reduce", "in_span", "matrix_rank"]

SparseRow = dict  # column index -> nonzero scalar


class EchelonBasis:
    """Row space of a growing set of sparse rows, kept in echelon form.

    With ``track=True`` every stored row also remembers which combination of
    the inserted rows produced it, so membership tests can return certificates.
    """

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.track = track
        self.pivots: dict[int, SparseRow] = {}
        self.combos: dict[int, dict[int, Scalar]] = {}
        self._next_id = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def copy(self) -> "EchelonBasis":
        # stored rows are never mutated in place, so sharing them is safe
        other = EchelonBasis(self.field, self.track)
        other.pivots = dict(self.pivots)
        other.combos = dict(self.combos)
        other._next_id = self._next_id
        return other

    def reduce(self, row: Mapping[int, Scalar]) -> tuple[SparseRow, dict[int, Scalar]]:
        """Return ``(remainder, weights)`` with ``remainder = row - sum weights[i] * row_i``.

        The remainder has no entry in any pivot column below its own leading column.
        ``weights`` is empty unless tracking is on.
        """
        p = self.field.characteristic
        v = {c: x for c, x in row.items() if x != 0}
        w: dict[int, Scalar] = {}
        heap = list(v)
        heapq.heapify(heap)
        pivots = self.pivots
        while heap:
            c = heapq.heappop(heap)
            f = v.get(c)
            if f is None:
                continue
            prow = pivots.get(c)
            if prow is None:
                # leading column found; no further elimination possible below it
                break
            for j, x in prow.items():
                old = v.get(j)
                if p:
                    new = ((old or 0) - f * x) % p
                else:
                    new = (old or 0) - f * x
                if new:
                    if old is None:
                        heapq.heappush(heap, j)
                    v[j] = new
                elif old is not None:
                    del v[j]
            if self.track:
                _axpy(w, f, self.combos[c], p)
        return v, w

    def add(self, row: Mapping[int, Scalar]) -> bool:
        """Insert a row; True when it enlarged the row space."""
        row_id = self._next_id
        self._next_id += 1
        v, w = self.reduce(row)
        if not v:
            return False
        lead = min(v)
        inv = self.field.inv(v[lead])
        mul = self.field.mul
        self.pivots[lead] = {j: mul(inv, x) for j, x in v.items()}
        if self.track:
            p = self.field.characteristic
            combo = {i: self.field.neg(x) for i, x in w.items()}
            combo[row_id] = self.field.add(combo.get(row_id, self.field.zero), self.field.one)
            self.combos[lead] = {i: mul(inv, x) for i, x in combo.items() if (x % p if p else x)}
        return True

    def contains(self, row: Mapping[int, Scalar]) -> bool:
        v, _ = self.reduce(row)
        return not v

    def certificate(self, row: Mapping[int, Scalar]) -> dict[int, Scalar] | None:
        """Weights over inserted rows (by insertion index) reproducing ``row``, or None."""
        if not self.track:
            raise RuntimeError("certificates need an EchelonBasis built with track=True")
        v, w = self.reduce(row)
        return None if v else {i: x for i, x in sorted(w.items()) if x != 0}

    def reduced_rows(self) -> list[tuple[int, SparseRow]]:
        """Fully reduced (RREF) rows as ``(pivot_column, row)``, pivots ascending."""
        p = self.field.characteristic
        rows = {c: dict(r) for c, r in self.pivots.items()}
        order = sorted(rows)
        for c in reversed(order):
            prow = rows[c]
            for c2 in order:
                if c2 >= c:
                    break
                r2 = rows[c2]
                f = r2.get(c)
                if f:
                    _axpy(r2, -f, prow, p)
        return [(c, rows[c]) for c in order]


def _axpy(target: dict, a: Scalar, src: Mapping, p: int) -> None:
    # target += a * src, dropping zeros
    for j, x in src.items():
        new = target.get(j, 0) + a * x
        if p:
            new %= p
        if new:
            target[j] = new
        else:
            target.pop(j, None)


@dataclass(frozen=True)
class GradedMatrix:
    """Coefficient vectors of degree-``degree`` symmetric polynomials in ``n`` variables.

    Column ``k`` is the coordinate of ``m_{column_basis[k]}``. Rows are stored
    sparsely; ``rows`` gives the dense view.
    """

    degree: int
    n: int
    column_basis: tuple[Partition, ...]
    sparse_rows: tuple[SparseRow, ...]
    field: Field
    row_labels: tuple[str, ...] = dc_field(default=())

    def __post_init__(self):
        keys = [graded_lex_key(lam) for lam in self.column_basis]
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("column basis must be strictly increasing in graded-lex order")
        for lam in self.column_basis:
            if lam.weight != self.degree or lam.length > self.n:
                raise ValueError(f"column {lam} does not have weight {self.degree} and length <= {self.n}")
        ncols = len(self.column_basis)
        for r in self.sparse_rows:
            if any(not 0 <= c < ncols for c in r):
                raise ValueError("row entry outside the column range")
        if self.row_labels and len(self.row_labels) != len(self.sparse_rows):
            raise ValueError("row_labels must match the number of rows")

    @classmethod
    def from_dense(cls, degree, n, column_basis, rows, field, row_labels=()):
        ncols = len(column_basis)
        sparse = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError(f"row length {len(r)} != column count {ncols}")
            sparse.append({j: field(x) for j, x in enumerate(r) if field(x) != 0})
        return cls(degree, n, tuple(column_basis), tuple(sparse), field, tuple(row_labels))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.sparse_rows), len(self.column_basis)

    @property
    def rows(self) -> list[list[Scalar]]:
        zero = self.field.zero
        ncols = len(self.column_basis)
        out = []
        for r in self.sparse_rows:
            dense = [zero] * ncols
            for j, x in r.items():
                dense[j] = x
            out.append(dense)
        return out

    def column_index(self) -> dict[Partition, int]:
        return {lam: k for k, lam in enumerate(self.column_basis)}

    def echelon(self, track: bool = False) -> EchelonBasis:
        eb = EchelonBasis(self.field, track=track)
        for r in self.sparse_rows:
            eb.add(r)
        return eb

    def to_csv(self, path: Union[str, Path]) -> None:
        fmt = self.field.format
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["row"] + [f"m[{lam.comma_form()}]" for lam in self.column_basis])
            for i, dense in enumerate(self.rows):
                label = self.row_labels[i] if self.row_labels else str(i)
                w.writerow([label] + [fmt(x) for x in dense])


def _as_sparse(M, field: Field | None) -> tuple[list[SparseRow], int, Field]:
    if isinstance(M, GradedMatrix):
        return list(M.sparse_rows), len(M.column_basis), M.field
    if field is None:
        raise TypeError("field is required for plain row lists")
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    sparse = []
    for r in rows:
        vals = [field(x) for x in r]
        sparse.append({j: x for j, x in enumerate(vals) if x != 0})
    return sparse, ncols, field


def row_reduce(M: Union[GradedMatrix, Sequence[Sequence]], field: Field | None = None):
    """Reduced row-echelon form.

    Returns ``(reduced, rank, pivot_columns)``. ``reduced`` is a GradedMatrix when
    ``M`` is one, otherwise a dense list of the nonzero reduced rows.
    """
    sparse, ncols, fld = _as_sparse(M, field)
    eb = EchelonBasis(fld)
    for r in sparse:
        eb.add(r)
    rref = eb.reduced_rows()
    pivots = [c for c, _ in rref]
    if isinstance(M, GradedMatrix):
        reduced = GradedMatrix(M.degree, M.n, M.column_basis, tuple(r for _, r in rref), fld)
    else:
        reduced = []
        for _, r in rref:
            dense = [fld.zero] * ncols
            for j, x in r.items():
                dense[j] = x
            reduced.append(dense)
    return reduced, len(pivots), pivots


def matrix_rank(M, field: Field | None = None) -> int:
    sparse, _, fld = _as_sparse(M, field)
    eb = EchelonBasis(fld)
    for r in sparse:
        eb.add(r)
    return eb.rank


def in_span(v: Sequence, M, field: Field | None = None, certificate: bool = False):
    """Is ``v`` an F-linear combination of the rows of ``M``?

    With ``certificate=True`` returns ``(found, weights)`` where ``weights[i]`` is
    the coefficient of row ``i`` (``None`` when not in the span).
    """
    sparse, ncols, fld = _as_sparse(M, field)
    if len(v) != ncols:
        raise ValueError(f"vector length {len(v)} != column count {ncols}")
    target = {j: fld(x) for j, x in enumerate(v) if fld(x) != 0}
    eb = EchelonBasis(fld, track=certificate)
    for r in sparse:
        eb.add(r)
    if not certificate:
        return eb.contains(target)
    cert = eb.certificate(target)
    if cert is None:
        return False, None
    weights = [cert.get(i, fld.zero) for i in range(len(sparse))]
    return True, weights
