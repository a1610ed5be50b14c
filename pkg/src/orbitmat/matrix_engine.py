"""Sparse iteration matrices ``M_n``, ``I - M_n`` and its inverse.

Column ``j`` of ``M_n`` is the unit vector ``e_{phi_n(j)}`` (or zero), so ``M_n``
and all of its powers are partial maps: one array of row indices, 0 for an
empty column. Products of partial maps are compositions, O(n) each.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotACycleError,
    NotNilpotentError,
)
from .function_model import LocalFunction
from .orbit_engine import CycleReport, HeightProfile, heights as _heights

Column = tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class PartialMapMatrix:
    """0/1 matrix with at most one nonzero per column.

    ``col_to_row[j - 1] = r`` means a single 1 at ``(r, j)``; ``r = 0`` is an
    empty column.
    """

    n: int
    col_to_row: np.ndarray

    def __post_init__(self):
        arr = np.array(self.col_to_row, dtype=np.int64)
        if arr.shape != (self.n,):
            raise DimensionMismatch(f"expected {self.n} columns, got {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() > self.n):
            raise ValueError("row indices must lie in 0..n")
        arr.setflags(write=False)
        object.__setattr__(self, "col_to_row", arr)

    @classmethod
    def identity(cls, n: int) -> PartialMapMatrix:
        return cls(n, np.arange(1, n + 1))

    @classmethod
    def zeros(cls, n: int) -> PartialMapMatrix:
        return cls(n, np.zeros(n, dtype=np.int64))

    def is_zero(self) -> bool:
        return not self.col_to_row.any()

    def entries(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero ``(row, col, 1)`` triples, column-major."""
        for j, r in enumerate(self.col_to_row.tolist(), start=1):
            if r:
                yield r, j, 1

    def compose(self, other: PartialMapMatrix) -> PartialMapMatrix:
        """Matrix product ``self @ other``: apply ``other`` first."""
        _same_n(self, other)
        padded = np.concatenate(([0], self.col_to_row))
        return PartialMapMatrix(self.n, padded[other.col_to_row])

    __matmul__ = compose

    def __eq__(self, other):
        if not isinstance(other, PartialMapMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.col_to_row, other.col_to_row)

    def __repr__(self):
        return f"PartialMapMatrix(n={self.n}, col_to_row={self.col_to_row.tolist()})"


@dataclass(frozen=True)
class SparseSignMatrix:
    """Column-sparse integer matrix; ``columns[j - 1]`` lists ``(row, value)`` by row."""

    n: int
    columns: tuple[Column, ...]

    def __post_init__(self):
        if len(self.columns) != self.n:
            raise DimensionMismatch(f"expected {self.n} columns, got {len(self.columns)}")

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def entries(self) -> Iterator[tuple[int, int, int]]:
        for j, col in enumerate(self.columns, start=1):
            for r, v in col:
                yield r, j, v

    def get(self, row: int, col: int) -> int:
        for r, v in self.columns[col - 1]:
            if r == row:
                return v
        return 0


@dataclass(frozen=True)
class EigenvectorCertificate:
    """Indicator vector of a cycle, as the sorted set of its support."""

    support: tuple[int, ...]

    def dense(self, n: int) -> list[int]:
        v = [0] * n
        for y in self.support:
            v[y - 1] = 1
        return v


def _same_n(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions differ: {a.n} vs {b.n}")


def build_m(lf: LocalFunction) -> PartialMapMatrix:
    return PartialMapMatrix(lf.n, lf.table)


def apply_basis(m: PartialMapMatrix, x: int) -> int:
    """Index ``y`` with ``M e_x = e_y`` (0 for the zero vector)."""
    if not 1 <= x <= m.n:
        raise IndexOutOfRange(f"x={x} outside 1..{m.n}")
    return int(m.col_to_row[x - 1])


def power(m: PartialMapMatrix, k: int) -> PartialMapMatrix:
    """``M^k`` by repeated squaring of the partial map."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    result = PartialMapMatrix.identity(m.n)
    base = m
    while k:
        if k & 1:
            result = base @ result
        k >>= 1
        if k:
            base = base @ base
        if result.is_zero():
            break
    return result


def iter_powers(m: PartialMapMatrix, limit: int | None = None) -> Iterator[PartialMapMatrix]:
    """Yield ``M, M^2, ...`` up to ``M^limit`` (default ``n``), stopping after the zero map."""
    limit = m.n if limit is None else limit
    current = m
    for _ in range(limit):
        yield current
        if current.is_zero():
            return
        current = m @ current


def nnz(m: PartialMapMatrix) -> int:
    return int(np.count_nonzero(m.col_to_row))


def intersect_count(a: PartialMapMatrix, b: PartialMapMatrix) -> int:
    """Number of positions where both matrices are nonzero."""
    _same_n(a, b)
    return int(np.count_nonzero((a.col_to_row != 0) & (a.col_to_row == b.col_to_row)))


def nilpotency_degree(m: PartialMapMatrix) -> int | None:
    """Smallest ``k`` with ``M^k = 0``, or ``None`` when ``M`` is not nilpotent."""
    if m.is_zero():
        return 1 if m.n else 0
    for k, p in enumerate(iter_powers(m, m.n + 1), start=1):
        if p.is_zero():
            return k
    return None


def build_ihat(lf: LocalFunction) -> SparseSignMatrix:
    """``I - M_n``: +1 on the diagonal, -1 at ``(phi_n(j), j)``."""
    cols = []
    for j, r in enumerate(lf.table.tolist(), start=1):
        if r:
            cols.append(tuple(sorted([(j, 1), (r, -1)])))
        else:
            cols.append(((j, 1),))
    return SparseSignMatrix(lf.n, tuple(cols))


def inverse_via_orbits(lf: LocalFunction, hp: HeightProfile | None = None) -> SparseSignMatrix:
    """Closed form: column ``j`` has ones exactly on the orbit of ``j``."""
    if hp is None:
        hp = _heights(lf)
    succ = [0] + lf.table.tolist()
    cols = []
    for j, h in enumerate(hp.heights.tolist(), start=1):
        rows = [j]
        for _ in range(h - 1):
            rows.append(succ[rows[-1]])
        cols.append(tuple((r, 1) for r in sorted(rows)))
    return SparseSignMatrix(lf.n, tuple(cols))


def inverse_nnz(hp: HeightProfile) -> int:
    """Nonzero count of the inverse without materializing it."""
    return hp.weighted_sum


def inverse_via_neumann(m: PartialMapMatrix) -> SparseSignMatrix:
    """``I + M + M^2 + ... + M^{m-1}``; the powers are disjoint, so entries stay 0/1."""
    rows: list[list[int]] = [[j] for j in range(1, m.n + 1)]
    nilpotent = m.is_zero()
    for p in iter_powers(m, m.n + 1):
        if p.is_zero():
            nilpotent = True
            break
        for j, r in enumerate(p.col_to_row.tolist()):
            if r:
                rows[j].append(r)
    if not nilpotent:
        raise NotNilpotentError("M has a cycle; I - M is singular")
    cols = []
    for col in rows:
        if len(set(col)) != len(col):
            raise AssertionError("powers of a nilpotent partial map must be disjoint")
        cols.append(tuple((r, 1) for r in sorted(col)))
    return SparseSignMatrix(m.n, tuple(cols))


def cycle_eigenvector(m: PartialMapMatrix, cycle: CycleReport) -> EigenvectorCertificate:
    """Indicator of the cycle, checked to satisfy ``M v = v``."""
    if not cycle.found:
        raise NotACycleError("cycle report is empty")
    cert = EigenvectorCertificate(tuple(sorted(set(cycle.elements))))
    v = np.zeros(m.n + 1, dtype=np.int64)
    v[list(cert.support)] = 1
    # (M v)_i = #{j in support : phi_n(j) = i}
    mv = np.bincount(m.col_to_row[np.array(cert.support) - 1], minlength=m.n + 1)
    mv[0] = 0
    if not np.array_equal(mv, v):
        raise NotACycleError(f"{cert.support} is not a cycle of M")
    return cert
