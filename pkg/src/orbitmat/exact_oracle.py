"""Dense exact-integer linear algebra for cross-checking the sparse engine.

Everything here works on Python ints (arbitrary precision) and never divides
inexactly. It is deliberately naive: O(n^3) work, meant for n in the hundreds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, IndexOutOfRange, OracleError, SizeLimitExceeded
from .matrix_engine import PartialMapMatrix, SparseSignMatrix

ORACLE_LIMIT = 512


@dataclass(frozen=True)
class DenseIntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def zeros(cls, n: int) -> DenseIntMatrix:
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> DenseIntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def dense_from_sparse(s) -> DenseIntMatrix:
    """Densify a :class:`PartialMapMatrix` or :class:`SparseSignMatrix`."""
    if isinstance(s, DenseIntMatrix):
        return s
    if not isinstance(s, (PartialMapMatrix, SparseSignMatrix)):
        raise TypeError(f"cannot densify {type(s).__name__}")
    a = [[0] * s.n for _ in range(s.n)]
    for r, c, v in s.entries():
        a[r - 1][c - 1] += v
    return DenseIntMatrix(tuple(map(tuple, a)))


def dense_mul(a: DenseIntMatrix, b: DenseIntMatrix) -> DenseIntMatrix:
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions differ: {a.n} vs {b.n}")
    n = a.n
    out = []
    for row in a.rows:
        acc = [0] * n
        for k, v in enumerate(row):
            if v:
                bk = b.rows[k]
                for j in range(n):
                    acc[j] += v * bk[j]
        out.append(tuple(acc))
    return DenseIntMatrix(tuple(out))


def dense_power(a: DenseIntMatrix, k: int) -> DenseIntMatrix:
    out = DenseIntMatrix.identity(a.n)
    for _ in range(k):
        out = dense_mul(a, out)
    return out


def bareiss_det(a: DenseIntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting."""
    n = a.n
    if n == 0:
        return 1
    m = [list(r) for r in a.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            # exact division is guaranteed by Sylvester's identity
            m[i] = ri[:k + 1] + [(ri[j] * pivot - f * rk[j]) // prev for j in range(k + 1, n)]
        prev = pivot
    return sign * m[n - 1][n - 1]


def cofactor_det(a: DenseIntMatrix) -> int:
    """Laplace expansion along the first row; the independent check for small ``n``."""
    if a.n > 8:
        raise SizeLimitExceeded(f"cofactor expansion is for n <= 8, got {a.n}")
    return _laplace([list(r) for r in a.rows])


def _laplace(m: list[list[int]]) -> int:
    if not m:
        return 1
    total = 0
    for j, v in enumerate(m[0]):
        if v:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * v * _laplace(minor)
    return total


def indicator_det(ihat, limit: int = ORACLE_LIMIT) -> int:
    """Determinant of ``I - M``; anything outside {0, 1} is an internal error."""
    if ihat.n > limit:
        raise SizeLimitExceeded(f"oracle is capped at n={limit}, got {ihat.n}")
    det = bareiss_det(dense_from_sparse(ihat))
    if det not in (0, 1):
        raise OracleError(f"det(I - M) = {det}, expected 0 or 1")
    return det


def verify_inverse(ihat, inv, limit: int = ORACLE_LIMIT) -> bool:
    """True iff ``ihat @ inv`` is exactly the identity."""
    if ihat.n != inv.n:
        raise DimensionMismatch(f"dimensions differ: {ihat.n} vs {inv.n}")
    if ihat.n > limit:
        raise SizeLimitExceeded(f"oracle is capped at n={limit}, got {ihat.n}")
    prod = dense_mul(dense_from_sparse(ihat), dense_from_sparse(inv))
    return prod == DenseIntMatrix.identity(ihat.n)


def en_matrix(n: int, a: int, b: int) -> DenseIntMatrix:
    """``E_n(a, b)``: a single 1 at row ``a``, column ``b``."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise IndexOutOfRange(f"({a}, {b}) outside 1..{n}")
    return DenseIntMatrix(tuple(
        tuple(int(i == a and j == b) for j in range(1, n + 1)) for i in range(1, n + 1)
    ))


def en_product(n: int, a: int, b: int, c: int, d: int) -> DenseIntMatrix:
    return dense_mul(en_matrix(n, a, b), en_matrix(n, c, d))
