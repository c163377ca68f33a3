"""Exact integer linear algebra.

Everything here works on plain Python ints, so determinants and degrees never
overflow. Matrices are immutable :class:`IntegerMatrix` values; the helper
functions also accept any nested sequence of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence


class RankError(ValueError):
    """Raised when an operation needs a full-rank matrix."""


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if not rows:
            return cls(0, ncols or 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: int) -> "IntegerMatrix":
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls(nrows, 0, ())
        return cls.from_rows(zip(*columns))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows(self.to_columns(), self.rows) if self.cols else IntegerMatrix(0, self.rows, ())

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.to_columns()
        out = [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)]
        return IntegerMatrix.from_rows(out, other.cols)

    def select_rows(self, idx: Iterable[int]) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([self.row(i) for i in idx], self.cols)

    def select_columns(self, idx: Iterable[int]) -> "IntegerMatrix":
        idx = list(idx)
        return IntegerMatrix.from_rows([[r[j] for j in idx] for r in self.to_rows()], len(idx))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return f"[{self.rows}x{self.cols} empty]"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join(" ".join(str(x).rjust(width) for x in self.row(i)) for i in range(self.rows))


def as_matrix(M) -> IntegerMatrix:
    if isinstance(M, IntegerMatrix):
        return M
    return IntegerMatrix.from_rows(M)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y == g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def gcd_all(values: Iterable[int]) -> int:
    return reduce(gcd, values, 0)


def det(M) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in as_matrix(M).to_rows()]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
        prev = pivot
    return sign * rows[-1][-1]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def rank(M) -> int:
    return _row_hnf_lists(as_matrix(M).to_rows(), as_matrix(M).cols)[2]


def pivot_columns(M) -> list[int]:
    """Indices of a maximal set of linearly independent columns (the leftmost ones)."""
    M = as_matrix(M)
    return _row_hnf_lists(M.to_rows(), M.cols)[3]


def _row_hnf_lists(H: list[list[int]], ncols: int, U: list[list[int]] | None = None):
    """In-place row-style HNF of ``H``; row operations are mirrored on ``U``.

    Returns ``(H, U, rank, pivot_columns)``.
    """
    m = len(H)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            H[r], H[i] = (
                [x * s + y * t for s, t in zip(H[r], H[i])],
                [p * t - q * s for s, t in zip(H[r], H[i])],
            )
            if U is not None:
                U[r], U[i] = (
                    [x * s + y * t for s, t in zip(U[r], U[i])],
                    [p * t - q * s for s, t in zip(U[r], U[i])],
                )
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-s for s in H[r]]
            if U is not None:
                U[r] = [-s for s in U[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [s - q * t for s, t in zip(H[i], H[r])]
                if U is not None:
                    U[i] = [s - q * t for s, t in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return H, U, r, pivots


def hermite_normal_form(M, orientation: str = "row") -> tuple[IntegerMatrix, IntegerMatrix]:
    """Hermite normal form together with its unimodular transform.

    ``orientation="row"`` returns ``(H, U)`` with ``U @ M == H``, ``H`` in
    row echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.

    ``orientation="column"`` returns ``(H, U)`` with ``M @ U == H``, ``H`` lower
    triangular (column echelon) with positive pivots, entries left of each pivot
    reduced into ``[0, pivot)``, and zero columns last.
    """
    M = as_matrix(M)
    if orientation == "column":
        Ht, Ut = hermite_normal_form(M.T, "row")
        return Ht.T, Ut.T
    if orientation != "row":
        raise ValueError(f"unknown orientation {orientation!r}")
    U = IntegerMatrix.identity(M.rows).to_rows()
    H, U, _, _ = _row_hnf_lists(M.to_rows(), M.cols, U)
    return IntegerMatrix.from_rows(H, M.cols), IntegerMatrix.from_rows(U, M.rows)


def lattice_index(A) -> int:
    """``[Z^d : Z A]`` as the determinant of the nonzero columns of the column HNF."""
    A = as_matrix(A)
    H, _ = hermite_normal_form(A, "column")
    d = A.rows
    nonzero = [j for j in range(H.cols) if any(H.column(j))]
    if len(nonzero) != d:
        raise RankError("matrix not full rank")
    # lower triangular, so the determinant is the product of the diagonal
    return abs(det(H.select_columns(nonzero)))


def maximal_minors(A) -> list[int]:
    A = as_matrix(A)
    d = A.rows
    return [det(A.select_columns(cols)) for cols in combinations(range(A.cols), d)]


def lattice_index_gcd(A) -> int:
    """``[Z^d : Z A]`` as the gcd of the maximal minors."""
    g = gcd_all(maximal_minors(A))
    if g == 0:
        raise RankError("matrix not full rank")
    return g


def integer_kernel_basis(A) -> IntegerMatrix:
    """Basis of the saturated lattice ``ker(A) ∩ Z^n``, one vector per column.

    The basis vectors are the columns of the unimodular transform that land on
    zero columns of the column HNF, so the result is saturated by construction.
    """
    A = as_matrix(A)
    H, U = hermite_normal_form(A, "column")
    zero = [j for j in range(H.cols) if not any(H.column(j))]
    if A.cols - len(zero) != A.rows:
        raise RankError("matrix not full rank")
    return U.select_columns(zero)


def torsion_order_rank2(B) -> int:
    """Order of the torsion of ``Z^n / Z B`` for an ``n x 2`` matrix ``B``."""
    B = as_matrix(B)
    if B.cols != 2:
        raise ValueError("expected a two-column matrix")
    rows = [B.row(i) for i in range(B.rows)]
    g = gcd_all(det2(u, v) for u, v in combinations(rows, 2))
    if g == 0:
        raise RankError("matrix has rank < 2")
    return g


class MinorTable:
    """All 2x2 minors ``[i, j] = det(b_i, b_j)`` of an ``n x 2`` matrix (0-based)."""

    __slots__ = ("n", "_table")

    def __init__(self, B):
        B = as_matrix(B)
        rows = [B.row(i) for i in range(B.rows)]
        self.n = len(rows)
        self._table = tuple(tuple(det2(u, v) for v in rows) for u in rows)

    def __call__(self, i: int, j: int) -> int:
        return self._table[i][j]

    minor = __call__

    def gcd(self, idx: Iterable[int] | None = None) -> int:
        idx = list(range(self.n)) if idx is None else sorted(idx)
        return gcd_all(self._table[i][j] for i, j in combinations(idx, 2))
