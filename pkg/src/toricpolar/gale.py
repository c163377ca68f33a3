"""Gale-dual pairs ``(A, B)`` in codimension two.

``A`` is an ``(n-2) x n`` integer matrix whose columns are the lattice points,
``B`` is ``n x 2`` with columns spanning the saturated integer kernel of ``A``.
Row ``b_i`` of ``B`` belongs to column ``a_i`` of ``A``; all indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exact_math import (
    IntegerMatrix,
    MinorTable,
    RankError,
    as_matrix,
    hermite_normal_form,
    integer_kernel_basis,
    lattice_index,
    rank,
)


class GaleError(ValueError):
    """Input matrices do not form a codimension-two Gale pair."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or [message]


@dataclass(frozen=True)
class GaleSystem:
    A: IntegerMatrix
    B: IntegerMatrix
    minors: MinorTable = field(compare=False, repr=False)
    index_ZA: int | None = None

    @classmethod
    def from_matrices(cls, A, B) -> "GaleSystem":
        A, B = as_matrix(A), as_matrix(B)
        try:
            index = lattice_index(A)
        except RankError:
            index = None
        return cls(A, B, MinorTable(B), index)

    @property
    def n(self) -> int:
        return self.B.rows

    @property
    def rows(self) -> list[tuple[int, int]]:
        return [self.B.row(i) for i in range(self.B.rows)]

    def permuted(self, perm) -> "GaleSystem":
        """System with ``b_i`` (and ``a_i``) reordered as ``perm``."""
        perm = list(perm)
        return GaleSystem.from_matrices(self.A.select_columns(perm), self.B.select_rows(perm))

    def with_basis_change(self, U) -> "GaleSystem":
        """Same variety, Gale dual ``B @ U`` for a unimodular 2x2 ``U``."""
        return GaleSystem.from_matrices(self.A, self.B @ as_matrix(U))


def _duplicate_columns(A: IntegerMatrix) -> list[tuple[int, int]]:
    cols = A.to_columns()
    return [(i, j) for i, j in combinations(range(len(cols)), 2) if cols[i] == cols[j]]


def validate(g: GaleSystem) -> list[str]:
    """One diagnostic per violated invariant; empty when ``g`` is a valid pair."""
    A, B, n = g.A, g.B, g.n
    out = []
    if B.cols != 2:
        return [f"B must have 2 columns, got {B.cols}"]
    if A.cols != n:
        return [f"A has {A.cols} columns but B has {n} rows"]
    if rank(A) != n - 2:
        out.append(f"rank(A) = {rank(A)} ≠ n - 2 = {n - 2}")
    if A.rows and not (A @ B).is_zero():
        out.append("A·B ≠ 0")
    zero = [i + 1 for i in range(n) if not any(B.row(i))]
    if zero:
        out.append(f"zero rows of B: {zero}")
    sums = tuple(sum(B.column(j)) for j in range(2))
    if sums != (0, 0):
        out.append(f"column sums nonzero: {sums}")
    t = g.minors.gcd()
    if t == 0:
        out.append("rank(B) < 2")
    elif t != 1:
        out.append(f"minor gcd = {t} ≠ 1")
    return out


def _reduced_kernel(A: IntegerMatrix) -> IntegerMatrix:
    K = integer_kernel_basis(A)
    # canonical basis of the same lattice: row HNF of K^T
    H, _ = hermite_normal_form(K.T, "row")
    return H.T


def gale_dual_from_A(A) -> GaleSystem:
    """Gale system of an ``(n-2) x n`` matrix ``A`` defining a projective toric variety."""
    A = as_matrix(A)
    n = A.cols
    r = rank(A)
    if r != A.rows or n - r != 2:
        raise GaleError(f"not codimension two: rank(A) = {r}, n = {n}")
    ones = IntegerMatrix.from_rows(A.to_rows() + [[1] * n])
    if rank(ones) != r:
        raise GaleError("not projective/homogeneous: (1,...,1) is not in the row space of A")
    dup = _duplicate_columns(A)
    if dup:
        raise GaleError("repeated lattice points: " + ", ".join(f"a{i + 1}=a{j + 1}" for i, j in dup))
    B = _reduced_kernel(A)
    zero = [i + 1 for i in range(n) if not any(B.row(i))]
    if zero:
        raise GaleError(f"variety is a cone over a coordinate point (b_i = 0 for i in {zero})")
    g = GaleSystem.from_matrices(A, B)
    problems = validate(g)
    if problems:
        raise GaleError("; ".join(problems), problems)
    return g


def first_nonzero_pair(minors: MinorTable) -> tuple[int, int] | None:
    for i, j in combinations(range(minors.n), 2):
        if minors(i, j):
            return i, j
    return None


def a_from_gale_dual(B) -> GaleSystem:
    """Build ``A`` from a Gale dual ``B`` with the explicit minor matrix.

    With the rows reordered so that ``[1,2] != 0`` (the lexicographically first
    such pair moves to the front), row ``k`` of ``A`` carries ``[2,k]``,
    ``-[1,k]`` and ``[1,2]`` in columns 1, 2, k, followed by an all-ones row.
    The reordering is undone before returning, so ``a_i`` still matches ``b_i``.
    """
    B = as_matrix(B)
    if B.cols != 2:
        raise GaleError(f"B must have 2 columns, got {B.cols}")
    n = B.rows
    problems = []
    zero = [i + 1 for i in range(n) if not any(B.row(i))]
    if zero:
        problems.append(f"zero rows of B: {zero}")
    sums = tuple(sum(B.column(j)) for j in range(2))
    if sums != (0, 0):
        problems.append(f"column sums nonzero: {sums}")
    minors = MinorTable(B)
    t = minors.gcd()
    if t == 0:
        problems.append("rank(B) < 2")
    elif t != 1:
        problems.append(f"minor gcd = {t} ≠ 1")
    if problems:
        raise GaleError("; ".join(problems), problems)

    i0, j0 = first_nonzero_pair(minors)
    perm = [i0, j0] + [k for k in range(n) if k not in (i0, j0)]
    m = lambda p, q: minors(perm[p], perm[q])  # noqa: E731  minors in reordered labels
    rows = []
    for p in range(2, n - 1):
        row = [0] * n
        row[0], row[1], row[p] = m(1, p), -m(0, p), m(0, 1)
        rows.append(row)
    rows.append([1] * n)
    reordered = IntegerMatrix.from_rows(rows, n)
    cols = [None] * n
    for c, orig in enumerate(perm):
        cols[orig] = reordered.column(c)
    A = IntegerMatrix.from_columns(cols, n - 2)
    g = GaleSystem.from_matrices(A, B)
    problems = validate(g)
    if problems:
        raise GaleError("; ".join(problems), problems)
    return g
