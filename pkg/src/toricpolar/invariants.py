"""Subdiagram volumes, lattice indices and face volumes from the Gale dual.

Every quantity here is a short sum of 2x2 determinants of rows of ``B``;
the case split is driven by the :class:`~toricpolar.faces.FaceKind` tag.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .exact_math import RankError, det2, gcd_all
from .faces import Face, FaceKind, contains
from .gale import GaleSystem


class FaceError(ValueError):
    pass


def lattice_ideal_degree_codim1(b: Sequence[int]) -> int:
    """Degree of the lattice ideal of a single homogeneous vector ``b``."""
    if sum(b) != 0:
        raise ValueError("not homogeneous: entries do not sum to zero")
    if not any(b):
        raise ValueError("zero vector")
    return sum(x for x in b if x > 0)


def _opposite_open_quadrants(u: Sequence[int], v: Sequence[int]) -> bool:
    return u[0] * v[0] < 0 and u[1] * v[1] < 0


def nu_terms(rows: Sequence[Sequence[int]]) -> dict[tuple[int, int], int]:
    """``nu_ij`` for unordered pairs of rows lying in opposite open quadrants."""
    out = {}
    for (i, u), (j, v) in combinations(enumerate(rows), 2):
        if _opposite_open_quadrants(u, v):
            out[i, j] = min(abs(u[0] * v[1]), abs(u[1] * v[0]))
    return out


def lattice_ideal_degree_codim2(B) -> int:
    """``beta_1 * beta_2 - sum nu_ij`` for a homogeneous ``m x 2`` matrix."""
    rows = [tuple(r) for r in (B.to_rows() if hasattr(B, "to_rows") else B)]
    if any(len(r) != 2 for r in rows):
        raise ValueError("expected a two-column matrix")
    if (sum(r[0] for r in rows), sum(r[1] for r in rows)) != (0, 0):
        raise ValueError("not homogeneous: column sums are nonzero")
    rows = [r for r in rows if r[0] or r[1]]
    if gcd_all(det2(u, v) for u, v in combinations(rows, 2)) == 0:
        raise RankError("matrix has rank < 2")
    beta1 = sum(r[0] for r in rows if r[0] > 0)
    beta2 = sum(r[1] for r in rows if r[1] > 0)
    return beta1 * beta2 - sum(nu_terms(rows).values())


def min_signed_sum(values: Iterable[int]) -> int:
    values = list(values)
    pos = sum(x for x in values if x > 0)
    neg = -sum(x for x in values if x < 0)
    return min(pos, neg)


def relevant_line_mu_i(lambdas: Sequence[int]) -> tuple[int, int]:
    """``(mu, i)`` for a face whose complement lies on one relevant line."""
    g = gcd_all(lambdas)
    m = min_signed_sum(lambdas)
    if m == 0:
        raise AssertionError("relevant-line face with one-signed scalars")
    assert m % g == 0, "numerator not divisible by gcd; face misclassified"
    return m // g, g


def gamma_mu_i(v: Sequence[int], idx: Iterable[int], rows: Sequence[Sequence[int]]) -> tuple[int, int]:
    """``(mu, i)`` from ``gamma_i = det(v, b_i)`` over ``idx``."""
    gammas = [det2(v, rows[i]) for i in idx]
    g = gcd_all(gammas)
    m = min_signed_sum(gammas)
    assert g and m % g == 0, "numerator not divisible by gcd; face misclassified"
    return m // g, g


def simplex_workspace(S: Iterable[int], rows: Sequence[Sequence[int]]):
    """``(w, B')`` with ``w = -sum_{i in S} b_i`` appended to the rows ``b_i``, i in S."""
    S = sorted(S)
    w = (-sum(rows[i][0] for i in S), -sum(rows[i][1] for i in S))
    Bp = [tuple(rows[i]) for i in S]
    if w != (0, 0):
        Bp.append(w)
    return w, Bp


def simplex_mu_i(S: Iterable[int], rows: Sequence[Sequence[int]]) -> tuple[int, int]:
    """``(mu(P, beta), i(P, beta))`` when the complement ``S`` is not on a relevant line."""
    S = sorted(S)
    w, Bp = simplex_workspace(S, rows)
    t = gcd_all(det2(rows[i], rows[j]) for i, j in combinations(S, 2))
    deg = lattice_ideal_degree_codim2(Bp)
    correction = sum(d for d in (det2(w, rows[j]) for j in S) if d > 0)
    num = deg - correction
    assert num % t == 0, "numerator not divisible by torsion order"
    return num // t, t


def mu_i_full(beta: Face, g: GaleSystem) -> tuple[int, int]:
    """``(mu(P, beta), i(P, beta))`` for a proper face ``beta``."""
    if beta.kind is FaceKind.FULL:
        raise FaceError("mu(P, P) is undefined")
    if beta.kind is FaceKind.RELEVANT_LINE:
        return relevant_line_mu_i([lam for _, lam in beta.line.lambdas])
    return simplex_mu_i(beta.complement, g.rows)


def mu_i_pair(alpha: Face, beta: Face, g: GaleSystem) -> tuple[int, int]:
    """``(mu(alpha, beta), i(alpha, beta))`` for ``beta`` a proper face of a proper face ``alpha``."""
    if alpha.kind is FaceKind.FULL:
        raise FaceError("use mu_i_full when alpha is the whole polytope")
    if alpha.complement == beta.complement or not contains(alpha, beta):
        raise FaceError(f"{beta.label()} is not a proper face of {alpha.label()}")
    if alpha.kind is FaceKind.SIMPLEX or beta.kind is FaceKind.RELEVANT_LINE:
        return 1, 1
    return gamma_mu_i(alpha.line.v, sorted(beta.complement), g.rows)


def relevant_face_volume(v: Sequence[int], points: Iterable[int], rows: Sequence[Sequence[int]]) -> int:
    return sum(d for d in (det2(v, rows[j]) for j in points) if d > 0)


def face_volume(beta: Face, g: GaleSystem) -> int:
    """Normalized volume of ``beta`` in the lattice its own points generate."""
    if beta.kind is FaceKind.SIMPLEX:
        return 1
    if beta.kind is FaceKind.RELEVANT_LINE:
        return relevant_face_volume(beta.line.v, beta.points, g.rows)
    return lattice_ideal_degree_codim2(g.rows)
