"""Independent reference implementation working from ``A`` directly.

Nothing here consults the Gale dual. Faces come from a brute-force convex
hull, volumes from a pulling triangulation with exact determinants, subdiagram
volumes from the block structure of a row Hermite normal form, and lattice
indices from HNF determinants. It is slow on purpose: it is the baseline the
two-column formulas are checked and timed against.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact_math import IntegerMatrix, as_matrix, det, hermite_normal_form, lattice_index, pivot_columns, rank
from .faces import Face, FaceKind, FaceLattice

MAX_DIM = 7

Point = tuple[int, ...]


class OracleError(ValueError):
    pass


def _guard(dim: int) -> None:
    if dim > MAX_DIM:
        raise OracleError(f"oracle limited to small dimension (dimension {dim} > {MAX_DIM})")


# convex hulls and triangulations of point configurations spanning a pointed cone


def _independent_coordinates(points: Sequence[Point]) -> list[Point]:
    """Project onto coordinates that stay independent on the linear span of ``points``."""
    M = IntegerMatrix.from_rows(points)  # one point per row
    keep = pivot_columns(M)
    return [tuple(p[c] for c in keep) for p in points]


def _normal(rows: Sequence[Point]) -> Point:
    # generalized cross product of r-1 vectors in Z^r
    r = len(rows) + 1
    return tuple(
        (-1) ** k * det([row[:k] + row[k + 1:] for row in rows]) if r > 1 else 1 for k in range(r)
    )


def _facets(points: Sequence[Point]) -> list[frozenset[int]]:
    """Facets of the cone over ``points`` (which must have full rank ``r``)."""
    r = len(points[0])
    found: list[frozenset[int]] = []
    for T in combinations(range(len(points)), r - 1):
        if any(set(T) <= f for f in found):
            continue
        nv = _normal([points[i] for i in T])
        if not any(nv):
            continue
        vals = [sum(a * b for a, b in zip(nv, p)) for p in points]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            found.append(frozenset(i for i, v in enumerate(vals) if v == 0))
    return found


def _triangulate(points: Sequence[Point], labels: Sequence[int]) -> list[tuple[int, ...]]:
    """Pulling triangulation of the cone over ``points``; simplices as label tuples."""
    coords = _independent_coordinates(points)
    r = len(coords[0])
    if len(coords) == r:
        return [tuple(labels)]
    out = []
    for facet in _facets(coords):
        if 0 in facet:
            continue
        idx = sorted(facet)
        for simplex in _triangulate([points[i] for i in idx], [labels[i] for i in idx]):
            out.append((labels[0],) + simplex)
    return out


def _span_coordinates(vectors: Sequence[Point]) -> list[Point]:
    """Coordinates of ``vectors`` in a basis of the lattice they generate."""
    m = len(vectors[0])
    H, _ = hermite_normal_form(IntegerMatrix.from_columns(vectors, m), "column")
    basis = [j for j in range(H.cols) if any(H.column(j))]
    pivots = [next(i for i in range(m) if H[i, j]) for j in basis]
    out = []
    for x in vectors:
        c: list[int] = []
        for j, p in zip(basis, pivots):
            rest = x[p] - sum(H[p, basis[l]] * c[l] for l in range(len(c)))
            q, rem = divmod(rest, H[p, j])
            assert rem == 0, "vector outside the lattice it generates"
            c.append(q)
        out.append(tuple(c))
    return out


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points.

    ``lattice="ambient"`` normalizes against ``Z^m`` and gives 0 unless the points
    are full-dimensional; ``lattice="span"`` normalizes against the affine lattice
    the points themselves generate.
    """

    points: tuple[Point, ...]
    lattice: str = "ambient"

    def __post_init__(self):
        if not self.points:
            raise OracleError("empty point set")
        if self.lattice not in ("ambient", "span"):
            raise ValueError(f"unknown lattice {self.lattice!r}")
        if len({len(p) for p in self.points}) != 1:
            raise ValueError("points of different lengths")

    @classmethod
    def from_columns(cls, M, lattice: str = "ambient") -> "LatticePolytope":
        return cls(tuple(as_matrix(M).to_columns()), lattice)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0])

    def homogenized(self) -> list[Point]:
        return [tuple(p) + (1,) for p in self.points]

    @property
    def dim(self) -> int:
        return rank(IntegerMatrix.from_rows(self.homogenized())) - 1


def normalized_volume(P: LatticePolytope) -> int:
    hom = sorted(set(P.homogenized()))
    dim = rank(IntegerMatrix.from_rows(hom)) - 1
    _guard(dim)
    if P.lattice == "ambient":
        if dim < P.ambient_dim:
            return 0
        coords = hom
    else:
        coords = _span_coordinates(hom)
    return sum(abs(det([coords[i] for i in s])) for s in _triangulate(coords, range(len(coords))))


# faces of Conv(A)


def _face(points: frozenset[int], n: int, A: IntegerMatrix) -> Face:
    complement = frozenset(range(n)) - points
    dim = rank(A.select_columns(sorted(points))) - 1
    if not complement:
        kind = FaceKind.FULL
    elif len(points) == dim + 1:
        kind = FaceKind.SIMPLEX
    else:
        kind = FaceKind.RELEVANT_LINE
    return Face(points, complement, dim, kind)


def face_point_sets(A) -> set[frozenset[int]]:
    """Point sets of all nonempty faces of ``Conv(A)``, from facets and their intersections."""
    A = as_matrix(A)
    _guard(rank(A) - 1)
    cols = [tuple(c) for c in A.to_columns()]
    facets = _facets(_independent_coordinates(cols))
    faces = {frozenset(range(A.cols))}
    frontier = set(facets)
    while frontier:
        faces |= frontier
        frontier = {f & g for f in frontier for g in facets if f & g} - faces
    return faces


def oracle_face_lattice(A) -> FaceLattice:
    A = as_matrix(A)
    n = A.cols
    faces = [_face(p, n, A) for p in face_point_sets(A)]
    faces.sort(key=lambda f: (-f.dim, sorted(f.complement)))
    return FaceLattice(n, tuple(faces))


# subdiagram volumes and lattice indices


@dataclass(frozen=True)
class _Blocks:
    H: IntegerMatrix
    beta: tuple[int, ...]  # positions of beta's columns in H
    alpha: tuple[int, ...]  # positions of alpha's columns in H
    middle: tuple[int, ...]  # positions of alpha minus beta
    rb: int
    ra: int


@lru_cache(maxsize=4096)
def _blocks(A: IntegerMatrix, alpha: frozenset[int], beta: frozenset[int]) -> _Blocks:
    if not beta or not beta < alpha:
        raise OracleError("need a nonempty beta strictly contained in alpha")
    rest = [j for j in range(A.cols) if j not in alpha]
    order = sorted(beta) + sorted(alpha - beta) + rest
    H, _ = hermite_normal_form(A.select_columns(order), "row")
    nb, na = len(beta), len(alpha)
    rb = rank(A.select_columns(sorted(beta)))
    ra = rank(A.select_columns(sorted(alpha)))
    if ra == rb:
        raise OracleError("beta spans the same subspace as alpha")
    if any(H[i, j] for i in range(rb, H.rows) for j in range(nb)) or any(
        H[i, j] for i in range(ra, H.rows) for j in range(na)
    ):
        raise OracleError("HNF lacks the expected block structure")
    return _Blocks(H, tuple(range(nb)), tuple(range(na)), tuple(range(nb, na)), rb, ra)


def _block_index(H: IntegerMatrix, nrows_from: int, nrows_to: int, cols: Iterable[int]) -> int:
    return lattice_index(H.select_rows(range(nrows_from, nrows_to)).select_columns(cols))


def subdiagram_volume_A(A, alpha: Iterable[int], beta: Iterable[int]) -> tuple[int, IntegerMatrix]:
    """``mu(alpha, beta)`` from the middle block ``C`` of a row HNF, and ``C`` itself.

    Both volumes are taken in ``Z^k`` and then renormalized to the lattice ``Z C``.
    """
    A = as_matrix(A)
    b = _blocks(A, frozenset(alpha), frozenset(beta))
    C = b.H.select_rows(range(b.rb, b.ra)).select_columns(b.middle)
    cols = C.to_columns()
    with_zero = normalized_volume(LatticePolytope(tuple(cols) + ((0,) * C.rows,)))
    without = normalized_volume(LatticePolytope(tuple(cols)))
    t = lattice_index(C)
    assert with_zero % t == 0 and without % t == 0, "volumes not multiples of [Z^k : Z C]"
    mu = (with_zero - without) // t
    assert mu >= 0
    return mu, C


def lattice_index_A(A, alpha: Iterable[int], beta: Iterable[int]) -> int:
    """``[Z alpha ∩ R beta : Z beta]`` from indices of HNF blocks."""
    A = as_matrix(A)
    b = _blocks(A, frozenset(alpha), frozenset(beta))
    whole = _block_index(b.H, 0, b.ra, b.alpha)
    top = _block_index(b.H, 0, b.rb, b.beta)
    mid = _block_index(b.H, b.rb, b.ra, b.middle)
    q, r = divmod(top * mid, whole)
    assert r == 0, "lattice indices do not divide"
    return q


def pair_table_A(A, lattice: FaceLattice) -> dict[tuple[frozenset, frozenset], tuple[int, int]]:
    A = as_matrix(A)
    out = {}
    for beta in lattice.faces:
        for alpha in lattice.proper_superfaces(beta):
            mu, _ = subdiagram_volume_A(A, alpha.points, beta.points)
            out[alpha.key, beta.key] = (mu, lattice_index_A(A, alpha.points, beta.points))
    return out


def face_volumes_A(A, lattice: FaceLattice) -> dict[frozenset, int]:
    A = as_matrix(A)
    return {
        f.key: normalized_volume(LatticePolytope.from_columns(A.select_columns(sorted(f.points)), "span"))
        for f in lattice.faces
    }


def full_pipeline_A(A, lattice: FaceLattice | None = None):
    """Invariant report computed from ``A`` alone."""
    from .characteristic import assemble_report, euler_recursion

    A = as_matrix(A)
    _guard(rank(A))
    lattice = oracle_face_lattice(A) if lattice is None else lattice
    pairs = pair_table_A(A, lattice)
    eu = euler_recursion(lattice, lambda a, b: pairs[a.key, b.key][0] * pairs[a.key, b.key][1])
    return assemble_report(lattice, face_volumes_A(A, lattice), pairs, eu)


def compare_reports(left, right) -> str | None:
    """First difference between two reports, or ``None`` when they agree."""
    lk = {r.face.key: r for r in left.records}
    rk = {r.face.key: r for r in right.records}
    if set(lk) != set(rk):
        only_l = sorted(sorted(k) for k in set(lk) - set(rk))
        only_r = sorted(sorted(k) for k in set(rk) - set(lk))
        return f"face sets differ: complements only on the left {only_l}, only on the right {only_r}"
    for key in sorted(lk, key=lambda k: (-lk[k].face.dim, sorted(k))):
        a, b = lk[key], rk[key]
        for attr in ("vol", "mu_P", "i_P", "eu"):
            if getattr(a, attr) != getattr(b, attr):
                return f"face {a.face.label()}: {attr} {getattr(a, attr)} != {getattr(b, attr)}"
        if (a.face.dim, a.face.kind) != (b.face.dim, b.face.kind):
            return f"face {a.face.label()}: dim/kind {a.face.dim}/{a.face.kind.value} != {b.face.dim}/{b.face.kind.value}"
    for pair in sorted(set(left.pairs) | set(right.pairs), key=lambda p: (sorted(p[0]), sorted(p[1]))):
        if left.pairs.get(pair) != right.pairs.get(pair):
            alpha, beta = (lk[k].face.label() for k in pair)
            return f"pair ({alpha}, {beta}): (mu, i) {left.pairs.get(pair)} != {right.pairs.get(pair)}"
    for attr in ("V", "delta", "degree", "dual_degree", "ed_degree"):
        if getattr(left, attr) != getattr(right, attr):
            return f"{attr}: {getattr(left, attr)} != {getattr(right, attr)}"
    return None


# benchmark


@dataclass(frozen=True)
class BenchRecord:
    fixture: str
    n: int
    method: str  # "faces", "B" or "A"
    seconds: float | None
    result_hash: str | None
    note: str = ""


def result_hash(report) -> str:
    text = "|".join(",".join(map(str, v)) for v in (report.V, report.delta, (report.ed_degree,)))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _timed(fn, reps: int):
    total = 0.0
    result = None
    for _ in range(reps):
        _blocks.cache_clear()
        t0 = time.perf_counter()
        result = fn()
        total += time.perf_counter() - t0
    return result, total / reps


def benchmark(fixtures: Mapping[str, IntegerMatrix], reps: int = 1, threads: int = 1) -> list[BenchRecord]:
    """Average wall-clock time of face enumeration, the B method and the A method.

    Both invariant methods start from the same precomputed face lattice.
    """
    from .characteristic import compute_report
    from .faces import enumerate_faces
    from .gale import gale_dual_from_A

    if reps < 1:
        raise ValueError("reps must be at least 1")
    out = []
    for name, A in fixtures.items():
        A = as_matrix(A)
        g = gale_dual_from_A(A)
        lattice, t_faces = _timed(lambda: enumerate_faces(g, threads), reps)
        out.append(BenchRecord(name, g.n, "faces", t_faces, None))
        rep_b, t_b = _timed(lambda: compute_report(g, lattice), reps)
        out.append(BenchRecord(name, g.n, "B", t_b, result_hash(rep_b)))
        if rank(A) > MAX_DIM:
            out.append(BenchRecord(name, g.n, "A", None, None, f"skipped: dimension {rank(A)} > {MAX_DIM}"))
            continue
        rep_a, t_a = _timed(lambda: full_pipeline_A(A, lattice), reps)
        out.append(BenchRecord(name, g.n, "A", t_a, result_hash(rep_a)))
    return out


def speedups(records: Sequence[BenchRecord]) -> dict[str, float]:
    """``seconds(A) / seconds(B)`` for every fixture where both methods ran."""
    t: dict[tuple[str, str], float] = {(r.fixture, r.method): r.seconds for r in records if r.seconds is not None}
    return {f: t[f, "A"] / t[f, "B"] for f, m in t if m == "B" and (f, "A") in t and t[f, "B"] > 0}
