"""Faces of ``Conv(A)`` read off the two-column Gale dual.

A set ``I`` of lattice points is the point set of a face exactly when the rows
``b_i`` outside ``I`` admit a strictly positive combination summing to zero.
In the plane that is a purely angular test, so every face comes from one cheap
check over a subset of rows. Faces are keyed by that complement set.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence

from .exact_math import det2, gcd_all
from .gale import GaleSystem

Vec = tuple[int, int]


class FaceKind(str, Enum):
    FULL = "full"
    SIMPLEX = "simplex"
    RELEVANT_LINE = "relevant_line"


@dataclass(frozen=True)
class RelevantLineData:
    v: Vec
    lambdas: tuple[tuple[int, int], ...]  # (row index, lambda) with b_i = lambda * v

    @property
    def positive(self) -> list[int]:
        return [i for i, lam in self.lambdas if lam > 0]

    @property
    def negative(self) -> list[int]:
        return [i for i, lam in self.lambdas if lam < 0]


@dataclass(frozen=True)
class Face:
    points: frozenset[int]
    complement: frozenset[int]
    dim: int
    kind: FaceKind
    line: RelevantLineData | None = field(default=None, compare=False)

    @property
    def key(self) -> frozenset[int]:
        return self.complement

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in sorted(self.points)) + "}"


def primitive(v: Sequence[int]) -> Vec:
    """Primitive vector on the line of ``v``, first nonzero coordinate positive."""
    g = gcd(v[0], v[1])
    x, y = v[0] // g, v[1] // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return x, y


def _half(v: Vec) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(u: Vec, v: Vec) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = det2(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _directions(vectors: Iterable[Sequence[int]]) -> list[Vec]:
    # distinct rays, angularly sorted
    rays = set()
    for x, y in vectors:
        if x or y:
            g = gcd(x, y)
            rays.add((x // g, y // g))
    return sorted(rays, key=cmp_to_key(_angle_cmp))


def collinear(vectors: Sequence[Sequence[int]]) -> bool:
    nz = [v for v in vectors if v[0] or v[1]]
    return all(det2(nz[0], v) == 0 for v in nz[1:]) if nz else True


def positively_dependent(vectors: Sequence[Sequence[int]]) -> bool:
    """Whether some strictly positive combination of ``vectors`` is zero."""
    rays = _directions(vectors)
    if not rays:
        return True
    if len(rays) == 1:
        return False
    if all(det2(rays[0], r) == 0 for r in rays):
        return len(rays) == 2  # two opposite rays
    # the rays must positively span the plane: every angular gap below pi
    m = len(rays)
    return all(det2(rays[k], rays[(k + 1) % m]) > 0 for k in range(m))


def is_face_complement(S: Iterable[int], B) -> bool:
    rows = B.rows if isinstance(B, GaleSystem) else [tuple(r) for r in B]
    return positively_dependent([rows[i] for i in S])


def _line_data(S: Iterable[int], rows: Sequence[Vec]) -> RelevantLineData:
    S = sorted(S)
    v = primitive(rows[S[0]])
    lambdas = []
    for i in S:
        x, y = rows[i]
        lambdas.append((i, x // v[0] if v[0] else y // v[1]))
    return RelevantLineData(v, tuple(lambdas))


def make_face(S: Iterable[int], rows: Sequence[Vec]) -> Face:
    n = len(rows)
    S = frozenset(S)
    points = frozenset(range(n)) - S
    if not S:
        return Face(points, S, n - 3, FaceKind.FULL)
    vecs = [rows[i] for i in S]
    if collinear(vecs):
        line = _line_data(S, rows)
        face = Face(points, S, n - len(S) - 2, FaceKind.RELEVANT_LINE, line)
        assert len(points) == face.dim + 2
        assert line.positive and line.negative
        return face
    face = Face(points, S, n - len(S) - 1, FaceKind.SIMPLEX)
    assert len(points) == face.dim + 1
    return face


def _scan(rows: tuple[Vec, ...], start: int, stop: int) -> list[int]:
    n = len(rows)
    found = []
    for mask in range(start, stop):
        vecs = [rows[i] for i in range(n) if mask >> i & 1]
        if positively_dependent(vecs):
            found.append(mask)
    return found


def _default_threads() -> int:
    env = os.environ.get("TORICPOLAR_THREADS")
    if env:
        return max(1, int(env))
    return 1


@dataclass
class FaceLattice:
    n: int
    faces: tuple[Face, ...]

    def __post_init__(self):
        self.by_key = {f.key: f for f in self.faces}
        assert len(self.by_key) == len(self.faces), "distinct faces share a point set"
        self.full = self.by_key[frozenset()]
        self._supers: dict[frozenset, list[Face]] | None = None

    @property
    def dim(self) -> int:
        return self.full.dim

    def by_dim(self) -> dict[int, list[Face]]:
        out = {d: [] for d in range(self.dim + 1)}
        for f in self.faces:
            out[f.dim].append(f)
        return out

    def f_vector(self) -> list[int]:
        return [len(v) for _, v in sorted(self.by_dim().items())]

    def proper_superfaces(self, beta: Face) -> list[Face]:
        """All faces having ``beta`` as a proper face."""
        if self._supers is None:
            self._supers = {f.key: [] for f in self.faces}
            for a in self.faces:
                for b in self.faces:
                    if a is not b and a.complement < b.complement:
                        self._supers[b.key].append(a)
        return self._supers[beta.key]

    def face_with_points(self, points: Iterable[int]) -> Face:
        return self.by_key[frozenset(range(self.n)) - frozenset(points)]


def contains(alpha: Face, beta: Face) -> bool:
    """``beta ⊆ alpha`` (as faces), i.e. ``B_alpha ⊆ B_beta``."""
    return alpha.complement <= beta.complement


def _face_order(f: Face):
    return (-f.dim, sorted(f.complement))


def enumerate_faces(g: GaleSystem, threads: int | None = None) -> FaceLattice:
    """Every face of ``Conv(A)``, by exhaustive scan of complement subsets."""
    rows = tuple(g.rows)
    n = len(rows)
    total = (1 << n) - 1  # the full mask is the empty face
    threads = _default_threads() if threads is None else threads
    if threads > 1 and n >= 16:
        step = -(-total // (threads * 4))
        chunks = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(threads) as pool:
            parts = pool.map(_scan, *zip(*[(rows, a, b) for a, b in chunks]))
            masks = [m for part in parts for m in part]
    else:
        masks = _scan(rows, 0, total)
    faces = [make_face([i for i in range(n) if m >> i & 1], rows) for m in masks]
    faces.sort(key=_face_order)
    return FaceLattice(n, tuple(faces))


def classify_relevant_lines(B) -> list[RelevantLineData]:
    """All lines through 0 carrying rows of ``B`` in both directions."""
    rows = B.rows if isinstance(B, GaleSystem) else [tuple(r) for r in B]
    groups: dict[Vec, list[int]] = {}
    for i, r in enumerate(rows):
        if r[0] or r[1]:
            groups.setdefault(primitive(r), []).append(i)
    out = []
    for v in sorted(groups):
        line = _line_data(groups[v], rows)
        if line.positive and line.negative:
            out.append(line)
    return out


def lambda_gcd(line: RelevantLineData) -> int:
    return gcd_all(lam for _, lam in line.lambdas)
