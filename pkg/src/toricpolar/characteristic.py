"""Euler obstructions, Chern-Mather volumes, polar degrees and the ED degree."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Sequence

from .faces import Face, FaceKind, FaceLattice, enumerate_faces
from .gale import GaleSystem
from .invariants import face_volume, mu_i_full, mu_i_pair


class ConsistencyError(RuntimeError):
    """Two independent routes to the same number disagree."""


class ConventionError(ValueError):
    pass


@dataclass(frozen=True)
class FaceRecord:
    face: Face
    vol: int
    mu_P: int | None
    i_P: int | None
    eu: int


@dataclass(frozen=True)
class InvariantReport:
    n: int
    records: tuple[FaceRecord, ...]
    pairs: Mapping[tuple[frozenset, frozenset], tuple[int, int]] = field(repr=False)
    V: tuple[int, ...]
    delta: tuple[int, ...]
    degree: int
    dual_degree: int
    ed_degree: int
    convention: str = "main"

    @property
    def cm_class(self) -> dict[int, int]:
        """Coefficients of ``c_M = sum V_i h^(n-i)``, keyed by the power of ``h``."""
        return {self.n - i: v for i, v in enumerate(self.V)}

    def record(self, points) -> FaceRecord:
        points = frozenset(points)
        for r in self.records:
            if r.face.points == points:
                return r
        raise KeyError(points)


PairWeight = Callable[[Face, Face], int]


def euler_recursion(lattice: FaceLattice, weight: PairWeight) -> dict[frozenset, int]:
    """``Eu`` by descending dimension; ``weight(alpha, beta)`` is ``mu * i``."""
    eu = {lattice.full.key: 1}
    for face in lattice.faces:  # sorted by decreasing dimension
        if face.kind is FaceKind.FULL:
            continue
        total = 0
        for alpha in lattice.proper_superfaces(face):
            sign = -1 if (alpha.dim - face.dim - 1) % 2 else 1
            total += sign * weight(alpha, face) * eu[alpha.key]
        eu[face.key] = total
    return eu


def pair_table(lattice: FaceLattice, g: GaleSystem) -> dict[tuple[frozenset, frozenset], tuple[int, int]]:
    """``(mu, i)`` for every pair ``beta ⊊ alpha``, ``alpha = P`` included."""
    out = {}
    for beta in lattice.faces:
        for alpha in lattice.proper_superfaces(beta):
            if alpha.kind is FaceKind.FULL:
                out[alpha.key, beta.key] = mu_i_full(beta, g)
            else:
                out[alpha.key, beta.key] = mu_i_pair(alpha, beta, g)
    return out


def euler_obstructions(lattice: FaceLattice, g: GaleSystem, pairs=None) -> dict[frozenset, int]:
    pairs = pair_table(lattice, g) if pairs is None else pairs

    def weight(alpha, beta):
        mu, i = pairs[alpha.key, beta.key]
        return mu * i

    return euler_recursion(lattice, weight)


def chern_mather_volumes(lattice: FaceLattice, vols: Mapping[frozenset, int], eu: Mapping[frozenset, int]) -> list[int]:
    V = [0] * (lattice.dim + 1)
    for f in lattice.faces:
        V[f.dim] += vols[f.key] * eu[f.key]
    return V


def polar_degrees(V: Sequence[int], n: int) -> list[int]:
    # sign (-1)^(n-2-j): the only choice reproducing the worked examples
    if len(V) != n - 2:
        raise ValueError(f"expected {n - 2} Chern-Mather volumes, got {len(V)}")
    return [
        sum((-1) ** (n - 2 - j) * comb(j, i + 1) * V[j - 1] for j in range(i + 1, n - 1))
        for i in range(n - 2)
    ]


def ed_degree_from_volumes(V: Sequence[int]) -> int:
    top = len(V) - 1  # = n - 3
    return sum((-1) ** (top - j) * (2 ** (j + 1) - 1) * v for j, v in enumerate(V))


def ed_degree(V: Sequence[int], delta: Sequence[int] | None = None) -> int:
    """ED degree from the Chern-Mather volumes, checked against ``sum(delta)``."""
    ed = ed_degree_from_volumes(V)
    if delta is None:
        delta = polar_degrees(V, len(V) + 2)
    if sum(delta) != ed:
        raise ConsistencyError(f"sum of polar degrees {sum(delta)} ≠ ED formula value {ed}")
    return ed


def dual_degree(delta: Sequence[int]) -> int:
    for d in delta:
        if d:
            return d
    raise ValueError("all polar degrees vanish")


def assemble_report(lattice, vols, pairs, eu, convention="main") -> InvariantReport:
    n = lattice.n
    V = chern_mather_volumes(lattice, vols, eu)
    delta = polar_degrees(V, n)
    ed = ed_degree(V, delta)
    if delta[-1] != V[-1]:
        raise ConsistencyError("top polar degree differs from the degree")
    records = []
    for f in lattice.faces:
        mu_i = pairs.get((lattice.full.key, f.key))
        records.append(FaceRecord(f, vols[f.key], *(mu_i or (None, None)), eu[f.key]))
    return InvariantReport(
        n=n,
        records=tuple(records),
        pairs=dict(pairs),
        V=tuple(V),
        delta=tuple(delta),
        degree=V[-1],
        dual_degree=dual_degree(delta),
        ed_degree=ed,
        convention=convention,
    )


def compute_report(g: GaleSystem, lattice: FaceLattice | None = None, threads: int | None = None) -> InvariantReport:
    """Full invariant report using only the Gale dual formulas."""
    lattice = enumerate_faces(g, threads) if lattice is None else lattice
    pairs = pair_table(lattice, g)
    eu = euler_obstructions(lattice, g, pairs)
    vols = {f.key: face_volume(f, g) for f in lattice.faces}
    return assemble_report(lattice, vols, pairs, eu)


def _exact(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyError(f"{what}: {num}/{den} is not an integer")
    return q


def convert_convention(report: InvariantReport, g: GaleSystem) -> InvariantReport:
    """Move lattice indices from the Euler obstructions into the volumes.

    Needs ``[Z^(n-2) : Z A] = 1``; ``i(A, P)`` is taken to be 1.
    """
    if report.convention != "main":
        raise ConventionError("report is already in the alternate convention")
    if g.index_ZA != 1:
        raise ConventionError(f"alternate convention requires saturated A, but [Z^d : Z A] = {g.index_ZA}")
    full = next(r.face for r in report.records if r.face.kind is FaceKind.FULL)
    idx = {r.face.key: (1 if r.face is full else r.i_P) for r in report.records}

    pairs = {}
    for (a, b), (mu, i) in report.pairs.items():
        pairs[a, b] = Fraction(mu * i * idx[a], idx[b])
    records = []
    for r in report.records:
        k = r.face.key
        eu = _exact(r.eu, idx[k], f"Eu/i for face {r.face.label()}")
        mu = None if r.mu_P is None else pairs[full.key, k]
        if mu is not None and mu.denominator != 1:
            raise ConsistencyError(f"mu' for face {r.face.label()} is not an integer")
        records.append(replace(r, vol=r.vol * idx[k], eu=eu, mu_P=None if mu is None else int(mu), i_P=None if mu is None else 1))

    # the alternate recursion must reproduce Eu' on its own
    dims = {r.face.key: r.face.dim for r in records}
    by_beta: dict[frozenset, list] = {}
    for (a, b), w in pairs.items():
        by_beta.setdefault(b, []).append((a, w))
    eu_alt = {full.key: Fraction(1)}
    for r in records:  # decreasing dimension
        f = r.face
        if f is full:
            continue
        total = sum(((-1) ** (dims[a] - f.dim - 1) * w * eu_alt[a] for a, w in by_beta.get(f.key, ())), Fraction(0))
        eu_alt[f.key] = total
        if total != r.eu:
            raise ConsistencyError(f"alternate recursion gives Eu'={total} for {f.label()}, expected {r.eu}")

    V = [0] * len(report.V)
    for r in records:
        V[r.face.dim] += r.vol * r.eu
    if tuple(V) != report.V:
        raise ConsistencyError("Chern-Mather volumes changed under the convention switch")
    return replace(
        report,
        records=tuple(records),
        pairs={k: (int(w) if w.denominator == 1 else w, 1) for k, w in pairs.items()},
        convention="alternate",
    )
