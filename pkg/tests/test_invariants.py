import pytest
from hypothesis import given, settings

from strategies import CUBIC_B, RUNNING_A, RUNNING_B, gale_duals, system
from toricpolar.data import FIXTURES, fixture_matrix
from toricpolar.exact_math import RankError, det2, torsion_order_rank2
from toricpolar.faces import FaceKind, enumerate_faces
from toricpolar.gale import gale_dual_from_A
from toricpolar.invariants import (
    FaceError,
    face_volume,
    gamma_mu_i,
    lattice_ideal_degree_codim1,
    lattice_ideal_degree_codim2,
    mu_i_full,
    mu_i_pair,
    nu_terms,
    relevant_face_volume,
    relevant_line_mu_i,
    simplex_mu_i,
    simplex_workspace,
)


def one_based(S):
    return frozenset(i - 1 for i in S)


@pytest.fixture(scope="module")
def running():
    g = gale_dual_from_A(RUNNING_A)
    return g, enumerate_faces(g)


def face(lat, points):
    return lat.face_with_points(one_based(points))


@pytest.mark.parametrize("b, expected", [((1, 2, -3), 3), ((3, 1, 1, -5), 5), ((1, -4, 3), 4)])
def test_codim1_degree(b, expected):
    assert lattice_ideal_degree_codim1(b) == expected


def test_codim1_errors():
    with pytest.raises(ValueError, match="not homogeneous"):
        lattice_ideal_degree_codim1((1, 2))
    with pytest.raises(ValueError):
        lattice_ideal_degree_codim1((0, 0))


def test_codim2_degree_examples():
    assert lattice_ideal_degree_codim2(RUNNING_B) == 12
    assert lattice_ideal_degree_codim2([(2, 2), (-4, 0), (1, -3), (1, 1)]) == 12
    assert lattice_ideal_degree_codim2(CUBIC_B) == 3
    assert nu_terms(CUBIC_B) == {(0, 1): 2, (1, 3): 1}
    assert nu_terms(RUNNING_B) == {}


def test_codim2_errors():
    with pytest.raises(ValueError, match="not homogeneous"):
        lattice_ideal_degree_codim2([(1, 0), (0, 1)])
    with pytest.raises(RankError):
        lattice_ideal_degree_codim2([(1, 1), (-1, -1)])
    with pytest.raises(ValueError):
        lattice_ideal_degree_codim2([(1, 0, 0), (-1, 0, 0)])


def test_codim2_drops_zero_row():
    assert lattice_ideal_degree_codim2(list(RUNNING_B) + [(0, 0)]) == 12


def test_mu_i_full_running(running):
    g, lat = running
    assert mu_i_full(face(lat, {2, 3, 5}), g) == (1, 1)  # e1
    assert mu_i_full(face(lat, {1, 3}), g) == (1, 1)  # e2
    assert mu_i_full(face(lat, {1, 2}), g) == (2, 4)  # e3
    assert mu_i_full(face(lat, {1}), g) == (9, 1)  # v1
    assert mu_i_full(face(lat, {2}), g) == (8, 1)
    assert mu_i_full(face(lat, {3}), g) == (2, 1)
    with pytest.raises(FaceError):
        mu_i_full(lat.full, g)


def test_simplex_workspace_e3(running):
    g, _ = running
    w, Bp = simplex_workspace(one_based({3, 4, 5}), g.rows)
    assert w == (1, 1)
    assert Bp == [(2, 2), (-4, 0), (1, -3), (1, 1)]
    assert torsion_order_rank2(Bp) == 4


def test_mu_i_pair_running(running):
    g, lat = running
    e1, e2, e3 = face(lat, {2, 3, 5}), face(lat, {1, 3}), face(lat, {1, 2})
    v1, v2, v3 = face(lat, {1}), face(lat, {2}), face(lat, {3})
    assert mu_i_pair(e1, v2, g) == (2, 1)
    assert mu_i_pair(e1, v3, g) == (1, 1)
    assert mu_i_pair(e2, v1, g) == (1, 1)
    assert mu_i_pair(e2, v3, g) == (1, 1)
    assert mu_i_pair(e3, v1, g) == (1, 1)
    assert mu_i_pair(e3, v2, g) == (1, 1)
    with pytest.raises(FaceError, match="not a proper face"):
        mu_i_pair(e1, v1, g)
    with pytest.raises(FaceError):
        mu_i_pair(lat.full, v1, g)


def test_gamma_example(running):
    g, _ = running
    assert [det2((1, 0), g.rows[i]) for i in sorted(one_based({1, 3, 4, 5}))] == [0, 2, 0, -3]


def test_face_volumes_running(running):
    g, lat = running
    assert face_volume(face(lat, {2, 3, 5}), g) == 3
    assert face_volume(lat.full, g) == 12
    for p in (1, 2, 3):
        assert face_volume(face(lat, {p}), g) == 1


def _orientation_checks(g):
    rows = g.rows
    lat = enumerate_faces(g)
    for f in lat.faces:
        if f.kind is not FaceKind.RELEVANT_LINE:
            continue
        v = f.line.v
        minus = (-v[0], -v[1])
        lams = [lam for _, lam in f.line.lambdas]
        assert relevant_line_mu_i(lams) == relevant_line_mu_i([-x for x in lams])
        assert relevant_face_volume(v, f.points, rows) == relevant_face_volume(minus, f.points, rows)
        for beta in lat.faces:
            if beta.kind is FaceKind.SIMPLEX and f.complement < beta.complement:
                S = sorted(beta.complement)
                assert gamma_mu_i(v, S, rows) == gamma_mu_i(minus, S, rows) == mu_i_pair(f, beta, g)


@pytest.mark.parametrize("name", FIXTURES)
def test_orientation_independence_fixtures(name):
    _orientation_checks(gale_dual_from_A(fixture_matrix(name)))


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_orientation_independence(B):
    _orientation_checks(system(B))


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_workspace_identities(B):
    g = system(B)
    rows = g.rows
    for f in enumerate_faces(g).faces:
        w, _ = simplex_workspace(f.complement, rows)
        assert w == (sum(rows[i][0] for i in f.points), sum(rows[i][1] for i in f.points))
    for v in [(1, 0), (0, 1), (2, -3)]:
        assert sum(det2(v, r) for r in rows) == 0


def _torsion_consistency(g):
    for f in enumerate_faces(g).faces:
        if f.kind is FaceKind.SIMPLEX:
            _, Bp = simplex_workspace(f.complement, g.rows)
            _, i = simplex_mu_i(f.complement, g.rows)
            assert torsion_order_rank2(Bp) == i == g.minors.gcd(sorted(f.complement))


@pytest.mark.parametrize("name", FIXTURES)
def test_torsion_matches_minor_gcd_fixtures(name):
    _torsion_consistency(gale_dual_from_A(fixture_matrix(name)))


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_torsion_matches_minor_gcd(B):
    _torsion_consistency(system(B))


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_pair_values_are_positive(B):
    g = system(B)
    lat = enumerate_faces(g)
    for beta in lat.faces:
        for alpha in lat.proper_superfaces(beta):
            mu, i = mu_i_full(beta, g) if alpha is lat.full else mu_i_pair(alpha, beta, g)
            assert mu >= 1 and i >= 1
