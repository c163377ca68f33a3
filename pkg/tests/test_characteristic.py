from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from strategies import RUNNING_A, UNIMODULAR_2X2, gale_duals, saturated_system, system
from toricpolar.characteristic import (
    ConsistencyError,
    ConventionError,
    chern_mather_volumes,
    compute_report,
    convert_convention,
    dual_degree,
    ed_degree,
    ed_degree_from_volumes,
    euler_obstructions,
    euler_recursion,
    polar_degrees,
)
from toricpolar.data import FIXTURES, fixture_matrix, golden
from toricpolar.faces import enumerate_faces
from toricpolar.gale import a_from_gale_dual, gale_dual_from_A, validate
from toricpolar.invariants import face_volume
from toricpolar.oracle import compare_reports


def one_based(S):
    return frozenset(i - 1 for i in S)


@pytest.fixture(scope="module")
def running():
    g = gale_dual_from_A(RUNNING_A)
    return g, compute_report(g)


TABLE_1 = {  # points -> (Vol, mu(P,.), i(P,.), Eu)
    (2, 3, 5): (3, 1, 1, 1),
    (1, 3): (1, 1, 1, 1),
    (1, 2): (1, 2, 4, 8),
    (1,): (1, 9, 1, 0),
    (2,): (1, 8, 1, 2),
    (3,): (1, 2, 1, 0),
}


def test_euler_obstructions_running(running):
    g, report = running
    lat = enumerate_faces(g)
    eu = euler_obstructions(lat, g)
    assert eu[lat.full.key] == 1
    for pts, (_, _, _, e) in TABLE_1.items():
        assert eu[lat.face_with_points(one_based(pts)).key] == e


def test_report_running(running):
    _, r = running
    for pts, expected in TABLE_1.items():
        rec = r.record(one_based(pts))
        assert (rec.vol, rec.mu_P, rec.i_P, rec.eu) == expected
    assert r.V == (2, 12, 12)
    assert r.delta == (14, 24, 12)
    assert (r.degree, r.dual_degree, r.ed_degree) == (12, 14, 50)
    assert r.cm_class == {5: 2, 4: 12, 3: 12}


def test_chern_mather_volumes_running(running):
    g, _ = running
    lat = enumerate_faces(g)
    vols = {f.key: face_volume(f, g) for f in lat.faces}
    assert chern_mather_volumes(lat, vols, euler_obstructions(lat, g)) == [2, 12, 12]


@pytest.mark.parametrize(
    "V, n, delta",
    [
        ((2, 12, 12), 5, [14, 24, 12]),
        ((2, 3), 4, [4, 3]),
    ],
)
def test_polar_degree_examples(V, n, delta):
    assert polar_degrees(V, n) == delta
    assert ed_degree(V) == sum(delta)


@pytest.mark.parametrize("n", [4, 5, 6, 9])
def test_polar_degrees_of_pure_top_volume(n):
    V = [0] * (n - 3) + [7]
    assert polar_degrees(V, n) == [7 * comb(n - 2, i + 1) for i in range(n - 2)]


def test_polar_degrees_length_check():
    with pytest.raises(ValueError):
        polar_degrees((1, 2), 5)


def test_ed_degree_formula_values():
    assert ed_degree_from_volumes((2, 12, 12)) == 2 - 36 + 84
    assert ed_degree((2, 3)) == 7


def test_ed_degree_mismatch_raises():
    with pytest.raises(ConsistencyError):
        ed_degree((2, 12, 12), (14, 24, 11))


def test_dual_degree():
    assert dual_degree((4, 3)) == 4
    assert dual_degree((0, 0, 5, 1)) == 5
    with pytest.raises(ValueError):
        dual_degree((0, 0))


def test_unit_weights_give_unit_obstructions():
    for name in FIXTURES:
        lat = enumerate_faces(gale_dual_from_A(fixture_matrix(name)))
        assert set(euler_recursion(lat, lambda a, b: 1).values()) == {1}


def test_smooth_example():
    # cubic scroll: a smooth trapezoid, so every weight and every Eu is 1
    g = gale_dual_from_A([[0, 1, 2, 0, 1], [0, 0, 0, 1, 1], [1, 1, 1, 1, 1]])
    r = compute_report(g)
    assert all(rec.eu == 1 for rec in r.records)
    assert all(w == (1, 1) for w in r.pairs.values())
    assert r.V == (4, 5, 3)  # vertices, edge lengths 2+1+1+1, twice the area
    assert r.ed_degree == 4 - 3 * 5 + 7 * 3


def test_alternate_convention_running(running):
    g, r = running
    alt = convert_convention(r, g)
    e3 = alt.record(one_based({1, 2}))
    assert (e3.eu, e3.vol) == (2, 4)
    e1 = alt.record(one_based({2, 3, 5}))
    assert (e1.eu, e1.vol) == (1, 3)
    assert (alt.V, alt.delta, alt.ed_degree) == ((2, 12, 12), (14, 24, 12), 50)
    assert alt.convention == "alternate"
    with pytest.raises(ConventionError):
        convert_convention(alt, g)


def test_alternate_convention_needs_saturated_A():
    g = a_from_gale_dual([(2, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    assert g.index_ZA == 2
    with pytest.raises(ConventionError, match="requires saturated A.*= 2"):
        convert_convention(compute_report(g), g)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_consistency(name):
    g = gale_dual_from_A(fixture_matrix(name))
    r = compute_report(g)
    gold = golden(name)
    assert (str(r.degree), str(r.dual_degree), str(r.ed_degree)) == (
        gold["degree"],
        gold["dual_degree"],
        gold["ed_degree"],
    )
    assert all(d >= 0 for d in r.delta)
    assert r.delta[-1] == r.V[-1] == r.degree
    assert sum(r.delta) == ed_degree_from_volumes(r.V)
    assert g.index_ZA == 1
    alt = convert_convention(r, g)
    assert (alt.V, alt.delta, alt.ed_degree) == (r.V, r.delta, r.ed_degree)


def _relabel(report, perm):
    # perm[k] is the old index of new row k
    out = {}
    for rec in report.records:
        old = frozenset(perm[k] for k in rec.face.complement)
        out[old] = (rec.face.dim, rec.face.kind, rec.vol, rec.mu_P, rec.i_P, rec.eu)
    pairs = {(frozenset(perm[k] for k in a), frozenset(perm[k] for k in b)): w for (a, b), w in report.pairs.items()}
    return out, pairs


@settings(max_examples=200, deadline=None)
@given(gale_duals(), st.randoms(use_true_random=False))
def test_report_invariant_under_row_permutation(B, rnd):
    g = system(B)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    r0, r1 = compute_report(g), compute_report(g.permuted(perm))
    assert _relabel(r1, perm) == _relabel(r0, list(range(g.n)))
    assert (r1.V, r1.delta, r1.ed_degree, r1.dual_degree) == (r0.V, r0.delta, r0.ed_degree, r0.dual_degree)


@settings(max_examples=200, deadline=None)
@given(gale_duals(), st.sampled_from(UNIMODULAR_2X2))
def test_report_invariant_under_basis_change(B, U):
    g = system(B)
    assert compare_reports(compute_report(g), compute_report(g.with_basis_change(U))) is None


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_report_identities(B):
    r = compute_report(system(B))
    assert r.record(range(len(B))).eu == 1
    assert r.delta[-1] == r.V[-1]
    assert sum(r.delta) == ed_degree_from_volumes(r.V) == r.ed_degree


@settings(max_examples=200, deadline=None)
@given(gale_duals())
def test_alternate_convention_preserves_totals(B):
    g = saturated_system(B)
    assert validate(g) == [] and g.index_ZA == 1
    r = compute_report(g)
    alt = convert_convention(r, g)  # raises on any inexact Eu / i
    assert (alt.V, alt.delta, alt.ed_degree) == (r.V, r.delta, r.ed_degree)
    for a, b in zip(r.records, alt.records):
        assert a.vol * a.eu == b.vol * b.eu
