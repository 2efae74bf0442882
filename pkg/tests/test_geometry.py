"""Projective space tests: enumeration, incidence, rank, lines, point sets."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongblock.errors import DimensionMismatch
from strongblock.field import Field
from strongblock.geometry import PointSet, ProjectiveSpace


def count_points(q, n):
    return (q ** (n + 1) - 1) // (q - 1)


@pytest.mark.parametrize("params", [(2, 3, 1), (2, 2, 2), (2, 3, 3),
                                    (3, 2, 2), (2, 6, 3), (3, 3, 2)])
def test_point_counts(params):
    p, m, n = params
    space = ProjectiveSpace(Field.build(p, m), n)
    assert space.num_points == count_points(p ** m, n)


def test_known_point_counts():
    assert ProjectiveSpace(Field.build(2, 3), 3).num_points == 585
    assert ProjectiveSpace(Field.build(2, 6), 1).num_points == 65
    assert ProjectiveSpace(Field.build(2, 12), 2).num_points == 16781313
    assert ProjectiveSpace(Field.build(2, 6), 3).num_points == 266305


def test_enumeration_is_all_points_once():
    space = ProjectiveSpace(Field.build(2, 2), 2)
    pts = list(space.points())
    assert len(pts) == space.num_points
    assert len(set(pts)) == space.num_points
    for pt in pts:
        assert space.normalize(pt) == pt


@pytest.mark.parametrize("params", [(2, 2, 2), (2, 3, 3), (3, 2, 2)])
def test_index_roundtrip_exhaustive(params):
    p, m, n = params
    space = ProjectiveSpace(Field.build(p, m), n)
    for i, pt in enumerate(space.points()):
        assert space.point_index(pt) == i
        assert space.point_at(i) == pt
    with pytest.raises(IndexError):
        space.point_at(space.num_points)


def test_index_roundtrip_sampled_big_plane():
    space = ProjectiveSpace(Field.build(2, 12), 2)
    rng = np.random.default_rng(5)
    idx = rng.integers(0, space.num_points, 3000)
    pts = np.asarray([space.point_at(int(i)) for i in idx], dtype=np.int64)
    assert np.array_equal(space.point_index_vec(pts), idx)


def test_canonical_order_is_monotone_in_lead():
    space = ProjectiveSpace(Field.build(2, 3), 2)
    last_lead = 0
    for pt in space.points():
        lead = next(i for i, c in enumerate(pt) if c)
        assert lead >= last_lead
        last_lead = lead


def test_normalize():
    space = ProjectiveSpace(Field.build(2, 3), 2)
    f = space.field
    pt = (f.from_exp(3), f.from_exp(5), 0)
    npt = space.normalize(pt)
    assert npt[0] == f.one
    assert npt[1] == f.div(pt[1], pt[0])
    with pytest.raises(ValueError):
        space.normalize((0, 0, 0))
    with pytest.raises(DimensionMismatch):
        space.normalize((1, 2))


def test_normalize_vec_matches_scalar():
    space = ProjectiveSpace(Field.build(3, 2), 3)
    rng = np.random.default_rng(2)
    mat = rng.integers(0, space.field.order, (300, 4))
    mat[np.all(mat == 0, axis=1), 0] = 1
    norm = space.normalize_vec(mat)
    for row, nrow in zip(mat, norm):
        assert space.normalize(tuple(int(c) for c in row)) == tuple(
            int(c) for c in nrow)


def test_scaling_invariance_of_index():
    space = ProjectiveSpace(Field.build(2, 3), 2)
    f = space.field
    for pt in space.points():
        for lam in range(1, f.order):
            scaled = tuple(f.mul(lam, c) for c in pt)
            assert space.point_index(scaled) == space.point_index(pt)


# ---------------------------------------------------------------------------
# incidence


def test_dot_against_direct_evaluation():
    space = ProjectiveSpace(Field.build(2, 3), 2)
    f = space.field
    rng = np.random.default_rng(9)
    for _ in range(300):
        a = tuple(int(v) for v in rng.integers(0, f.order, 3))
        b = tuple(int(v) for v in rng.integers(0, f.order, 3))
        acc = 0
        for x, y in zip(a, b):
            acc = f.add(acc, f.mul(x, y))
        assert space.dot(a, b) == acc
        assert space.dot(a, b) == space.dot(b, a)


def test_dot_block_matches_scalar():
    space = ProjectiveSpace(Field.build(3, 2), 2)
    rng = np.random.default_rng(4)
    duals = rng.integers(0, 9, (20, 3))
    pts = rng.integers(0, 9, (30, 3))
    block = space.dot_block(duals, pts)
    for i in range(20):
        for j in range(30):
            assert int(block[i, j]) == space.dot(
                tuple(int(c) for c in duals[i]), tuple(int(c) for c in pts[j]))


def test_hyperplane_point_counts():
    # every hyperplane of PG(n,q) carries (q^n - 1)/(q - 1) points
    space = ProjectiveSpace(Field.build(2, 2), 2)
    pts = np.asarray(list(space.points()), dtype=np.int64)
    for h in space.hyperplanes():
        on = np.count_nonzero(
            space.dot_block(np.asarray([h]), pts)[0] == 0)
        assert on == 5


def test_point_hyperplane_duality_symmetric():
    space = ProjectiveSpace(Field.build(2, 3), 3)
    rng = np.random.default_rng(6)
    for _ in range(200):
        i, j = rng.integers(0, space.num_points, 2)
        P, H = space.point_at(int(i)), space.point_at(int(j))
        assert space.incidence(P, H) == space.incidence(H, P)


# ---------------------------------------------------------------------------
# rank


def test_rank_basics():
    space = ProjectiveSpace(Field.build(2, 3), 3)
    e = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    assert space.rank([]) == 0
    assert space.rank(e) == 4
    assert space.rank(e[:2]) == 2
    assert space.rank([e[0], e[0]]) == 1
    assert space.rank(e, target=2) == 2  # early exit honors the target


def test_rank_of_line_points():
    space = ProjectiveSpace(Field.build(2, 3), 3)
    line = space.line_through((1, 0, 0, 0), (0, 1, 1, 0))
    assert space.rank(line) == 2


def test_rank_invariant_under_invertible_transforms():
    space = ProjectiveSpace(Field.build(3, 2), 3)
    f = space.field
    rng = np.random.default_rng(13)

    def random_gl(k):
        while True:
            mat = rng.integers(0, f.order, (k, k))
            pts = [tuple(int(c) for c in row) for row in mat]
            if space.rank(pts) == k:
                return mat

    def apply(mat, pts):
        out = np.zeros((len(pts), 4), dtype=np.int64)
        arr = np.asarray(pts, dtype=np.int64)
        for i in range(4):
            for j in range(4):
                out[:, i] = f.add_vec(out[:, i],
                                      f.mul_vec(arr[:, j], int(mat[i, j])))
        return [tuple(int(c) for c in row) for row in out]

    for _ in range(20):
        npts = int(rng.integers(1, 8))
        pts = [tuple(int(c) for c in row)
               for row in rng.integers(0, f.order, (npts, 4))]
        M = random_gl(4)
        assert space.rank(apply(M, pts)) == space.rank(pts)


# ---------------------------------------------------------------------------
# lines


@pytest.mark.parametrize("params", [(2, 2), (2, 3)])
def test_plane_line_axioms_exhaustive(params):
    p, m = params
    space = ProjectiveSpace(Field.build(p, m), 2)
    q = space.field.order
    pts = list(space.points())
    lines = set()
    for i, P in enumerate(pts):
        for Q in pts[i + 1:]:
            lines.add(frozenset(space.line_through(P, Q)))
    # line count, line size, and the two-points-one-line axiom
    assert len(lines) == space.num_points
    for line in lines:
        assert len(line) == q + 1
    for line_a in lines:
        for line_b in lines:
            if line_a is not line_b:
                assert len(line_a & line_b) <= 1


def test_line_through_is_symmetric_and_contains_endpoints():
    space = ProjectiveSpace(Field.build(2, 3), 3)
    P, Q = (1, 0, 2, 0), (0, 1, 0, 5)
    line = space.line_through(P, Q)
    assert set(line) == set(space.line_through(Q, P))
    assert space.normalize(P) in line
    assert space.normalize(Q) in line
    with pytest.raises(ValueError):
        space.line_through(P, P)


def test_pencil_through_point():
    space = ProjectiveSpace(Field.build(2, 2), 2)
    q = space.field.order
    P = space.normalize((1, 2, 3))
    pencil = [set(line) for line in space.lines_through_point(P)]
    assert len(pencil) == q + 1
    union = set()
    for line in pencil:
        assert P in line
        union |= line
    assert union == set(space.points())  # pencil covers the plane
    for i, la in enumerate(pencil):
        for lb in pencil[i + 1:]:
            assert la & lb == {P}


def test_pencil_in_projective_line():
    space = ProjectiveSpace(Field.build(2, 2), 1)
    pencil = list(space.lines_through_point((1, 0)))
    assert len(pencil) == 1
    assert set(pencil[0]) == set(space.points())


# ---------------------------------------------------------------------------
# point sets


def test_pointset_dedupe_and_normalize():
    space = ProjectiveSpace(Field.build(2, 3), 2)
    f = space.field
    pt = (f.from_exp(2), f.one, 0)
    scaled = tuple(f.mul(f.from_exp(1), c) for c in pt)
    ps = PointSet(space, [pt, scaled, (1, 0, 0)])
    assert len(ps) == 2
    assert ps.points[0] == space.normalize(pt)


def test_pointset_json_roundtrip(tmp_path):
    space = ProjectiveSpace(Field.build(2, 3), 3)
    pts = [space.point_at(i) for i in range(0, 585, 37)]
    ps = PointSet(space, pts, {pts[0]: 4, pts[1]: 9})
    path = tmp_path / "pts.json"
    ps.save(path)
    back = PointSet.load(path)
    assert back.points == ps.points
    assert back.labels == ps.labels
    assert back.space.field.meta() == space.field.meta()


def test_pointset_indices_match_scalar():
    space = ProjectiveSpace(Field.build(3, 2), 2)
    ps = PointSet(space, [space.point_at(i) for i in (0, 5, 17, 90)])
    assert list(ps.indices()) == [space.point_index(pt) for pt in ps.points]


SPACE22 = ProjectiveSpace(Field.build(2, 2), 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, SPACE22.num_points - 1),
       st.integers(0, SPACE22.num_points - 1))
def test_two_points_determine_a_line(i, j):
    space = SPACE22
    P, Q = space.point_at(i), space.point_at(j)
    if P == Q:
        return
    line = space.line_through(P, Q)
    assert len(set(line)) == space.field.order + 1
    assert space.rank(line) == 2
