"""Tests for R*, the coset subgeometry partition, and B(k,q)."""

from math import comb

import numpy as np
import pytest

from strongblock.errors import BudgetExceeded
from strongblock.partition import (
    build_bset,
    build_rgroup,
    full_partition,
    orbit_transitivity_check,
    prime_power,
    r_tuple_matrix,
    subgeometry_points,
)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(6)
    with pytest.raises(ValueError):
        prime_power(1)


def test_build_rgroup_rejects_small_k():
    with pytest.raises(ValueError):
        build_rgroup(2, 2)


@pytest.mark.parametrize("expect", [(2, 3, 21, 3), (2, 4, 105, 39),
                                    (3, 3, 104, 7), (3, 4, 1040, 511),
                                    (4, 3, 315, 13)])
def test_rgroup_parameters(expect):
    q, k, r, stride = expect
    rg = build_rgroup(q, k)
    assert (rg.r, rg.stride) == (r, stride)
    assert rg.field.order == q ** (k * (k - 1))
    assert rg.geom_field.order == q ** (k - 1)
    assert rg.r * rg.stride == rg.field.group_order


@pytest.mark.parametrize("qk", [(2, 3), (2, 4)])
def test_rstar_is_product_set(qk):
    # independent recomputation: exponents of F_{q^(k-1)}* . F_{q^k}*
    q, k = qk
    rg = build_rgroup(q, k)
    n = rg.field.group_order
    s_a = n // (q ** (k - 1) - 1)
    s_b = n // (q ** k - 1)
    prods = set()
    for i in range(q ** (k - 1) - 1):
        for j in range(q ** k - 1):
            prods.add((i * s_a + j * s_b) % n)
    expect = {int(c) - 1 for c in rg.rstar_codes()}
    assert prods == expect


def test_rstar_membership_predicates(rg24):
    codes = rg24.rstar_codes()
    assert len(codes) == rg24.r
    assert np.all(rg24.in_rstar(codes))
    assert np.all(rg24.in_r(rg24.r_codes()))
    assert not rg24.in_rstar(np.array([0]))[0]
    assert rg24.in_r(np.array([0]))[0]
    # multiplicative closure
    rng = np.random.default_rng(1)
    a = codes[rng.integers(0, rg24.r, 500)]
    b = codes[rng.integers(0, rg24.r, 500)]
    assert np.all(rg24.in_rstar(rg24.field.mul_vec(a, b)))


def test_coset_bookkeeping(rg24):
    f = rg24.field
    with pytest.raises(ValueError):
        rg24.coset_of(0)
    for c in range(rg24.stride):
        rep = rg24.coset_rep(c)
        assert rg24.coset_of(rep) == c
        # coset is invariant under scaling by R*
        scaled = f.mul(rep, int(rg24.rstar_codes()[5]))
        assert rg24.coset_of(scaled) == c


@pytest.mark.parametrize("qk", [(2, 3), (2, 4), (3, 4)])
def test_coset_subgeometries_partition_the_space(qk):
    q, k = qk
    rg = build_rgroup(q, k)
    parts = full_partition(rg)
    size = (q ** k - 1) // (q - 1)
    assert len(parts) == rg.stride
    seen = set()
    for ps in parts:
        assert len(ps) == size
        assert not (seen & set(ps.points))
        seen |= set(ps.points)
    assert len(seen) == parts[0].space.num_points


def test_subgeometry_structure(rg24):
    sub = subgeometry_points(rg24, 7)
    assert len(sub) == 15
    assert all(tag == 7 for tag in sub.labels.values())
    # spans the whole space
    assert sub.space.rank(sub.points) == 4
    # canonical index order and determinism
    idx = list(sub.indices())
    assert idx == sorted(idx)
    assert sub.points == subgeometry_points(rg24, 7).points


def test_subgeometry_alternate_basis(rg24):
    f = rg24.field
    basis = (f.from_exp(3), f.from_exp(2), f.from_exp(1), f.one)
    sub = subgeometry_points(rg24, 0, basis)
    assert len(sub) == 15
    assert sub.space.rank(sub.points) == 4


def test_fano_subgeometry(rg23):
    # q=2, k=3: each coset subgeometry is a Fano plane inside PG(2,4)
    sub = subgeometry_points(rg23, 0)
    assert len(sub) == 7
    space = sub.space
    pts = set(sub.points)
    # every pair of its points spans a line meeting it in exactly 3 points
    for P in pts:
        for Q in pts:
            if P != Q:
                line = set(space.line_through(P, Q))
                assert len(line & pts) == 3


def test_r_tuple_matrix(rg23):
    mat = r_tuple_matrix(rg23, 2)
    r = rg23.r
    assert mat.shape == (((r + 1) ** 2 - 1) // r, 2)
    assert np.all(rg23.in_r(mat))
    from strongblock.geometry import ProjectiveSpace
    space = ProjectiveSpace(rg23.field, 1)
    idx = space.point_index_vec(mat)
    assert np.all(np.diff(idx) > 0)  # sorted, no duplicates
    with pytest.raises(BudgetExceeded):
        r_tuple_matrix(rg23, 2, budget=10)


def test_bset_census(bset24):
    # |B(4,2)| and the weight census C(3,w) r^(w-1)
    r = bset24.rgroup.r
    assert len(bset24) == ((r + 1) ** 3 - 1) // r == 11343
    census = bset24.weight_census()
    assert census == {w: comb(3, w) * r ** (w - 1) for w in (1, 2, 3)}
    assert census == {1: 3, 2: 315, 3: 11025}


def test_bset_small_case(bset23):
    assert len(bset23) == 23
    assert bset23.weight_census() == {1: 2, 2: 21}


def test_bset_contains(bset24):
    rng = np.random.default_rng(8)
    for i in rng.integers(0, len(bset24), 50):
        assert bset24.contains(tuple(int(c) for c in bset24.matrix[int(i)]))
    f = bset24.rgroup.field
    non_r = next(c for c in range(2, f.order) if not bset24.rgroup.in_r(
        np.array([c]))[0])
    assert not bset24.contains((1, non_r, 0))


def test_bset_budget(rg24):
    with pytest.raises(BudgetExceeded):
        build_bset(rg24, budget=100)


@pytest.mark.parametrize("weight", [1, 2, 3])
def test_orbit_transitivity(bset24, weight):
    wits = orbit_transitivity_check(bset24, weight, samples=20, seed=weight)
    assert len(wits) == 20
    assert all(w.verified for w in wits)
    for w in wits:
        assert sorted(w.sigma) == list(range(3))


def test_orbit_transitivity_rejects_missing_weight(bset23):
    with pytest.raises(ValueError):
        orbit_transitivity_check(bset23, 5)
