"""R-independence decisions, searches for hyperplanes missing B(k,q), the
exhaustive dual-marking blocking scan, and the weight-1 line statistics.

Independence of (a_1, ..., a_m) is certified through the incidence of the
hyperplane with dual coordinates (a_1, ..., a_m) against the set of points
with all coordinates in R: a nontrivial relation exists exactly when some such
point lies on the hyperplane.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded
from .geometry import ProjectiveSpace
from .partition import BSet, DEFAULT_ENUM_BUDGET, RGroup, r_tuple_matrix

SCAN_BLOCK = 32  # B points marked per vectorized pencil batch


@dataclass
class IndependenceVerdict:
    status: str          # "independent" | "dependent" | "unknown"
    witness: tuple | None  # rho codes with sum rho_i * alpha_i = 0
    certification: str


@dataclass
class BlockingVerdict:
    status: str          # "blocking" | "not-blocking"
    witness: tuple | None  # hyperplane dual coordinates missing B
    method: str
    lines_scanned: int = 0


@dataclass
class SearchResult:
    status: str          # "found" | "not-found"
    alphas: tuple | None
    strategy: str
    seed: int | None
    trials: int
    certification: str


def _relation_value(rg: RGroup, alphas, rhos):
    f = rg.field
    acc = 0
    for a, rho in zip(alphas, rhos):
        acc = f.add(acc, f.mul(a, rho))
    return acc


def is_r_independent(alphas, rg: RGroup, budget=DEFAULT_ENUM_BUDGET,
                     fallback_samples=10 ** 5, seed=0):
    """Decide whether the given nonzero field elements are R-independent.

    Certification enumerates all normalized R-coordinate points of the
    matching projective space and tests them against the hyperplane defined
    by the alphas.  When that enumeration is out of budget, only randomized
    refutation runs and the verdict may be "unknown".
    """
    alphas = tuple(int(a) for a in alphas)
    m = len(alphas)
    if m < 2:
        raise ValueError("need at least two elements")
    if any(a == 0 for a in alphas):
        raise ValueError("alphas must be nonzero")
    f = rg.field
    try:
        mat = r_tuple_matrix(rg, m, budget)
    except BudgetExceeded:
        rng = random.Random(seed)
        rcodes = rg.r_codes()
        for _ in range(fallback_samples):
            rhos = tuple(int(rcodes[rng.randrange(len(rcodes))]) for _ in range(m))
            if all(r == 0 for r in rhos):
                continue
            if _relation_value(rg, alphas, rhos) == 0:
                return IndependenceVerdict("dependent", rhos, "randomized")
        return IndependenceVerdict("unknown", None, "randomized")
    acc = np.zeros(mat.shape[0], dtype=np.int64)
    for j in range(m):
        acc = f.add_vec(acc, f.mul_vec(mat[:, j], alphas[j]))
    hits = np.flatnonzero(acc == 0)
    if hits.size:
        rhos = tuple(int(c) for c in mat[hits[0]])
        assert _relation_value(rg, alphas, rhos) == 0
        return IndependenceVerdict("dependent", rhos, "exhaustive-bset-incidence")
    return IndependenceVerdict("independent", None, "exhaustive-bset-incidence")


# ---------------------------------------------------------------------------
# dual-marking scan over the lines of a plane


def _pencil_basis(rows, field):
    """Two dual basis vectors per normalized plane point, vectorized.

    For P = (1,b,c): (b',1,0), (c',0,1) with b' = -b, c' = -c;
    for P = (0,1,c): (1,0,0), (0,c',1); for P = (0,0,1): (1,0,0), (0,1,0).
    """
    n_rows = rows.shape[0]
    a, b, c = rows[:, 0], rows[:, 1], rows[:, 2]
    nb, nc = field.neg_vec(b), field.neg_vec(c)
    d1 = np.empty((n_rows, 3), dtype=np.int64)
    d2 = np.empty((n_rows, 3), dtype=np.int64)
    case_a = a != 0
    case_b = (~case_a) & (b != 0)
    case_c = (~case_a) & (b == 0)
    d1[case_a] = np.stack([nb, np.ones_like(a), np.zeros_like(a)], axis=1)[case_a]
    d2[case_a] = np.stack([nc, np.zeros_like(a), np.ones_like(a)], axis=1)[case_a]
    d1[case_b | case_c] = [1, 0, 0]
    d2[case_b] = np.stack([np.zeros_like(a), nc, np.ones_like(a)], axis=1)[case_b]
    d2[case_c] = [0, 1, 0]
    return d1, d2


def mark_lines_through(space: ProjectiveSpace, mat, marks=None):
    """Mark, in a bitset over canonical line indices, every line through any
    of the given plane points.  Returns the bitset."""
    if space.n != 2:
        raise ValueError("dual-marking scan is a plane operation")
    f = space.field
    q = f.order
    if marks is None:
        marks = np.zeros(space.num_points, dtype=bool)
    ts = np.arange(q, dtype=np.int64)  # all codes, 0 included
    for start in range(0, mat.shape[0], SCAN_BLOCK):
        rows = mat[start:start + SCAN_BLOCK]
        d1, d2 = _pencil_basis(rows, f)
        # pencils: d1 + t*d2 for all t, plus d2 itself
        pencil = f.add_vec(d1[:, None, :], f.mul_vec(ts[None, :, None], d2[:, None, :]))
        pencil = np.concatenate([pencil, d2[:, None, :]], axis=1)
        flat = pencil.reshape(-1, 3)
        idx = space.point_index_vec(space.normalize_vec(flat))
        marks[idx] = True
    return marks


def blocking_status(bset: BSet, budget=DEFAULT_ENUM_BUDGET):
    """Exhaustive blocking verdict for B(k,q) in its plane, via dual marking.

    Every line through a point of B is marked; B is a blocking set exactly
    when no line stays unmarked.  The witness, when present, is the
    lowest-index unmarked line, re-checked for zero incidences.
    """
    rg = bset.rgroup
    if bset.space.n != 2:
        raise ValueError("blocking scan implemented for the plane case k=4")
    space = bset.space
    if space.num_points > budget:
        raise BudgetExceeded("%d lines exceed scan budget" % space.num_points)
    marks = mark_lines_through(space, bset.matrix)
    unmarked = np.flatnonzero(~marks)
    if unmarked.size == 0:
        return BlockingVerdict("blocking", None, "dual-marking-scan",
                               lines_scanned=space.num_points)
    dual = space.point_at(int(unmarked[0]))
    vals = np.zeros(len(bset), dtype=np.int64)
    f = rg.field
    for j in range(3):
        vals = f.add_vec(vals, f.mul_vec(bset.matrix[:, j], dual[j]))
    assert not np.any(vals == 0), "witness line re-check failed"
    return BlockingVerdict("not-blocking", dual, "dual-marking-scan",
                           lines_scanned=space.num_points)


# ---------------------------------------------------------------------------
# independent tuple search


def find_independent_tuple(rg: RGroup, m=None, strategy="random", seed=1,
                           max_iters=10 ** 4, budget=DEFAULT_ENUM_BUDGET):
    """Search for an R-independent tuple of coset representatives.

    Random strategy samples m distinct cosets per trial (independence is
    invariant under scaling each entry by R*, so representatives suffice).
    Exhaustive strategy walks the hyperplanes of PG(m-1, .) in canonical
    order via the dual-marking scan and returns the first one missing the
    R-coordinate points; exhausting the scan without a witness means the set
    IS a blocking set, reported as status "not-found".
    """
    if m is None:
        m = rg.k - 1
    if strategy == "random":
        rng = random.Random(seed)
        for trial in range(1, max_iters + 1):
            cosets = rng.sample(range(rg.stride), m)
            alphas = tuple(rg.coset_rep(c) for c in cosets)
            verdict = is_r_independent(alphas, rg, budget)
            if verdict.status == "independent":
                return SearchResult("found", alphas, "random", seed, trial,
                                    verdict.certification)
            if verdict.status == "unknown":
                raise BudgetExceeded("cannot certify candidates at this size")
        return SearchResult("not-found", None, "random", seed, max_iters, "none")
    if strategy == "exhaustive":
        space = ProjectiveSpace(rg.field, m - 1)
        if m == 2:
            # hyperplanes of a line are its points; complement test directly
            mat = r_tuple_matrix(rg, m, budget)
            occupied = np.zeros(space.num_points, dtype=bool)
            occupied[space.point_index_vec(mat)] = True
            free = np.flatnonzero(~occupied)
            if free.size == 0:
                return SearchResult("not-found", None, "exhaustive", None, int(occupied.size), "exhaustive-scan")
            alphas = space.point_at(int(free[0]))
            return SearchResult("found", alphas, "exhaustive", None, int(free[0]) + 1, "exhaustive-scan")
        if m != 3:
            raise ValueError("exhaustive strategy supports m = 2 or 3")
        if space.num_points > budget:
            raise BudgetExceeded("%d hyperplanes exceed scan budget" % space.num_points)
        mat = r_tuple_matrix(rg, m, budget)
        marks = mark_lines_through(space, mat)
        free = np.flatnonzero(~marks)
        if free.size == 0:
            return SearchResult("not-found", None, "exhaustive", None,
                                int(marks.size), "dual-marking-scan")
        alphas = space.point_at(int(free[0]))
        verdict = is_r_independent(alphas, rg, budget)
        assert verdict.status == "independent"
        return SearchResult("found", alphas, "exhaustive", None, int(free[0]) + 1,
                            "dual-marking-scan")
    raise ValueError("unknown strategy %r" % (strategy,))


# ---------------------------------------------------------------------------
# weight-1 line statistics


@dataclass
class LineStats:
    point: tuple
    lines_total: int
    secant_count: int
    secant_sizes: dict   # intersection size -> number of secants
    tangent_count: int


def line_stats_weight1(bset: BSet, point=None):
    """Classify all lines through a weight-1 point of B(k,q) in the plane.

    Computes, for every other point of B, the line it spans with P (as a
    cross-product dual), and histograms the pencil.  Lines through P meeting
    no further B point are tangents.
    """
    if bset.space.n != 2:
        raise ValueError("line statistics implemented for the plane case k=4")
    space = bset.space
    f = space.field
    if point is None:
        P = tuple(int(c) for c in bset.matrix[bset.weights == 1][0])
    else:
        P = space.normalize(point)
        if not bset.contains(P) or sum(1 for c in P if c) != 1:
            raise ValueError("point must be a weight-1 member of B")
    mat = bset.matrix
    self_row = np.all(mat == np.asarray(P, dtype=np.int64), axis=1)
    others = mat[~self_row]
    Pv = np.asarray(P, dtype=np.int64)

    def cross(u_mat, v):
        def minor(i, j):
            return f.add_vec(f.mul_vec(u_mat[:, i], v[j]),
                             f.neg_vec(f.mul_vec(u_mat[:, j], v[i])))
        return np.stack([minor(1, 2), minor(2, 0), minor(0, 1)], axis=1)

    duals = cross(others, Pv)
    idx = space.point_index_vec(space.normalize_vec(duals))
    uniq, counts = np.unique(idx, return_counts=True)
    sizes = counts + 1  # plus P itself
    census = {}
    for s in sizes:
        census[int(s)] = census.get(int(s), 0) + 1
    q1 = f.order + 1
    return LineStats(point=P, lines_total=q1, secant_count=int(uniq.size),
                     secant_sizes=census, tangent_count=q1 - int(uniq.size))
