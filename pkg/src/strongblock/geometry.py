"""PG(n, Q) over a Field: point/hyperplane enumeration, incidence, rank, lines.

Points are tuples of field codes, normalized so the first nonzero coordinate
is one.  The canonical enumeration orders points by the position of that
leading one (ascending), then lexicographically by the remaining codes; the
same indexing addresses hyperplanes through their dual coordinates, so scans
can be partitioned by index range without materializing the stream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DimensionMismatch
from .field import Field


class ProjectiveSpace:
    """PG(n, Q) for the given field handle; immutable."""

    def __init__(self, field: Field, n: int):
        if n < 1:
            raise ValueError("projective dimension must be at least 1")
        self.field = field
        self.n = n
        self.k = n + 1  # ambient vector space dimension
        q = field.order
        self.num_points = (q ** (n + 1) - 1) // (q - 1)
        # block offsets of the canonical order, by leading-one position
        offs = [0]
        for lead in range(n + 1):
            offs.append(offs[-1] + q ** (n - lead))
        self._offsets = offs

    # -- normalization -----------------------------------------------------

    def normalize(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.k:
            raise DimensionMismatch("expected %d coordinates" % self.k)
        for c in coords:
            if c:
                inv = self.field.inv(c)
                return tuple(self.field.mul(x, inv) for x in coords)
        raise ValueError("cannot normalize the zero vector")

    def normalize_vec(self, mat):
        """Row-wise normalization of an (N, n+1) code matrix."""
        mat = np.asarray(mat, dtype=np.int64)
        lead = np.argmax(mat != 0, axis=1)
        lead_val = mat[np.arange(mat.shape[0]), lead]
        if np.any(lead_val == 0):
            raise ValueError("cannot normalize the zero vector")
        return self.field.mul_vec(mat, self.field.inv_vec(lead_val)[:, None])

    # -- canonical enumeration ---------------------------------------------

    def points(self):
        """Yield all points in canonical order."""
        for i in range(self.num_points):
            yield self.point_at(i)

    def point_at(self, index):
        q = self.field.order
        for lead in range(self.n + 1):
            block = q ** (self.n - lead)
            if index < block:
                coords = [0] * lead + [1]
                rest = []
                for j in range(self.n - lead):
                    index, rem = divmod(index, q)
                    rest.append(rem)
                coords.extend(reversed(rest))
                return tuple(coords)
            index -= block
        raise IndexError("point index out of range")

    def point_index(self, coords):
        coords = self.normalize(coords)
        q = self.field.order
        lead = next(i for i, c in enumerate(coords) if c)
        val = 0
        for c in coords[lead + 1:]:
            val = val * q + c
        return self._offsets[lead] + val

    def point_index_vec(self, mat):
        """Canonical indices of the rows of a normalized (N, n+1) matrix."""
        mat = np.asarray(mat, dtype=np.int64)
        q = self.field.order
        lead = np.argmax(mat != 0, axis=1)
        idx = np.asarray(self._offsets, dtype=np.int64)[lead]
        val = np.zeros(mat.shape[0], dtype=np.int64)
        for j in range(self.k):
            active = lead < j
            val = np.where(active, val * q + mat[:, j], val)
        return idx + val

    def hyperplanes(self):
        """Dual coordinates of all hyperplanes, canonical order."""
        return self.points()

    def hyperplane_at(self, index):
        return self.point_at(index)

    # -- incidence ---------------------------------------------------------

    def dot(self, a, b):
        if len(a) != self.k or len(b) != self.k:
            raise DimensionMismatch("expected %d coordinates" % self.k)
        f = self.field
        acc = 0
        for x, y in zip(a, b):
            acc = f.add(acc, f.mul(x, y))
        return acc

    def incidence(self, point, hyperplane):
        """True iff the dual form vanishes at the point."""
        return self.dot(point, hyperplane) == 0

    def dot_block(self, duals, pts):
        """(A, B) code matrix of dual-form values for A duals and B points."""
        duals = np.asarray(duals, dtype=np.int64)
        pts = np.asarray(pts, dtype=np.int64)
        f = self.field
        acc = np.zeros((duals.shape[0], pts.shape[0]), dtype=np.int64)
        for j in range(self.k):
            acc = f.add_vec(acc, f.mul_vec(duals[:, j:j + 1], pts[None, :, j]))
        return acc

    # -- rank --------------------------------------------------------------

    def rank(self, pts, target=None):
        """Rank of the coordinate matrix by elimination; 0 for the empty set.

        Stops early once `target` is reached (used by the strong-blocking
        scan, where most hyperplane sections reach full rank quickly).
        """
        f = self.field
        rows = []
        rank = 0
        pivots = []  # (col, row) with row scaled to pivot 1
        for pt in pts:
            row = list(pt)
            for col, prow in pivots:
                c = row[col]
                if c:
                    for j in range(col, self.k):
                        row[j] = f.sub(row[j], f.mul(c, prow[j]))
            col = next((j for j, c in enumerate(row) if c), None)
            if col is None:
                continue
            inv = f.inv(row[col])
            row = [f.mul(c, inv) for c in row]
            pivots.append((col, row))
            rank += 1
            if target is not None and rank >= target:
                return rank
        return rank

    # -- lines -------------------------------------------------------------

    def line_through(self, P, Q):
        """The q+1 points of the line spanned by two distinct points."""
        P = self.normalize(P)
        Q = self.normalize(Q)
        if P == Q:
            raise ValueError("need two distinct points")
        f = self.field
        Pv = np.asarray(P, dtype=np.int64)
        Qv = np.asarray(Q, dtype=np.int64)
        ts = np.arange(f.order, dtype=np.int64)
        mat = f.add_vec(Qv[None, :], f.mul_vec(ts[:, None], Pv[None, :]))
        mat = np.concatenate([mat, Pv[None, :]], axis=0)
        return [tuple(int(c) for c in row) for row in self.normalize_vec(mat)]

    def lines_through_point(self, P):
        """Yield the pencil of lines through P, each as its q+1 points.

        Lines correspond to the points of the quotient space, realized on the
        coordinate positions other than P's leading one; pairwise
        intersections are exactly {P}.
        """
        P = self.normalize(P)
        lead = next(i for i, c in enumerate(P) if c)
        quotient = ProjectiveSpace(self.field, self.n - 1) if self.n > 1 else None
        if quotient is None:
            # PG(1): the only "line" is the whole space
            yield [tuple(pt) for pt in self.points()]
            return
        for D in quotient.points():
            direction = D[:lead] + (0,) + D[lead:]
            yield self.line_through(direction, P)

    def __repr__(self):
        return "PG(%d, %d)" % (self.n, self.field.order)


@dataclass
class PointSet:
    """A set of points with optional provenance labels."""

    space: ProjectiveSpace
    points: list
    labels: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        normalized = []
        seen = set()
        for pt in self.points:
            npt = self.space.normalize(pt)
            if npt not in seen:
                seen.add(npt)
                normalized.append(npt)
        self.points = normalized

    def __len__(self):
        return len(self.points)

    def matrix(self):
        return np.asarray(self.points, dtype=np.int64)

    def indices(self):
        return self.space.point_index_vec(self.matrix())

    def to_json(self):
        f = self.space.field
        pts = self.points
        doc = {
            "field": f.meta(),
            "n": self.space.n,
            "points": [[f.elem_str(c) for c in pt] for pt in pts],
        }
        if self.labels:
            doc["labels"] = {str(i): self.labels[pt]
                             for i, pt in enumerate(pts) if pt in self.labels}
        return doc

    @staticmethod
    def from_json(doc):
        meta = doc["field"]
        f = Field.build(meta["p"], meta["m"], tuple(meta["modulus"]))
        space = ProjectiveSpace(f, doc["n"])
        pts = [tuple(f.parse_elem(s) for s in row) for row in doc["points"]]
        ps = PointSet(space, pts)
        for key, tag in doc.get("labels", {}).items():
            ps.labels[ps.points[int(key)]] = tag
        return ps

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @staticmethod
    def load(path):
        with open(path) as fh:
            return PointSet.from_json(json.load(fh))
