"""Exact convex hulls and volumes of rational point sets in dimension <= 4.

Points are tuples of :class:`fractions.Fraction`.  Full-dimensional hulls in
the plane use Andrew's monotone chain; dimensions 3 and 4 use an incremental
beneath-beyond construction with a triangulated boundary.  Lower-dimensional
point sets are projected onto a coordinate subspace on which the projection is
injective, hulled there, and lifted back (their volume is zero).
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, UnsupportedDimension

MAX_DIM = 4

Point = Tuple[Fraction, ...]


def as_rational_point(p) -> Point:
    return tuple(Fraction(c) for c in p)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    m = [list(map(Fraction, r)) for r in rows]
    size = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        pv = m[col][col]
        result *= pv
        for r in range(col + 1, size):
            f = m[r][col] / pv
            if f:
                for c in range(col, size):
                    m[r][c] -= f * m[col][c]
    return sign * result


def _rref_pivots(rows: List[List[Fraction]]) -> List[int]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots


def _rank(rows) -> int:
    rows = [list(map(Fraction, r)) for r in rows]
    if not rows:
        return 0
    return len(_rref_pivots(rows))


def _affine_basis(pts: Sequence[Point]) -> List[int]:
    """Indices of a maximal affinely independent subset, chosen greedily in order."""
    basis = [0]
    echelon: List[List[Fraction]] = []  # reduced direction rows
    lead: List[int] = []
    p0 = pts[0]
    for i in range(1, len(pts)):
        v = list(_sub(pts[i], p0))
        for row, c in zip(echelon, lead):
            if v[c] != 0:
                f = v[c] / row[c]
                v = [a - f * b for a, b in zip(v, row)]
        nz = next((c for c, a in enumerate(v) if a != 0), None)
        if nz is None:
            continue
        echelon.append(v)
        lead.append(nz)
        basis.append(i)
        if len(basis) == len(p0) + 1:
            break
    return basis


def _primitive(normal, offset):
    """Scale a hyperplane (normal, offset) to coprime integers for deduplication."""
    vals = list(normal) + [offset]
    den = 1
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints[:-1]), Fraction(ints[-1])


def _facet_normal(face_pts: Sequence[Point]) -> Tuple[Fraction, ...]:
    """Generalised cross product of the edge vectors of a (d-1)-simplex in R^d."""
    d = len(face_pts[0])
    vecs = [_sub(p, face_pts[0]) for p in face_pts[1:]]
    normal = []
    for k in range(d):
        minor = [[v[c] for c in range(d) if c != k] for v in vecs]
        normal.append((-1) ** k * det(minor) if minor else Fraction(1))
    return tuple(normal)


class RatPolytope:
    """Convex hull of finitely many rational points.

    ``vertices`` are the extreme points in lexicographic order; ``facets`` is
    the list of distinct supporting hyperplanes ``(a, b)`` with ``a.x <= b``
    (only for full-dimensional polytopes).
    """

    def __init__(self, n, vertices, volume, dim, facets=(), simplices=(), cycle=None,
                 affine=None):
        self.n = n
        self.vertices: Tuple[Point, ...] = tuple(sorted(vertices))
        self.volume: Fraction = Fraction(volume)
        self.dim = dim
        self.facets = tuple(facets)
        self._simplices = tuple(simplices)
        self._cycle = cycle
        self._affine = affine  # (origin, directions, coords, sub-polytope) for dim < n

    def is_degenerate(self) -> bool:
        return self.dim < self.n

    def boundary_simplices(self):
        return self._simplices

    def contains(self, p) -> bool:
        p = as_rational_point(p)
        if len(p) != self.n:
            raise DimensionMismatch("point dimension differs from polytope dimension")
        if not self.is_degenerate():
            return all(_dot(a, p) <= b for a, b in self.facets)
        origin, directions, coords, sub = self._affine
        if _rank(directions + [_sub(p, origin)]) > len(directions):
            return False
        if sub is None:
            return p == origin
        return sub.contains(tuple(p[c] for c in coords))

    def polygon(self) -> List[Point]:
        """Vertices in counter-clockwise order (two-dimensional polytopes only)."""
        if self.n != 2:
            raise UnsupportedDimension("polygon() is only defined for n = 2")
        if self._cycle is not None:
            return list(self._cycle)
        return list(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, RatPolytope):
            return NotImplemented
        return self.n == other.n and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.n, self.vertices))

    def __repr__(self):
        verts = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in self.vertices)
        return f"RatPolytope(n={self.n}, vertices=[{verts}], volume={self.volume})"


def _chain_2d(pts: Sequence[Point]) -> List[Point]:
    # pts sorted lexicographically, distinct; returns CCW cycle without collinear points
    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull_2d(pts):
    cycle = _chain_2d(pts)
    area2 = Fraction(0)
    facets = []
    simplices = []
    m = len(cycle)
    for i in range(m):
        a, b = cycle[i], cycle[(i + 1) % m]
        area2 += a[0] * b[1] - b[0] * a[1]
        # outward normal of a CCW edge a->b
        normal = (b[1] - a[1], a[0] - b[0])
        facets.append(_primitive(normal, _dot(normal, a)))
        simplices.append((a, b))
    return RatPolytope(2, cycle, area2 / 2, 2, facets, simplices, cycle=cycle)


def _beneath_beyond(pts: Sequence[Point], seed: Sequence[int]):
    d = len(pts[0])
    center = tuple(sum(pts[i][k] for i in seed) / len(seed) for k in range(d))
    facets = {}

    def add_facet(idx):
        normal = _facet_normal([pts[i] for i in idx])
        offset = _dot(normal, pts[idx[0]])
        if _dot(normal, center) > offset:
            normal = tuple(-c for c in normal)
            offset = -offset
        facets[frozenset(idx)] = (tuple(idx), normal, offset)

    for omit in seed:
        add_facet(tuple(i for i in seed if i != omit))

    seed_set = set(seed)
    for i, p in enumerate(pts):
        if i in seed_set:
            continue
        visible = [key for key, (_, a, b) in facets.items() if _dot(a, p) > b]
        if not visible:
            continue
        ridges = Counter()
        for key in visible:
            for r in combinations(sorted(key), d - 1):
                ridges[r] += 1
        for key in visible:
            del facets[key]
        for r, count in ridges.items():
            if count == 1:
                add_facet(r + (i,))
    return list(facets.values())


def _hull_general(pts: Sequence[Point], seed: Sequence[int]) -> RatPolytope:
    d = len(pts[0])
    faces = _beneath_beyond(pts, seed)
    planes = sorted({_primitive(a, b) for _, a, b in faces})
    used = sorted({i for idx, _, _ in faces for i in idx})
    vertices = []
    for i in used:
        active = [a for a, b in planes if _dot(a, pts[i]) == b]
        if _rank(active) == d:
            vertices.append(i)
    apex = pts[vertices[0]]
    vol = Fraction(0)
    simplices = []
    for idx, _, _ in faces:
        simplices.append(tuple(pts[i] for i in idx))
        if vertices[0] in idx:
            continue
        vol += abs(det([_sub(pts[i], apex) for i in idx]))
    vol /= math.factorial(d)
    return RatPolytope(d, [pts[i] for i in vertices], vol, d, planes, simplices)


def _full_hull(pts: List[Point], basis: List[int]) -> RatPolytope:
    d = len(pts[0])
    if d == 1:
        lo, hi = pts[0], pts[-1]
        facets = [((Fraction(-1),), -lo[0]), ((Fraction(1),), hi[0])]
        return RatPolytope(1, [lo, hi], hi[0] - lo[0], 1, facets, [(lo,), (hi,)])
    if d == 2:
        return _hull_2d(pts)
    return _hull_general(pts, basis)


def hull(points: Iterable, n: Optional[int] = None) -> RatPolytope:
    """Exact convex hull of a finite nonempty set of rational points."""
    pts = sorted({as_rational_point(p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise DimensionMismatch("points have mixed dimensions")
    d = dims.pop()
    if n is not None and n != d:
        raise DimensionMismatch(f"points have dimension {d}, expected {n}")
    if not 1 <= d <= MAX_DIM:
        raise UnsupportedDimension(f"hull supports dimensions 1..{MAX_DIM}, got {d}")

    basis = _affine_basis(pts)
    k = len(basis) - 1
    if k == d:
        return _full_hull(pts, basis)

    origin = pts[basis[0]]
    directions = [list(_sub(pts[i], origin)) for i in basis[1:]]
    if k == 0:
        return RatPolytope(d, [origin], 0, 0, affine=(origin, [], [], None))
    coords = _rref_pivots(directions)
    projected = [tuple(p[c] for c in coords) for p in pts]
    lookup = dict(zip(projected, pts))
    sub = hull(projected)
    vertices = [lookup[v] for v in sub.vertices]
    cycle = None
    if d == 2:
        cycle = vertices
    return RatPolytope(d, vertices, 0, k, cycle=cycle, affine=(origin, directions, coords, sub))


def volume(P: RatPolytope) -> Fraction:
    return P.volume
