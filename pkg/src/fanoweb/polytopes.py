"""Lattice polytopes with exact facet data (dimensions 2 and 3).

A Polytope stores its extremal vertices in canonical order and its facets as
pairs (normal, level): the facet lies on {x : normal . x = -level}, the
normal is primitive, and the interior satisfies normal . x > -level.  With
the origin strictly inside, every level is a positive integer, and the polar
dual has vertex normal/level for each facet.

Hulls are computed with integer-only predicates: monotone chain in 2D and
exhaustive supporting-plane enumeration in 3D (inputs here are tiny, so the
cubic scan is simpler and safer than an incremental hull).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, floor, gcd

from .lattice import (
    _rank_fraction,
    cross2,
    cross3,
    dot,
    is_primitive,
    mat_det,
    mat_vec,
    primitivize,
    row_hermite,
    vec_gcd,
    vec_sub,
)


class DegenerateHullError(ValueError):
    """Input points do not span the ambient dimension."""

    def __init__(self, affine_dim, message=None):
        self.affine_dim = affine_dim
        super().__init__(message or f"degenerate hull: affine dimension {affine_dim}")


class Polytope:
    __slots__ = ("dim", "vertices", "facets", "_hash")

    def __init__(self, dim, vertices, facets):
        self.dim = dim
        self.vertices = vertices
        self.facets = facets
        self._hash = hash((dim, vertices))

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    def contains(self, point):
        return all(dot(n, point) >= -lv for n, lv in self.facets)

    def strictly_contains(self, point):
        return all(dot(n, point) > -lv for n, lv in self.facets)

    def origin_interior(self):
        return all(lv > 0 for _, lv in self.facets)


def affine_dimension(points):
    pts = list(dict.fromkeys(tuple(p) for p in points))
    if not pts:
        return -1
    base = pts[0]
    rows = [vec_sub(p, base) for p in pts[1:]]
    if not rows:
        return 0
    return _rank_fraction(rows)


_HULL_CACHE = {}
_INTERN = {}


def _intern(dim, vertices, facets):
    key = (dim, vertices)
    p = _INTERN.get(key)
    if p is None:
        p = Polytope(dim, vertices, facets)
        _INTERN[key] = p
    return p


def hull(points):
    """Convex hull of lattice points, canonical vertex order, exact facets.

    Raises DegenerateHullError when the points do not span the ambient
    dimension (which must be 2 or 3).
    """
    pts = tuple(sorted(dict.fromkeys(tuple(int(x) for x in p) for p in points)))
    if not pts:
        raise ValueError("hull of no points")
    cached = _HULL_CACHE.get(pts)
    if cached is not None:
        return cached
    d = len(pts[0])
    if d == 2:
        poly = _hull2d(pts)
    elif d == 3:
        poly = _hull3d(pts)
    else:
        raise ValueError(f"ambient dimension {d} is not supported")
    _HULL_CACHE[pts] = poly
    return poly


def _hull2d(pts):
    if len(pts) < 3:
        raise DegenerateHullError(affine_dimension(pts))

    def half(points):
        chain = []
        for p in points:
            while (
                len(chain) >= 2
                and cross2(vec_sub(chain[-1], chain[-2]), vec_sub(p, chain[-2])) <= 0
            ):
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    verts = lower[:-1] + upper[:-1]
    if len(verts) < 3:
        raise DegenerateHullError(affine_dimension(pts))
    # monotone chain starts at the lexicographic minimum and runs CCW
    vertices = tuple(verts)
    facets = []
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        e = vec_sub(b, a)
        normal = primitivize((-e[1], e[0]))[0]
        facets.append((normal, -dot(normal, a)))
    return _intern(2, vertices, tuple(sorted(facets)))


def _hull3d(pts):
    adim = affine_dimension(pts)
    if adim < 3:
        raise DegenerateHullError(adim)
    n = len(pts)
    planes = {}
    for i, j, k in combinations(range(n), 3):
        nv = cross3(vec_sub(pts[j], pts[i]), vec_sub(pts[k], pts[i]))
        if nv == (0, 0, 0):
            continue
        nv = primitivize(nv)[0]
        c = dot(nv, pts[i])
        if (nv, c) in planes or (tuple(-x for x in nv), -c) in planes:
            continue
        vals = [dot(nv, p) for p in pts]
        hi, lo = max(vals), min(vals)
        if c == hi:
            planes[(nv, c)] = True
        if c == lo:
            planes[(tuple(-x for x in nv), -c)] = True
    # planes maps outer (n, c) with n.x <= c on the polytope
    facets = tuple(
        sorted((tuple(-x for x in nv), c) for (nv, c) in planes)
    )
    vertices = []
    for p in pts:
        normals = [nv for nv, c in planes if dot(nv, p) == c]
        if len(normals) >= 3 and _rank_fraction(normals) == 3:
            vertices.append(p)
    return _intern(3, tuple(sorted(vertices)), facets)


_LATTICE_CACHE = {}


def lattice_points(p):
    """All lattice points of the polytope, sorted lexicographically."""
    got = _LATTICE_CACHE.get(p)
    if got is not None:
        return got
    lo = [min(v[i] for v in p.vertices) for i in range(p.dim)]
    hi = [max(v[i] for v in p.vertices) for i in range(p.dim)]
    out = []
    if p.dim == 2:
        for x in range(lo[0], hi[0] + 1):
            for y in range(lo[1], hi[1] + 1):
                if p.contains((x, y)):
                    out.append((x, y))
    else:
        for x in range(lo[0], hi[0] + 1):
            for y in range(lo[1], hi[1] + 1):
                for z in range(lo[2], hi[2] + 1):
                    if p.contains((x, y, z)):
                        out.append((x, y, z))
    res = tuple(out)
    _LATTICE_CACHE[p] = res
    return res


_INTERIOR_CACHE = {}


def interior_lattice_points(p):
    got = _INTERIOR_CACHE.get(p)
    if got is None:
        got = tuple(q for q in lattice_points(p) if p.strictly_contains(q))
        _INTERIOR_CACHE[p] = got
    return got


def in_hull(point, points):
    """Exact closed-membership test, valid in any affine dimension.

    Caratheodory: the point lies in the hull iff some affinely independent
    subset of size adim+1 contains it with nonnegative barycentric weights.
    """
    pts = [tuple(p) for p in dict.fromkeys(tuple(q) for q in points)]
    point = tuple(point)
    if point in pts:
        return True
    adim = affine_dimension(pts)
    if adim == 0:
        return False
    base = pts[0]
    if _rank_fraction([vec_sub(p, base) for p in pts[1:]] + [vec_sub(point, base)]) != adim:
        return False
    for subset in combinations(pts, adim + 1):
        b0 = subset[0]
        rows = [vec_sub(p, b0) for p in subset[1:]]
        if _rank_fraction(rows) != adim:
            continue
        coeff = _barycentric(point, subset)
        if coeff is not None and all(c >= 0 for c in coeff):
            return True
    return False


def _barycentric(point, simplex):
    # solve sum c_i * v_i = point, sum c_i = 1 over Q
    k = len(simplex)
    d = len(point)
    aug = [[Fraction(simplex[i][j]) for i in range(k)] + [Fraction(point[j])] for j in range(d)]
    aug.append([Fraction(1)] * k + [Fraction(1)])
    rank = 0
    pivots = []
    rows = len(aug)
    for col in range(k):
        piv = None
        for i in range(rank, rows):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [x / pv for x in aug[rank]]
        for i in range(rows):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, rows):
        if aug[i][k] != 0:
            return None
    coeff = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coeff[col] = aug[r][k]
    return coeff


class RationalPolytope:
    __slots__ = ("dim", "vertices", "facets", "_hash")

    def __init__(self, dim, vertices, facets):
        self.dim = dim
        self.vertices = vertices
        self.facets = facets
        self._hash = hash((dim, vertices))

    def __eq__(self, other):
        return (
            isinstance(other, RationalPolytope)
            and self.dim == other.dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, vertices={list(self.vertices)})"

    def origin_interior(self):
        return all(lv > 0 for _, lv in self.facets)


def _rational_hull(points):
    """Hull of rational points via integer scaling."""
    frac_pts = [tuple(Fraction(x) for x in p) for p in points]
    den = 1
    for p in frac_pts:
        for x in p:
            den = den * x.denominator // gcd(den, x.denominator)
    scaled = [tuple(int(x * den) for x in p) for p in frac_pts]
    ip = hull(scaled)
    vertices = tuple(tuple(Fraction(x, den) for x in v) for v in ip.vertices)
    facets = tuple((n, Fraction(lv, den)) for n, lv in ip.facets)
    return RationalPolytope(ip.dim, vertices, facets)


def as_rational(p):
    return RationalPolytope(
        p.dim,
        tuple(tuple(Fraction(x) for x in v) for v in p.vertices),
        tuple((n, Fraction(lv)) for n, lv in p.facets),
    )


def polar_dual(p):
    """Polar dual {u : <u, v> >= -1 on p}, exact rational vertices.

    Requires the origin strictly inside p; the dual vertex for a facet
    (normal, level) is normal/level.
    """
    if not p.origin_interior():
        raise ValueError("polar dual requires the origin strictly inside")
    verts = [tuple(Fraction(x, lv) for x in n) for n, lv in p.facets]
    return _rational_hull(verts)


def rational_polar_dual(q):
    if not q.origin_interior():
        raise ValueError("polar dual requires the origin strictly inside")
    verts = [tuple(Fraction(x) / lv for x in n) for n, lv in q.facets]
    return _rational_hull(verts)


@dataclass(frozen=True)
class MavlyutovDual:
    """Hull of the lattice points of the polar dual, with a dimension tag.

    polytope is None exactly when the hull is lower-dimensional.
    """

    dim: int
    points: tuple
    polytope: object


def mavlyutov_dual(p):
    q = polar_dual(p)
    lo = [min(v[i] for v in q.vertices) for i in range(q.dim)]
    hi = [max(v[i] for v in q.vertices) for i in range(q.dim)]
    pts = []
    rng = [range(ceil(lo[i]), floor(hi[i]) + 1) for i in range(q.dim)]
    if q.dim == 2:
        candidates = ((x, y) for x in rng[0] for y in rng[1])
    else:
        candidates = ((x, y, z) for x in rng[0] for y in rng[1] for z in rng[2])
    for c in candidates:
        if all(dot(n, c) >= -lv for n, lv in q.facets):
            pts.append(c)
    pts = tuple(sorted(pts))
    adim = affine_dimension(pts)
    if adim == p.dim:
        return MavlyutovDual(adim, pts, hull(pts))
    return MavlyutovDual(adim, pts, None)


@dataclass(frozen=True)
class ClassFlags:
    fano: bool
    canonical: bool
    terminal: bool
    reflexive: bool
    pseudoreflexive: bool
    almost_pseudoreflexive: bool

    def get(self, name):
        return getattr(self, name)


_CLASSIFY_CACHE = {}

_ALL_FALSE = ClassFlags(False, False, False, False, False, False)


def classify(p):
    """The six classification predicates.

    With the origin not strictly interior every flag is false (the polytope
    is in particular not Fano).
    """
    got = _CLASSIFY_CACHE.get(p)
    if got is not None:
        return got
    if not p.origin_interior():
        _CLASSIFY_CACHE[p] = _ALL_FALSE
        return _ALL_FALSE
    origin = (0,) * p.dim
    fano = all(is_primitive(v) for v in p.vertices)
    interior = interior_lattice_points(p)
    canonical = interior == (origin,)
    terminal = set(lattice_points(p)) == set(p.vertices) | {origin}
    reflexive = all(lv == 1 for _, lv in p.facets)
    md = mavlyutov_dual(p)
    apr = md.polytope is not None and md.polytope.origin_interior()
    pr = False
    if apr:
        md2 = mavlyutov_dual(md.polytope)
        pr = md2.polytope is not None and md2.polytope == p
    flags = ClassFlags(fano, canonical, terminal, reflexive, pr, apr)
    _CLASSIFY_CACHE[p] = flags
    return flags


def is_fano(p):
    return p.origin_interior() and all(is_primitive(v) for v in p.vertices)


_IN_CLASS_CACHE = {}


def in_class(p, name):
    """Fast membership test for one named class.

    canonical/terminal/reflexive avoid the dual computations that a full
    classify() performs; the remaining names defer to classify.
    """
    if name == "none":
        return True
    key = (p, name)
    got = _IN_CLASS_CACHE.get(key)
    if got is None:
        got = _in_class_raw(p, name)
        _IN_CLASS_CACHE[key] = got
    return got


def _in_class_raw(p, name):
    if name == "canonical":
        return p.origin_interior() and interior_lattice_points(p) == ((0,) * p.dim,)
    if name == "terminal":
        return p.origin_interior() and set(lattice_points(p)) == set(p.vertices) | {(0,) * p.dim}
    if name == "reflexive":
        return all(lv == 1 for _, lv in p.facets)
    if name == "fano":
        return is_fano(p)
    return classify(p).get(name)


def primitive_points(p):
    """All primitive lattice points of a Fano polytope (the origin excluded)."""
    if not is_fano(p):
        raise ValueError("primitive point set is defined for Fano polytopes only")
    return tuple(q for q in lattice_points(p) if vec_gcd(q) == 1)


def primitive_points_in_hull(points):
    """Primitive lattice points of conv(points), any affine dimension."""
    pts = [tuple(p) for p in points]
    adim = affine_dimension(pts)
    d = len(pts[0])
    if adim == d:
        return primitive_points(hull(pts))
    lo = [min(p[i] for p in pts) for i in range(d)]
    hi = [max(p[i] for p in pts) for i in range(d)]
    out = []
    if d == 2:
        candidates = ((x, y) for x in range(lo[0], hi[0] + 1) for y in range(lo[1], hi[1] + 1))
    else:
        candidates = (
            (x, y, z)
            for x in range(lo[0], hi[0] + 1)
            for y in range(lo[1], hi[1] + 1)
            for z in range(lo[2], hi[2] + 1)
        )
    for c in candidates:
        if vec_gcd(c) == 1 and in_hull(c, pts):
            out.append(c)
    return tuple(sorted(out))


_NF_CACHE = {}


def normal_form(p):
    """Canonical representative of the GL(d,Z)-orbit of p.

    Over all ordered d-subsets of vertices with nonzero determinant, apply
    the unique unimodular map putting the subset matrix in Hermite form and
    keep the lexicographically smallest canonically ordered image.  The
    result is constant on unimodular orbits.
    """
    got = _NF_CACHE.get(p)
    if got is not None:
        return got
    d = p.dim
    best = None
    best_poly = None
    verts = p.vertices
    idx = range(len(verts))
    if d == 2:
        subsets = ((i, j) for i in idx for j in idx if i != j)
    else:
        subsets = (
            (i, j, k)
            for i in idx
            for j in idx
            for k in idx
            if i != j and j != k and i != k
        )
    for sub in subsets:
        cols = [verts[i] for i in sub]
        m = tuple(tuple(cols[j][i] for j in range(d)) for i in range(d))
        if mat_det(m) == 0:
            continue
        u, _ = row_hermite(m)
        moved = [mat_vec(u, v) for v in verts]
        cand = hull(moved)
        if best is None or cand.vertices < best:
            best = cand.vertices
            best_poly = cand
    if best_poly is None:
        raise ValueError("polytope has no spanning vertex subset")
    _NF_CACHE[p] = best_poly
    return best_poly
