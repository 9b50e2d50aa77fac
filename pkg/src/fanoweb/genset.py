"""Primitive generating sets and their fiber structures.

A primitive generating set (PGS) is a finite set of primitive lattice points
whose nonnegative span is the whole of N_R, equivalently the origin lies
strictly inside the convex hull.  A fiber structure picks out the full
intersection with a linear subspace; its base is the set of primitivized
projections of the remaining points, which is again a PGS of the quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .lattice import (
    QuotientProjection,
    coordinates_in_basis,
    cross2,
    in_span,
    is_primitive,
    pibar,
    primitivize,
    quotient_projection,
    saturate_span,
)
from .polytopes import DegenerateHullError, hull, primitive_points


class InvalidFiberStructure(ValueError):
    pass


def positively_spans(points, dim):
    """Does the nonnegative span of the points fill R^dim?

    Exact: in 2D the distinct ray directions, sorted by angle, must have
    every consecutive gap strictly below pi; in 3D the origin must be
    strictly inside the hull.
    """
    pts = [tuple(p) for p in points if any(x != 0 for x in p)]
    if dim == 0:
        return True
    if not pts:
        return False
    if dim == 1:
        return any(p[0] > 0 for p in pts) and any(p[0] < 0 for p in pts)
    if dim == 2:
        dirs = sorted({primitivize(p)[0] for p in pts}, key=_angular_key2)
        if len(dirs) < 3:
            return False
        for a, b in zip(dirs, dirs[1:] + dirs[:1]):
            if cross2(a, b) <= 0:
                return False
        return True
    try:
        p = hull(pts)
    except (DegenerateHullError, ValueError):
        return False
    return p.origin_interior()


def _angular_key2(v):
    x, y = v
    upper = y > 0 or (y == 0 and x > 0)
    return (0 if upper else 1, _slope_key(v))


class _slope_key:
    """Exact comparator for angles within a half-plane."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return cross2(self.v, other.v) > 0

    def __eq__(self, other):
        return cross2(self.v, other.v) == 0


def is_pgs(points, dim=None):
    """Validity check with a reason string.

    Reasons: "ok", "empty", "duplicate member", "non-primitive member",
    "cone not full".
    """
    pts = [tuple(p) for p in points]
    if dim is None:
        dim = len(pts[0]) if pts else 0
    if dim == 0:
        return True, "ok"
    if not pts:
        return False, "empty"
    if len(set(pts)) != len(pts):
        return False, "duplicate member"
    if any(not is_primitive(p) for p in pts):
        return False, "non-primitive member"
    if not positively_spans(pts, dim):
        return False, "cone not full"
    return True, "ok"


class PrimGenSet:
    __slots__ = ("dim", "points", "_hash")

    def __init__(self, dim, points, _checked=False):
        pts = tuple(sorted(tuple(p) for p in points))
        if not _checked:
            ok, reason = is_pgs(pts, dim)
            if not ok:
                raise ValueError(f"not a primitive generating set: {reason}")
        self.dim = dim
        self.points = pts
        self._hash = hash((dim, self.points))

    def __eq__(self, other):
        return (
            isinstance(other, PrimGenSet)
            and self.dim == other.dim
            and self.points == other.points
        )

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return tuple(p) in self.points

    def __repr__(self):
        return f"PrimGenSet(dim={self.dim}, points={list(self.points)})"


EMPTY_PGS = PrimGenSet(0, ())


def from_polytope(p):
    return PrimGenSet(p.dim, primitive_points(p), _checked=True)


@dataclass(frozen=True)
class FiberStructure:
    parent: PrimGenSet
    fiber: tuple
    span_basis: tuple
    projection: QuotientProjection
    base: PrimGenSet
    irreducible: bool
    mori: bool

    @property
    def fiber_dim(self):
        return len(self.span_basis)

    @property
    def trivial(self):
        return self.fiber_dim == self.parent.dim


_FS_CACHE = {}


def fiber_structure_for(parent, fiber_points):
    """Validate and build the fiber structure with the given fiber set.

    Raises InvalidFiberStructure when the set is not the full intersection
    with its span or does not generate the span as a cone.
    """
    fiber = tuple(sorted(tuple(p) for p in fiber_points))
    key = (parent, fiber)
    got = _FS_CACHE.get(key)
    if got is not None:
        if isinstance(got, InvalidFiberStructure):
            raise got
        return got
    try:
        fs = _build_fiber_structure(parent, fiber)
    except InvalidFiberStructure as e:
        _FS_CACHE[key] = e
        raise
    _FS_CACHE[key] = fs
    return fs


def _build_fiber_structure(parent, fiber):
    if not fiber:
        raise InvalidFiberStructure("fiber is empty")
    if any(p not in parent.points for p in fiber):
        raise InvalidFiberStructure("fiber is not a subset of the parent")
    d = parent.dim
    basis = saturate_span(fiber)
    k = len(basis)
    if k == d:
        if fiber != parent.points:
            raise InvalidFiberStructure(
                "fiber spanning the whole space must be the whole set"
            )
        pi = QuotientProjection(d, basis, ())
        return FiberStructure(
            parent=parent,
            fiber=fiber,
            span_basis=basis,
            projection=pi,
            base=EMPTY_PGS,
            irreducible=True,
            mori=len(parent) == d + 1,
        )
    members = tuple(p for p in parent.points if in_span(p, basis))
    if members != fiber:
        raise InvalidFiberStructure("fiber must be the full intersection with its span")
    intr = intrinsic_points(fiber, basis)
    if not positively_spans(intr, k):
        raise InvalidFiberStructure("fiber does not generate its span as a cone")
    pi = quotient_projection(basis, d)
    base_pts = sorted({pibar(pi, p) for p in parent.points if p not in fiber})
    ok, reason = is_pgs(base_pts, d - k)
    if not ok:
        raise AssertionError(f"base of a fiber structure must be a PGS ({reason})")
    base = PrimGenSet(d - k, base_pts, _checked=True)
    irreducible = len(parent) == len(fiber) + len(base)
    mori = irreducible and len(fiber) == k + 1
    return FiberStructure(
        parent=parent,
        fiber=fiber,
        span_basis=basis,
        projection=pi,
        base=base,
        irreducible=irreducible,
        mori=mori,
    )


def intrinsic_points(points, basis):
    """Coordinates of lattice points of a subspace in its saturated basis."""
    out = []
    for p in points:
        c = coordinates_in_basis(p, basis)
        if c is None:
            raise InvalidFiberStructure("point is not in the saturated span lattice")
        out.append(c)
    return tuple(out)


def intrinsic_pgs(points):
    """A set of points spanning a subspace, rewritten as a PGS of that span."""
    basis = saturate_span(points)
    intr = intrinsic_points(points, basis)
    return PrimGenSet(len(basis), intr), basis


_ENUM_CACHE = {}


def fiber_structures(parent):
    """All fiber structures, one per linear span, deterministic order.

    Spans are generated by subsets of the parent (singletons, independent
    pairs in 3D) plus the whole space; they are deduplicated by their
    saturated HNF basis.
    """
    got = _ENUM_CACHE.get(parent)
    if got is not None:
        return got
    d = parent.dim
    span_keys = {}
    for p in parent.points:
        span_keys.setdefault(saturate_span([p]), True)
    if d == 3:
        for a, b in combinations(parent.points, 2):
            if not in_span(a, saturate_span([b])):
                span_keys.setdefault(saturate_span([a, b]), True)
    out = []
    for basis in span_keys:
        members = tuple(p for p in parent.points if in_span(p, basis))
        try:
            fs = fiber_structure_for(parent, members)
        except InvalidFiberStructure:
            continue
        if fs.fiber_dim != len(basis):
            continue
        out.append(fs)
    out.append(fiber_structure_for(parent, parent.points))
    out.sort(key=lambda fs: (fs.fiber_dim, fs.fiber))
    res = tuple(out)
    _ENUM_CACHE[parent] = res
    return res


def mori_fiber_structures(parent):
    return tuple(fs for fs in fiber_structures(parent) if fs.mori)


def fiber_hull_is_terminal_simplex(fs):
    """Polytope-side sanity for a Mori fiber: a simplex whose only lattice
    points in its span are the fiber points and the origin."""
    from .polytopes import primitive_points_in_hull

    if not fs.mori:
        return False
    if len(fs.fiber) != fs.fiber_dim + 1:
        return False
    prim = primitive_points_in_hull(fs.fiber)
    if set(prim) != set(fs.fiber):
        return False
    # no non-primitive multiples can occur: every lattice point of the hull
    # on a ray through a fiber point would make that point non-extremal
    return True


def reductions(parent):
    """All one-point removals leaving a PGS."""
    out = []
    for v in parent.points:
        rest = tuple(p for p in parent.points if p != v)
        if positively_spans(rest, parent.dim):
            out.append((v, PrimGenSet(parent.dim, rest, _checked=True)))
    return tuple(out)


@dataclass(frozen=True)
class ReductionResult:
    valid: bool
    polytope: object
    removed: tuple
    reason: str


def polytope_reduction(p, v):
    """Remove a vertex and re-hull the remaining primitive points.

    Valid exactly when the remaining points still form a PGS and the removed
    vertex escapes their hull, so the new polytope's primitive points are
    precisely the remaining set.
    """
    v = tuple(v)
    if v not in p.vertices:
        raise ValueError("polytope reduction removes a vertex")
    rest = tuple(q for q in primitive_points(p) if q != v)
    if not positively_spans(rest, p.dim):
        return ReductionResult(False, None, v, "remaining points do not span the space")
    smaller = hull(rest)
    if smaller.contains(v):
        return ReductionResult(False, None, v, "removed vertex stays inside the hull")
    return ReductionResult(True, smaller, v, "ok")
