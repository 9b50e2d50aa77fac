from fractions import Fraction

import pytest

from fanoweb.polytopes import (
    DegenerateHullError,
    affine_dimension,
    as_rational,
    classify,
    hull,
    in_hull,
    interior_lattice_points,
    lattice_points,
    mavlyutov_dual,
    normal_form,
    polar_dual,
    primitive_points,
    primitive_points_in_hull,
    rational_polar_dual,
)

TRIANGLE = [(1, 0), (0, 1), (-1, -1)]          # plane polygon
SQUARE = [(1, 0), (0, 1), (-1, 0), (0, -1)]    # the two-ruling polygon
QUAD1 = [(1, 0), (0, 1), (-1, 0), (-1, -1)]
QUAD2 = [(1, 0), (0, 1), (-1, 0), (-2, -1)]

V = {
    1: (1, 0, 0),
    2: (0, 1, 0),
    3: (-1, -1, 0),
    4: (-1, 0, 0),
    5: (0, 0, 1),
    6: (-1, 0, -1),
    7: (-2, 0, -1),
}


def test_hull_drops_nonextremal_points():
    p = hull([(1, 0), (0, 1), (-1, 0), (-2, -1)])
    assert p.vertices == hull([(1, 0), (0, 1), (-2, -1)]).vertices
    # interior-edge point: midpoint of (0,1) and (-2,-1)
    assert (-1, 0) in lattice_points(p)
    assert (-1, 0) not in p.vertices


def test_hull_already_extremal():
    p = hull(TRIANGLE)
    assert set(p.vertices) == set(map(tuple, TRIANGLE))
    assert len(p.vertices) == 3


def test_hull_canonical_order_ccw_from_lexmin():
    p = hull(SQUARE)
    assert p.vertices[0] == (-1, 0)
    assert p.vertices == ((-1, 0), (0, -1), (1, 0), (0, 1))


def test_hull_degenerate_input():
    with pytest.raises(DegenerateHullError) as e:
        hull([(0, 0), (1, 1), (2, 2)])
    assert e.value.affine_dim == 1


def test_hull_3d_with_nonvertex_member():
    pts = [V[1], V[2], V[3], V[5], V[7]]
    p = hull(pts)
    assert len(p.vertices) == 5
    # v4 = (v5 + v7) / 2 is a lattice point of the hull but not a vertex
    assert p.contains(V[4])
    assert V[4] not in p.vertices
    assert in_hull(V[4], pts)
    assert not in_hull(V[6], pts)


def test_lattice_points_triangle():
    p = hull(TRIANGLE)
    assert lattice_points(p) == ((-1, -1), (0, 0), (0, 1), (1, 0))
    assert interior_lattice_points(p) == ((0, 0),)


def test_lattice_points_degenerating_quadrilateral():
    p = hull([(1, 0), (0, 1), (-1, 0), (-3, -1)])
    assert set(interior_lattice_points(p)) == {(0, 0), (-1, 0)}
    assert not classify(p).canonical


def test_lattice_points_big_square():
    p = hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert len(lattice_points(p)) == 9
    assert interior_lattice_points(p) == ((0, 0),)


def _halfplane_vertex_oracle(vertices):
    # independent oracle for the dual polygon: intersect pairs of lines
    # <u, v> = -1 over Q and keep points feasible for every vertex inequality
    out = set()
    vs = list(vertices)
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            a1, b1 = vs[i]
            a2, b2 = vs[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x = Fraction(-b2 + b1, det)
            y = Fraction(-a1 + a2, det)
            if all(v[0] * x + v[1] * y >= -1 for v in vs):
                out.add((x, y))
    return out


def test_polar_dual_triangle():
    p = hull(TRIANGLE)
    d = polar_dual(p)
    assert set(d.vertices) == {
        (Fraction(2), Fraction(-1)),
        (Fraction(-1), Fraction(2)),
        (Fraction(-1), Fraction(-1)),
    }
    assert set(d.vertices) == _halfplane_vertex_oracle(p.vertices)


def test_polar_dual_square_pair():
    sq = hull(SQUARE)
    d = polar_dual(sq)
    assert {tuple(map(int, v)) for v in d.vertices} == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    big = hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    dd = polar_dual(big)
    assert {tuple(map(int, v)) for v in dd.vertices} == set(map(tuple, SQUARE))


def test_polar_dual_requires_interior_origin():
    shifted = hull([(0, 0), (2, 0), (0, 2)])
    with pytest.raises(ValueError):
        polar_dual(shifted)


def test_double_dual_is_identity():
    for pts in (TRIANGLE, SQUARE, QUAD1, QUAD2):
        p = hull(pts)
        assert rational_polar_dual(polar_dual(p)) == as_rational(p)


def test_mavlyutov_reflexive_is_polar():
    p = hull(QUAD1)
    md = mavlyutov_dual(p)
    assert md.polytope is not None
    dual_verts = {tuple(map(int, v)) for v in polar_dual(p).vertices}
    assert set(md.polytope.vertices) == dual_verts


def test_mavlyutov_lower_dimensional():
    p = hull([(1, 0), (-1, 0), (0, 2), (0, -2)])
    md = mavlyutov_dual(p)
    assert md.polytope is None
    assert md.dim == 1
    assert set(md.points) == {(-1, 0), (0, 0), (1, 0)}


def test_classify_standard_polygons():
    flags2 = classify(hull(QUAD2))
    assert flags2.fano and flags2.canonical and flags2.reflexive
    assert not flags2.terminal  # (-1, 0) is a boundary non-vertex
    flags1 = classify(hull(QUAD1))
    assert flags1.terminal and flags1.reflexive
    bad = classify(hull([(1, 0), (0, 1), (-3, -1)]))
    assert not bad.canonical


def test_classify_origin_not_interior():
    p = hull([(0, 0), (1, 0), (0, 1)])
    f = classify(p)
    assert f == classify(hull([(0, 0), (2, 0), (0, 2)])).__class__(
        False, False, False, False, False, False
    )


def test_classify_implication_chain_3d_fixtures():
    fixtures = [
        hull([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]),
        hull([(s * a, s * b, s * c) for s in (1, -1) for a, b, c in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]),
        hull(list(V.values())),
        hull([V[1], V[2], V[3], V[4], V[5], V[7]]),
        hull([V[1], V[2], V[3], V[5], V[6]]),
    ]
    for p in fixtures:
        f = classify(p)
        if f.terminal:
            assert f.canonical
        if f.reflexive:
            assert f.pseudoreflexive
        if f.pseudoreflexive:
            assert f.almost_pseudoreflexive
        if f.almost_pseudoreflexive:
            assert f.canonical


def test_primitive_points_examples():
    assert set(primitive_points(hull(QUAD2))) == {(1, 0), (0, 1), (-1, 0), (-2, -1)}
    assert set(primitive_points(hull(TRIANGLE))) == set(map(tuple, TRIANGLE))
    p = hull([V[1], V[2], V[3], V[4], V[5], V[7]])
    assert set(primitive_points(p)) == {V[i] for i in (1, 2, 3, 4, 5, 7)}
    # the hull of the five "A"-labelled generators picks up v4
    assert set(primitive_points_in_hull([V[1], V[2], V[3], V[5], V[7]])) == {
        V[i] for i in (1, 2, 3, 4, 5, 7)
    }


def test_primitive_points_requires_fano():
    with pytest.raises(ValueError):
        primitive_points(hull([(2, 0), (0, 2), (-2, -2)]))


def test_primitive_points_in_hull_lower_dim():
    assert primitive_points_in_hull([(1, 0, 0), (-1, 0, 0)]) == ((-1, 0, 0), (1, 0, 0))
    quad = [V[1], V[2], V[3], V[4]]
    assert set(primitive_points_in_hull(quad)) == set(quad)


def test_normal_form_orbit_constancy():
    s = ((0, -1), (1, 0))
    t = ((1, 1), (0, 1))
    tri = hull(TRIANGLE)
    moved = hull([(s[0][0] * x + s[0][1] * y, s[1][0] * x + s[1][1] * y) for x, y in TRIANGLE])
    assert normal_form(moved) == normal_form(tri)
    q2 = hull(QUAD2)
    moved2 = hull([(t[0][0] * x + t[0][1] * y, t[1][0] * x + t[1][1] * y) for x, y in QUAD2])
    assert normal_form(moved2) == normal_form(q2)


def test_normal_form_separates_orbits():
    assert normal_form(hull(SQUARE)) != normal_form(hull(QUAD1))


def test_affine_dimension():
    assert affine_dimension([(0, 0)]) == 0
    assert affine_dimension([(0, 0), (2, 2)]) == 1
    assert affine_dimension([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_dimension([V[1], V[2], V[3], V[4]]) == 2


def test_facet_consistency_and_vertex_saturation():
    fixtures = [
        hull(TRIANGLE),
        hull(SQUARE),
        hull(QUAD2),
        hull([V[i] for i in (1, 2, 3, 4, 5, 7)]),
        hull(list(V.values())),
    ]
    for p in fixtures:
        from fanoweb.lattice import dot

        for q in lattice_points(p):
            assert all(dot(n, q) >= -lv for n, lv in p.facets)
        for v in p.vertices:
            on = sum(1 for n, lv in p.facets if dot(n, v) == -lv)
            assert on >= p.dim
