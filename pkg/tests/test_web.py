import pytest

from fanoweb.genset import from_polytope, mori_fiber_structures
from fanoweb.lattice import UnimodularMap
from fanoweb.links import (
    blowdown_link,
    elementary_transform,
    plane_polygon,
    ruled_polygon,
    sequence_from_steps,
    validate_sequence,
)
from fanoweb.polytopes import hull, normal_form
from fanoweb.web import (
    GEN_S,
    GEN_T,
    GEN_U,
    TOKENS,
    ClassViolationError,
    NoMoriFiberStructureError,
    bfs_connect,
    connect,
    enumerate_class_polygons,
    enumerate_fano,
    factor_unimodular,
    fano_purity_report,
    forward_sequence,
    join_standard,
    match_standard,
    mmp_reduce,
    standard_pairs,
    to_standard_form,
    verify_certificate,
)


def test_factor_generators():
    assert factor_unimodular(GEN_S) == ("S",)
    assert factor_unimodular(GEN_T) == ("T",)
    assert factor_unimodular(GEN_U) == ("U",)
    assert factor_unimodular(UnimodularMap.identity(2)) == ()


def test_factor_roundtrip_random():
    import random

    rng = random.Random(11)
    toks = list(TOKENS)
    for _ in range(150):
        g = UnimodularMap.identity(2)
        for _ in range(rng.randrange(1, 9)):
            g = g.compose(TOKENS[rng.choice(toks)])
        word = factor_unimodular(g)
        prod = UnimodularMap.identity(2)
        for t in word:
            prod = prod.compose(TOKENS[t])
        assert prod.matrix == g.matrix


def test_mmp_reduce_pentagon_rule():
    pent = hull([(1, 0), (0, 1), (-1, 0), (0, -1), (-1, -1)])
    r = mmp_reduce(pent, "canonical")
    assert [v for v, _ in r.chain] == [(-1, -1)]
    assert r.polytope == ruled_polygon(0)


def test_mmp_reduce_already_minimal():
    tri = plane_polygon()
    r = mmp_reduce(tri, "terminal")
    assert r.chain == ()
    assert r.polytope == tri
    assert r.fiber == from_polytope(tri).points


def test_mmp_reduce_hexagon():
    hexagon = hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)])
    r = mmp_reduce(hexagon, "canonical")
    # lexicographically smallest removable vertex at each step
    assert [v for v, _ in r.chain] == [(-1, -1), (0, 1)]
    assert mori_fiber_structures(from_polytope(r.polytope))
    assert normal_form(r.polytope) == normal_form(ruled_polygon(1))


def test_mmp_chain_strictly_decreases():
    hexagon = hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)])
    r = mmp_reduce(hexagon, "canonical")
    sizes = [len(from_polytope(hexagon).points)] + [
        len(from_polytope(p).points) for _, p in r.chain
    ]
    assert sizes == sorted(sizes, reverse=True)
    assert all(a - b == 1 for a, b in zip(sizes, sizes[1:]))


def test_match_standard_identity_and_images():
    for key, (std, _) in standard_pairs().items():
        k, u = match_standard(std)
        assert k == key
        assert u.matrix == ((1, 0), (0, 1))
    moved = hull(GEN_T.apply_all(ruled_polygon(2).vertices))
    k, u = match_standard(moved)
    assert k == "F2"
    assert hull(u.apply_all(moved.vertices)) == ruled_polygon(2)


def test_to_standard_form_identity():
    std, fiber = standard_pairs()["F0"]
    key, u, seq = to_standard_form(std, fiber, "terminal")
    assert key == "F0" and u.matrix == ((1, 0), (0, 1))
    assert seq.steps == ()


def test_to_standard_form_mirrored_square_is_trivial():
    # the mirror fixes the square and its horizontal ruling pointwise
    std, fiber = standard_pairs()["F0"]
    moved = hull(GEN_U.apply_all(std.vertices))
    assert moved == std
    key, u, seq = to_standard_form(moved, fiber, "terminal")
    assert key == "F0"
    assert seq.steps == ()


def test_to_standard_form_quarter_turn_triangle():
    tri, fiber = standard_pairs()["P2"]
    moved = hull(GEN_S.apply_all(tri.vertices))
    key, u, seq = to_standard_form(moved, from_polytope(moved).points, "terminal")
    assert key == "P2"
    assert hull(u.apply_all(moved.vertices)) == tri
    assert len(seq.steps) == 4
    kinds = [s.kind for s in seq.steps]
    assert kinds == ["III_m", "II_ni", "II_ni", "I_m"]


def test_to_standard_form_ruling_normalization():
    std, _ = standard_pairs()["F0"]
    vertical = ((0, -1), (0, 1))
    key, u, seq = to_standard_form(std, vertical, "terminal")
    assert key == "F0"
    assert len(seq.steps) == 1
    assert seq.steps[0].kind == "IV_m"


def test_forward_sequences_all_tokens_all_keys():
    for tok in TOKENS:
        for key in standard_pairs():
            seq = forward_sequence(tok, key)
            cls = "canonical" if key == "F2" else "terminal"
            rep = validate_sequence(sequence_from_steps(seq.steps, cls))
            assert rep.ok, (tok, key, rep.failures)


def test_join_standard_words():
    seq = join_standard("F0", "F2", "canonical")
    assert [s.kind for s in seq.steps] == ["II_ni", "II_ni"]
    assert join_standard("F1", "F1", "terminal").steps == ()
    with pytest.raises(ClassViolationError):
        join_standard("F0", "F2", "terminal")


def test_connect_same_polytope_trivial():
    p = hull([(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)])
    cert = connect(p, p, "canonical")
    assert cert.chain == (p,)
    assert cert.relations == ()
    assert cert.sequence.steps == ()
    assert verify_certificate(cert).ok


def test_connect_square_to_f2():
    cert = connect(ruled_polygon(0), hull([(1, 0), (0, 1), (-2, -1)]), "canonical")
    assert verify_certificate(cert).ok
    kinds = [s.kind for s in cert.sequence.steps]
    assert kinds == ["II_ni", "II_ni"]
    from fanoweb.polytopes import in_class

    assert all(in_class(p, "reflexive") for p in cert.chain)


def test_connect_rejects_class_violation():
    not_canonical = hull([(1, 0), (0, 1), (-3, -1)])
    with pytest.raises(ClassViolationError):
        connect(not_canonical, plane_polygon(), "canonical")
    with pytest.raises(ClassViolationError):
        connect(ruled_polygon(2), plane_polygon(), "terminal")


def test_connect_endpoints_bit_exact():
    p = hull(GEN_T.apply_all(ruled_polygon(1).vertices))
    q = plane_polygon()
    cert = connect(p, q, "canonical")
    assert cert.chain[0] == p
    assert cert.chain[-1] == q
    assert verify_certificate(cert).ok


def test_verify_detects_tampering():
    tri = plane_polygon()
    s_tri = hull(GEN_S.apply_all(tri.vertices))
    cert = connect(tri, s_tri, "terminal")
    assert verify_certificate(cert).ok
    from fanoweb.web import ConnectCertificate

    bad_chain = list(cert.chain)
    bad_chain[437 % len(bad_chain)] = hull([(1, 0), (0, 1), (-1, -2)])
    tampered = ConnectCertificate(
        tuple(bad_chain), cert.relations, cert.sequence, cert.class_constraint
    )
    rep = verify_certificate(tampered)
    assert not rep.ok
    assert rep.failures


def test_fano_purity_on_planar_families():
    seq = sequence_from_steps([elementary_transform(m) for m in range(3)][:1])
    assert fano_purity_report(seq) == ()
    seq2 = sequence_from_steps([blowdown_link(1)])
    assert fano_purity_report(seq2) == ()


def test_mmp_3d_dead_end_reports():
    # the three-dimensional walk is fixture-grade: a dead end must raise
    p = hull(
        [
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
            (-1, -1, -1),
        ]
    )
    try:
        r = mmp_reduce(p, "canonical")
        assert r.polytope.dim == 3
    except NoMoriFiberStructureError:
        pass


def test_enumerate_fano_counts_box2():
    classes = enumerate_fano(2, "reflexive")
    assert len(classes) == 16
    total = sum(c for _, c in classes)
    assert total == len(enumerate_class_polygons(2, "reflexive"))


def test_enumerate_fano_mfp_box2():
    term = enumerate_fano(2, "terminal", mfp_only=True)
    assert len(term) == 3
    canon = enumerate_fano(2, "canonical", mfp_only=True)
    assert len(canon) == 4


def test_bfs_connect_square_to_quad():
    cert = bfs_connect(ruled_polygon(0), ruled_polygon(1), "terminal", box=2)
    assert cert is not None
    assert len(cert.sequence.steps) == 1
    assert cert.sequence.steps[0].kind == "II_ni"
    assert verify_certificate(cert).ok


def test_bfs_connect_trivial():
    cert = bfs_connect(ruled_polygon(0), ruled_polygon(0), "canonical", box=2)
    assert cert.sequence.steps == ()
    assert cert.chain == (ruled_polygon(0),)


def test_bfs_connect_quarter_turn():
    tri = plane_polygon()
    s_tri = hull(GEN_S.apply_all(tri.vertices))
    cert = bfs_connect(tri, s_tri, "terminal", box=2)
    assert cert is not None
    assert len(cert.sequence.steps) <= 4
    assert verify_certificate(cert).ok
    direct = connect(tri, s_tri, "terminal")
    assert cert.chain[0] == direct.chain[0]
    assert cert.chain[-1] == direct.chain[-1]


def test_bfs_and_connect_agree_on_endpoints():
    p = ruled_polygon(1)
    q = hull(GEN_U.apply_all(ruled_polygon(1).vertices))
    a = connect(p, q, "terminal")
    b = bfs_connect(p, q, "terminal", box=2)
    assert b is not None
    assert a.chain[0] == b.chain[0] and a.chain[-1] == b.chain[-1]
    assert verify_certificate(a).ok and verify_certificate(b).ok


def test_minimal_polygons_admit_mori_structures():
    # exhaustive reduction over the box-2 canonical polygons: wherever the
    # walk bottoms out, a Mori fiber structure must exist
    minimal_seen = 0
    for p in enumerate_class_polygons(2, "canonical"):
        cur = p
        while True:
            from fanoweb.genset import polytope_reduction

            step = None
            for v in sorted(cur.vertices):
                res = polytope_reduction(cur, v)
                if res.valid:
                    step = res.polytope
                    break
            if step is None:
                break
            cur = step
        assert mori_fiber_structures(from_polytope(cur)), cur
        minimal_seen += 1
    assert minimal_seen == len(enumerate_class_polygons(2, "canonical"))


def test_verify_survives_non_fano_tampering():
    # tampering can push a chain member outside the Fano world entirely;
    # verification must localize that, not blow up
    from fanoweb.web import ConnectCertificate

    cert = connect(ruled_polygon(0), ruled_polygon(1), "canonical")
    bad_chain = list(cert.chain)
    bad_chain[1] = hull([(2, 1), (0, 1), (-1, 0), (0, -1)])
    tampered = ConnectCertificate(
        tuple(bad_chain), cert.relations, cert.sequence, cert.class_constraint
    )
    rep = verify_certificate(tampered)
    assert not rep.ok
    assert rep.failures
