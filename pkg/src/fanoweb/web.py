"""The connectivity engine for webs of Fano polygons.

Pipeline: reduce a polygon to a Mori fiber polygon by class-preserving
vertex removals, move that polygon to one of the four standard forms
through a word of verified link sequences (one per GL(2,Z) generator and
standard form), join the standard forms along the fixed ladder, and flatten
everything into a certificate whose every relation, link, and class
membership can be re-checked from scratch.

A breadth-first oracle over the same link moves provides shortest
certificates inside a coordinate box, and the exhaustive enumerator counts
class polygons up to unimodular equivalence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .genset import (
    from_polytope,
    mori_fiber_structures,
    polytope_reduction,
    positively_spans,
)
from .lattice import UnimodularMap, mat_mul
from .links import (
    Constituent,
    LinkSequence,
    blowdown_link,
    box_primitives,
    conjugate,
    conjugate_sequence,
    elementary_transform,
    enumerate_links,
    plane_polygon,
    reverse_sequence,
    ruled_polygon,
    ruling_swap,
    sequence_from_steps,
    sequence_panels,
    validate_sequence,
)
from .polytopes import (
    hull,
    in_class,
    is_fano,
    lattice_points,
    normal_form,
    primitive_points,
    primitive_points_in_hull,
)

GEN_S = UnimodularMap(((0, -1), (1, 0)))
GEN_T = UnimodularMap(((1, 1), (0, 1)))
GEN_U = UnimodularMap(((-1, 0), (0, 1)))

TOKENS = {
    "S": GEN_S,
    "S^-1": GEN_S.inverse(),
    "T": GEN_T,
    "T^-1": GEN_T.inverse(),
    "U": GEN_U,
}

_INVERSE_TOKEN = {"S": "S^-1", "S^-1": "S", "T": "T^-1", "T^-1": "T", "U": "U"}

HORIZONTAL_FIBER = ((-1, 0), (1, 0))


class NoMoriFiberStructureError(ValueError):
    """Reduction dead-ends at a polytope with no Mori fiber structure."""


class ClassViolationError(ValueError):
    pass


class NotInStandardOrbitError(ValueError):
    pass


def standard_pairs():
    """The four standard Mori fiber polygons with their standard fibers."""
    tri = plane_polygon()
    return {
        "P2": (tri, from_polytope(tri).points),
        "F0": (ruled_polygon(0), HORIZONTAL_FIBER),
        "F1": (ruled_polygon(1), HORIZONTAL_FIBER),
        "F2": (ruled_polygon(2), HORIZONTAL_FIBER),
    }


STANDARD_KEYS = ("P2", "F0", "F1", "F2")


# ---------------------------------------------------------------------------
# GL(2,Z) factorization into the three generators
# ---------------------------------------------------------------------------

_FACTOR_CACHE = {}


def factor_unimodular(g):
    """A word in S, T, U (and inverses) whose product is g.

    Euclidean reduction on the first column; words are not minimized.
    """
    got = _FACTOR_CACHE.get(g.matrix)
    if got is not None:
        return got
    m = [list(r) for r in g.matrix]
    tokens = []

    def apply(name):
        inv = TOKENS[name].inverse().matrix
        new = mat_mul(inv, (tuple(m[0]), tuple(m[1])))
        m[0], m[1] = list(new[0]), list(new[1])
        tokens.append(name)

    while m[1][0] != 0:
        a, c = m[0][0], m[1][0]
        if a == 0 or abs(a) < abs(c):
            apply("S")
            continue
        q = a // c
        name = "T" if q > 0 else "T^-1"
        for _ in range(abs(q)):
            apply(name)
    if m[0][0] < 0:
        apply("U")
    if m[1][1] < 0:
        apply("U")
        apply("S")
        apply("S")
    b = m[0][1]
    name = "T" if b > 0 else "T^-1"
    for _ in range(abs(b)):
        apply(name)
    if (tuple(m[0]), tuple(m[1])) != ((1, 0), (0, 1)):
        raise AssertionError("factorization did not terminate at the identity")
    word = tuple(tokens)
    check = UnimodularMap.identity(2)
    for t in word:
        check = check.compose(TOKENS[t])
    if check.matrix != g.matrix:
        raise AssertionError("factorization product mismatch")
    _FACTOR_CACHE[g.matrix] = word
    return word


# ---------------------------------------------------------------------------
# base sequences between a standard form and its generator images
# ---------------------------------------------------------------------------


def _cremona_word():
    """From the triangle to its quarter-turn image, four links."""
    return sequence_from_steps(
        [
            blowdown_link(1),
            elementary_transform(0, -1),
            conjugate(GEN_U, elementary_transform(0, 1)),
            conjugate(GEN_U, blowdown_link(-1)),
        ]
    )


def _s_on_ruled_word(m):
    """From the m-th ruled polygon to its quarter-turn image."""
    steps = []
    for j in range(m - 1, -1, -1):
        steps.append(elementary_transform(j, -1))
    steps.append(ruling_swap(1))
    for j in range(m):
        steps.append(conjugate(GEN_S, elementary_transform(j, 1)))
    return sequence_from_steps(steps)


def _forward_builtin(token, key):
    if token == "S":
        if key == "P2":
            return _cremona_word()
        return _s_on_ruled_word(int(key[1]))
    if token == "U":
        if key == "P2":
            # the mirror image of the triangle equals its quarter turn
            return _cremona_word()
        if key == "F0":
            return sequence_from_steps([])
    return None


_FORWARD_CACHE = {}


def forward_sequence(token, key):
    """Verified sequence from (std, fiber) to (token.std, token.fiber)."""
    got = _FORWARD_CACHE.get((token, key))
    if got is not None:
        return got
    if token in ("S^-1", "T^-1"):
        base = forward_sequence(_INVERSE_TOKEN[token], key)
        seq = conjugate_sequence(TOKENS[token], reverse_sequence(base))
    else:
        seq = _forward_builtin(token, key)
        if seq is None:
            from .standard_moves import derived_forward_sequence

            seq = derived_forward_sequence(token, key)
    _check_forward(seq, token, key)
    _FORWARD_CACHE[(token, key)] = seq
    return seq


def _check_forward(seq, token, key):
    std, fiber = standard_pairs()[key]
    g = TOKENS[token]
    start = (from_polytope(std).points, tuple(sorted(fiber)))
    end = (
        tuple(sorted(g.apply_all(from_polytope(std).points))),
        tuple(sorted(g.apply_all(fiber))),
    )
    if not seq.steps:
        if start != end:
            raise AssertionError(f"empty base sequence for {token} on {key}")
        return
    first = seq.steps[0].left
    last = seq.steps[-1].right
    if (first.points, first.fiber) != start or (last.points, last.fiber) != end:
        raise AssertionError(f"base sequence endpoints wrong for {token} on {key}")
    rep = validate_sequence(seq)
    if not rep.ok:
        raise AssertionError(f"base sequence invalid for {token} on {key}: {rep.failures}")


def base_sequence(token, key):
    """From (token.std, token.fiber) back to (std, fiber)."""
    return reverse_sequence(forward_sequence(token, key))


# ---------------------------------------------------------------------------
# matching a Mori fiber polygon to its standard form
# ---------------------------------------------------------------------------

_MATCH_CACHE = {}


def _orbit_maps(src, dst):
    """All unimodular maps sending the point set src onto dst."""
    out = {}
    src_set = set(src)
    dst_set = set(dst)
    pairs_src = [
        (a, b)
        for a in src
        for b in src
        if a != b and a[0] * b[1] - a[1] * b[0] != 0
    ]
    pairs_dst = {}
    for a in dst:
        for b in dst:
            det = a[0] * b[1] - a[1] * b[0]
            if a != b and det != 0:
                pairs_dst.setdefault(det, []).append((a, b))
    for a, b in pairs_src:
        det = a[0] * b[1] - a[1] * b[0]
        for c, d in pairs_dst.get(det, ()):
            # u * (a b) == (c d): u = (c d) * adj(a b) / det
            adj = ((b[1], -b[0]), (-a[1], a[0]))
            cols = ((c[0], d[0]), (c[1], d[1]))
            raw = mat_mul(cols, adj)
            if any(x % det for row in raw for x in row):
                continue
            mat = tuple(tuple(x // det for x in row) for row in raw)
            if mat in out:
                continue
            a11, a12 = mat[0]
            a21, a22 = mat[1]
            if a11 * a22 - a12 * a21 not in (1, -1):
                continue
            u = UnimodularMap(mat)
            if {u.apply(p) for p in src_set} == dst_set:
                out[mat] = u
    return list(out.values())


def match_standard(p):
    """The standard form key and a map u with u(p) equal to it on the nose.

    Among all matching maps the one with the shortest factorization word for
    its inverse is chosen, with deterministic tie-breaks.
    """
    got = _MATCH_CACHE.get(p)
    if got is not None:
        return got
    a = primitive_points(p)
    for key in STANDARD_KEYS:
        std, _ = standard_pairs()[key]
        b = primitive_points(std)
        if len(a) != len(b) or len(p.vertices) != len(std.vertices):
            continue
        if len(lattice_points(p)) != len(lattice_points(std)):
            continue
        cands = _orbit_maps(a, b)
        if not cands:
            continue

        def rank(u):
            word = factor_unimodular(u.inverse())
            return (len(word), word, u.matrix)

        best = min(cands, key=rank)
        _MATCH_CACHE[p] = (key, best)
        return key, best
    raise NotInStandardOrbitError(
        "polygon is not unimodular-equivalent to a standard Mori fiber polygon"
    )


# ---------------------------------------------------------------------------
# reduction to a Mori fiber polygon
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MmpReduction:
    polytope: object
    fiber: tuple
    chain: tuple  # ((removed vertex, polytope after removal), ...)


_MMP_CACHE = {}


def mmp_reduce(p, class_constraint="canonical"):
    """Class-preserving vertex removals until a Mori fiber structure exists.

    Removals pick the lexicographically smallest valid vertex.  In three
    dimensions the walk may dead-end; that raises NoMoriFiberStructureError
    since no Mori fiber structure is guaranteed to exist there.
    """
    got = _MMP_CACHE.get((p, class_constraint))
    if got is not None:
        return got
    if not is_fano(p):
        raise ValueError("reduction starts from a Fano polytope")
    cur = p
    chain = []
    while True:
        mori = mori_fiber_structures(from_polytope(cur))
        if mori:
            fiber = min(fs.fiber for fs in mori)
            res = MmpReduction(cur, fiber, tuple(chain))
            _MMP_CACHE[(p, class_constraint)] = res
            return res
        step = None
        for v in sorted(cur.vertices):
            res = polytope_reduction(cur, v)
            if res.valid and in_class(res.polytope, class_constraint):
                step = (v, res.polytope)
                break
        if step is None:
            raise NoMoriFiberStructureError(
                "no Mori fiber structure and no class-preserving reduction; "
                "open-problem instance"
            )
        chain.append(step)
        cur = step[1]


# ---------------------------------------------------------------------------
# standard form and the connecting ladder
# ---------------------------------------------------------------------------


_TSF_CACHE = {}


def to_standard_form(p, fiber, class_constraint="canonical"):
    """Connect a Mori fiber polygon to its standard form.

    Returns (key, u, seq): u maps p bit-exactly onto the standard polygon
    and seq is a verified link sequence from (p, fiber) to the standard
    pair, staying inside the class.
    """
    cache_key = (p, tuple(sorted(tuple(x) for x in fiber)), class_constraint)
    got = _TSF_CACHE.get(cache_key)
    if got is not None:
        return got
    key, u = match_standard(p)
    g = u.inverse()
    std, f_std = standard_pairs()[key]
    word = factor_unimodular(g)
    fiber = tuple(sorted(tuple(q) for q in fiber))
    parts = []
    expected = tuple(sorted(g.apply_all(f_std)))
    if fiber != expected:
        if key != "F0":
            raise ValueError("fiber does not match the unique ruling")
        parts.append(conjugate_sequence(g, sequence_from_steps([ruling_swap(-1)])))
    prefixes = [UnimodularMap.identity(2)]
    for t in word:
        prefixes.append(prefixes[-1].compose(TOKENS[t]))
    for i in range(len(word), 0, -1):
        parts.append(conjugate_sequence(prefixes[i - 1], base_sequence(word[i - 1], key)))
    seq = _concat(parts, class_constraint)
    _check_connection(seq, (p, fiber), (std, f_std), class_constraint)
    _TSF_CACHE[cache_key] = (key, u, seq)
    return key, u, seq


def _concat(parts, class_constraint):
    steps = []
    for part in parts:
        steps.extend(part.steps)
    return sequence_from_steps(steps, class_constraint)


def _check_connection(seq, start, end, class_constraint):
    sp, sf = start
    ep, ef = end
    sf = tuple(sorted(sf))
    ef = tuple(sorted(ef))
    if not seq.steps:
        if sp != ep or sf != ef:
            raise AssertionError("empty sequence with distinct endpoints")
        return
    first, last = seq.steps[0].left, seq.steps[-1].right
    if (hull(first.points), first.fiber) != (sp, sf):
        raise AssertionError("sequence start mismatch")
    if (hull(last.points), last.fiber) != (ep, ef):
        raise AssertionError("sequence end mismatch")
    rep = validate_sequence(seq)
    if not rep.ok:
        raise AssertionError(f"sequence invalid: {rep.failures}")


def _ladder_steps(a, b):
    """Steps joining two standard pairs along P2 - F1 - F0 and F1 - F2."""
    if a == b:
        return []
    words = {
        ("P2", "F1"): lambda: [blowdown_link(1)],
        ("F1", "P2"): lambda: [blowdown_link(-1)],
        ("F0", "F1"): lambda: [elementary_transform(0, 1)],
        ("F1", "F0"): lambda: [elementary_transform(0, -1)],
        ("F1", "F2"): lambda: [elementary_transform(1, 1)],
        ("F2", "F1"): lambda: [elementary_transform(1, -1)],
    }
    if (a, b) in words:
        return words[(a, b)]()
    return _ladder_steps(a, "F1") + _ladder_steps("F1", b)


def join_standard(a, b, class_constraint="canonical"):
    if class_constraint == "terminal" and "F2" in (a, b):
        raise ClassViolationError("the F2 polygon is not terminal")
    return sequence_from_steps(_ladder_steps(a, b), class_constraint)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    rel: str  # "supset_dot", "subset_dot", "equal"
    witness: object
    origin: tuple  # ("reduction",) or ("link", step index)


@dataclass(frozen=True)
class ConnectCertificate:
    chain: tuple
    relations: tuple
    sequence: LinkSequence
    class_constraint: str


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failures: tuple


def _require_class(p, class_constraint):
    if not in_class(p, class_constraint):
        raise ClassViolationError(f"polytope is not {class_constraint}")


def connect(p, q, class_constraint="canonical"):
    """A verified certificate joining two polygons of the same class."""
    _require_class(p, class_constraint)
    _require_class(q, class_constraint)
    if p == q:
        cert = ConnectCertificate(
            (p,), (), sequence_from_steps([], class_constraint), class_constraint
        )
        return cert
    rp = mmp_reduce(p, class_constraint)
    rq = mmp_reduce(q, class_constraint)
    key_p, _, seq_p = to_standard_form(rp.polytope, rp.fiber, class_constraint)
    key_q, _, seq_q = to_standard_form(rq.polytope, rq.fiber, class_constraint)
    ladder = join_standard(key_p, key_q, class_constraint)
    seq = _concat([seq_p, ladder, reverse_sequence(seq_q)], class_constraint)
    cert = _assemble(p, q, rp, rq, seq, class_constraint)
    rep = verify_certificate(cert)
    if not rep.ok:
        raise AssertionError(f"internal: certificate failed verification: {rep.failures}")
    return cert


def _assemble(p, q, rp, rq, seq, class_constraint):
    chain = [p]
    relations = []
    for removed, poly in rp.chain:
        chain.append(poly)
        relations.append(Relation("supset_dot", removed, ("reduction",)))
    if seq.steps:
        panels, rels = sequence_panels(seq)
        first = _hull_of(panels[0].points)
        if first != chain[-1]:
            raise AssertionError("sequence does not start at the reduced polygon")
        for panel, (rel, witness, idx) in zip(panels[1:], rels):
            chain.append(_hull_of(panel.points))
            relations.append(Relation(rel, witness, ("link", idx)))
    else:
        if rp.polytope != rq.polytope:
            raise AssertionError("empty sequence between distinct reductions")
    if chain[-1] != rq.polytope:
        raise AssertionError("sequence does not end at the target reduction")
    aboves = [q] + [poly for _, poly in rq.chain[:-1]]
    for k in range(len(rq.chain) - 1, -1, -1):
        chain.append(aboves[k])
        relations.append(Relation("subset_dot", rq.chain[k][0], ("reduction",)))
    return ConnectCertificate(tuple(chain), tuple(relations), seq, class_constraint)


_PANEL_HULL_CACHE = {}


def _hull_of(points):
    got = _PANEL_HULL_CACHE.get(points)
    if got is None:
        got = hull(points)
        _PANEL_HULL_CACHE[points] = got
    return got


_REL_CHECK_CACHE = {}


def _relation_holds(a, b, rel, witness):
    key = (a, b, rel, witness)
    got = _REL_CHECK_CACHE.get(key)
    if got is not None:
        return got
    ok = _relation_holds_raw(a, b, rel, witness)
    _REL_CHECK_CACHE[key] = ok
    return ok


def _relation_holds_raw(a, b, rel, witness):
    if rel == "equal":
        return a == b
    if rel == "supset_dot":
        big, small = a, b
    elif rel == "subset_dot":
        big, small = b, a
    else:
        return False
    if witness is None:
        return False
    w = tuple(witness)
    try:
        pa = primitive_points(big)
        if w not in pa:
            return False
        rest = tuple(x for x in pa if x != w)
        if set(primitive_points(small)) != set(rest):
            return False
        if small != hull(rest):
            return False
        return not small.contains(w)
    except ValueError:
        # tampered chains may leave the Fano world entirely
        return False


def verify_certificate(cert):
    """Re-check every relation, link validation, and class membership."""
    failures = []
    chain = cert.chain
    if len(chain) != len(cert.relations) + 1:
        return VerifyReport(False, ((0, "chain and relation lengths disagree"),))
    for i, member in enumerate(chain):
        if not in_class(member, cert.class_constraint):
            failures.append((i, f"chain member leaves class {cert.class_constraint}"))
    for i, r in enumerate(cert.relations):
        if not _relation_holds(chain[i], chain[i + 1], r.rel, r.witness):
            failures.append((i, f"relation {r.rel} fails"))
    seq_rep = validate_sequence(cert.sequence)
    if not seq_rep.ok:
        failures.extend((i, f"sequence: {msg}") for i, msg in seq_rep.failures)
    link_positions = [i for i, r in enumerate(cert.relations) if r.origin[0] == "link"]
    if cert.sequence.steps:
        if not link_positions:
            failures.append((0, "sequence present but no link relations"))
        else:
            start = link_positions[0]
            try:
                panels, _ = sequence_panels(cert.sequence)
            except ValueError as e:
                panels = None
                failures.append((start, str(e)))
            if panels is not None:
                for j, panel in enumerate(panels):
                    idx = start + j
                    if idx >= len(chain) or _hull_of(panel.points) != chain[idx]:
                        failures.append((idx, "panel does not match the chain"))
                        break
    return VerifyReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# purity of whole sequences
# ---------------------------------------------------------------------------


def fano_purity_report(seq):
    """Constituent sets that differ from the primitive points of their hull."""
    offenders = []
    seen = set()
    for step in seq.steps:
        for c in (step.left, step.middle, step.right):
            if c is None:
                continue
            for pts in (c.points, c.fiber):
                if pts in seen:
                    continue
                seen.add(pts)
                if set(pts) != set(primitive_points_in_hull(pts)):
                    offenders.append(pts)
    return tuple(offenders)


# ---------------------------------------------------------------------------
# enumeration of class polygons in a coordinate box
# ---------------------------------------------------------------------------

_ENUM_CACHE = {}


def enumerate_class_polygons(box, class_constraint):
    """Every polygon of the class with vertices in the box, bit-exact.

    Canonical polygons are generated by seeding with hulls of all 3- and
    4-subsets of primitive box points and then growing one primitive point
    at a time (a canonical polygon with five or more vertices always admits
    a vertex removal staying canonical, so the closure is exhaustive).
    """
    if class_constraint not in ("canonical", "reflexive", "terminal"):
        raise ValueError("enumeration supports canonical, reflexive, terminal")
    canon = _canonical_polygons(box)
    if class_constraint == "canonical":
        return canon
    return tuple(p for p in canon if in_class(p, class_constraint))


def _canonical_polygons(box):
    got = _ENUM_CACHE.get(box)
    if got is not None:
        return got
    prims = box_primitives(box, 2)
    seen = {}
    queue = deque()

    def admit(p):
        if p.vertices not in seen:
            seen[p.vertices] = p
            queue.append(p)

    for size in (3, 4):
        for comb in combinations(prims, size):
            if not positively_spans(comb, 2):
                continue
            p = hull(comb)
            if in_class(p, "canonical"):
                admit(p)
    while queue:
        p = queue.popleft()
        pts = primitive_points(p)
        have = set(pts)
        for w in prims:
            if w in have:
                continue
            bigger = hull(pts + (w,))
            if bigger.vertices in seen:
                continue
            if in_class(bigger, "canonical"):
                admit(bigger)
    out = tuple(sorted(seen.values(), key=lambda p: p.vertices))
    _ENUM_CACHE[box] = out
    return out


def enumerate_fano(box, class_constraint, mfp_only=False):
    """Normal-form classes with concrete-representative counts."""
    polys = enumerate_class_polygons(box, class_constraint)
    if mfp_only:
        polys = tuple(
            p for p in polys if mori_fiber_structures(from_polytope(p))
        )
    groups = {}
    for p in polys:
        nf = normal_form(p)
        groups.setdefault(nf, []).append(p)
    return tuple(sorted(((nf, len(g)) for nf, g in groups.items()), key=lambda t: t[0].vertices))


# ---------------------------------------------------------------------------
# breadth-first oracle
# ---------------------------------------------------------------------------


def bfs_connect(p, q, class_constraint="canonical", box=4):
    """Shortest-link certificate inside a coordinate box, or None.

    Both endpoints are first reduced to Mori fiber polygons; the search then
    walks link moves between fibered pairs, any Mori fiber structure of the
    reduced endpoints being a valid source or target.
    """
    _require_class(p, class_constraint)
    _require_class(q, class_constraint)
    if p == q:
        return ConnectCertificate(
            (p,), (), sequence_from_steps([], class_constraint), class_constraint
        )
    rp = mmp_reduce(p, class_constraint)
    rq = mmp_reduce(q, class_constraint)
    steps = _bfs_pairs(
        _mori_pairs(rp.polytope),
        _mori_pairs(rq.polytope),
        class_constraint,
        box,
    )
    if steps is None:
        return None
    seq = sequence_from_steps(steps, class_constraint)
    cert = _assemble(p, q, rp, rq, seq, class_constraint)
    rep = verify_certificate(cert)
    if not rep.ok:
        raise AssertionError(f"internal: BFS certificate failed verification: {rep.failures}")
    return cert


def _mori_pairs(p):
    a = from_polytope(p)
    return [Constituent(a, fs.fiber) for fs in mori_fiber_structures(a)]


def _pair_key(c):
    return (c.points, c.fiber)


def _bfs_pairs(sources, targets, class_constraint, box):
    target_keys = {_pair_key(c) for c in targets}
    prev = {}
    frontier = []
    for c in sorted(sources, key=_pair_key):
        k = _pair_key(c)
        if k in target_keys:
            return []
        if k not in prev:
            prev[k] = (None, None, c)
            frontier.append(c)
    while frontier:
        nxt = []
        for c in frontier:
            for link in enumerate_links(c, class_constraint, box, "polytope"):
                r = link.right
                k = _pair_key(r)
                if k in prev:
                    continue
                prev[k] = (_pair_key(c), link, r)
                if k in target_keys:
                    return _rebuild(prev, k)
                nxt.append(r)
        frontier = sorted(nxt, key=_pair_key)
    return None


def _rebuild(prev, key):
    steps = []
    while True:
        parent, link, _ = prev[key]
        if parent is None:
            break
        steps.append(link)
        key = parent
    steps.reverse()
    return steps
