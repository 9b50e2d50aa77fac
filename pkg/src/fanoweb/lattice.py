"""Exact integer linear algebra over Z^d.

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Everything runs on arbitrary-precision integers, so no overflow is possible
anywhere downstream.  The workhorses are the Hermite and Smith normal forms,
which give saturated spans, quotient projections with free cokernel, and
deterministic (HNF-normalized) bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitivize(v):
    """Return (w, k) with w primitive and v == k*w, k >= 1.

    Raises ValueError on the zero vector, which generates no ray.
    """
    k = vec_gcd(v)
    if k == 0:
        raise ValueError("cannot primitivize the zero vector")
    return tuple(x // k for x in v), k


def is_primitive(v):
    return vec_gcd(v) == 1


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(v):
    return tuple(-a for a in v)


def vec_scale(k, v):
    return tuple(k * a for a in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def cross3(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    cols = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mat_transpose(m):
    return tuple(zip(*m))


def mat_identity(d):
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def mat_det(m):
    d = len(m)
    if d == 1:
        return m[0][0]
    if d == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if d == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    raise ValueError("determinants beyond 3x3 are not needed here")


def mat_inverse_unimodular(m):
    """Inverse of an integer matrix with determinant +-1."""
    d = len(m)
    det = mat_det(m)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    if d == 1:
        return ((det,),)
    if d == 2:
        a, b = m[0]
        c, e = m[1]
        return (
            (e * det, -b * det),
            (-c * det, a * det),
        )
    # 3x3 adjugate
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [
                [m[r][c] for c in range(3) if c != j]
                for r in range(3)
                if r != i
            ]
            minor = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
            cof[i][j] = (-1) ** (i + j) * minor
    return tuple(tuple(cof[j][i] * det for j in range(3)) for i in range(3))


def row_hermite(mat):
    """Row-style Hermite normal form.

    Returns (u, h) with u unimodular and h == u * mat, where h is in row
    echelon form with positive pivots and the entries above each pivot
    reduced into [0, pivot).  For a nonsingular square input this form is
    unique, which is what makes it usable as a canonical representative of
    the left GL(d,Z)-orbit.
    """
    rows = [list(r) for r in mat]
    n = len(rows)
    m = len(rows[0]) if n else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def addrow(i, j, q):
        rows[i] = [a - q * b for a, b in zip(rows[i], rows[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        u[i], u[j] = u[j], u[i]

    def negate(i):
        rows[i] = [-a for a in rows[i]]
        u[i] = [-a for a in u[i]]

    pivot = 0
    for col in range(m):
        if pivot >= n:
            break
        while True:
            nz = [i for i in range(pivot, n) if rows[i][col] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i][col]))
            if best != pivot:
                swap(best, pivot)
            p = rows[pivot][col]
            done = True
            for i in range(pivot + 1, n):
                if rows[i][col] != 0:
                    q = rows[i][col] // p
                    addrow(i, pivot, q)
                    if rows[i][col] != 0:
                        done = False
            if done:
                break
        if rows[pivot][col] == 0:
            continue
        if rows[pivot][col] < 0:
            negate(pivot)
        p = rows[pivot][col]
        for i in range(pivot):
            q = rows[i][col] // p
            if q:
                addrow(i, pivot, q)
        pivot += 1
    return tuple(tuple(r) for r in u), tuple(tuple(r) for r in rows)


def smith_normal_form(mat):
    """Smith normal form: returns (u, s, v) with s == u * mat * v.

    u and v are unimodular; s is diagonal with nonnegative entries and each
    diagonal entry divides the next.
    """
    s = [list(r) for r in mat]
    n = len(s)
    m = len(s[0]) if n else 0
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_add(i, j, q):
        s[i] = [a - q * b for a, b in zip(s[i], s[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_add(i, j, q):
        for r in range(n):
            s[r][i] -= q * s[r][j]
        for r in range(m):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in range(n):
            s[r][i], s[r][j] = s[r][j], s[r][i]
        for r in range(m):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def row_neg(i):
        s[i] = [-a for a in s[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(n, m):
        # locate a nonzero entry in the remaining block
        pos = None
        bestval = None
        for i in range(t, n):
            for j in range(t, m):
                if s[i][j] != 0 and (bestval is None or abs(s[i][j]) < bestval):
                    pos = (i, j)
                    bestval = abs(s[i][j])
        if pos is None:
            break
        i0, j0 = pos
        if i0 != t:
            row_swap(t, i0)
        if j0 != t:
            col_swap(t, j0)
        while True:
            changed = False
            for i in range(t + 1, n):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    row_add(i, t, q)
                    if s[i][t] != 0:
                        row_swap(t, i)
                        changed = True
            for j in range(t + 1, m):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    col_add(j, t, q)
                    if s[t][j] != 0:
                        col_swap(t, j)
                        changed = True
            if not changed:
                break
        if s[t][t] < 0:
            row_neg(t)
        t += 1
    # enforce the divisibility chain
    t = min(n, m)
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            a, b = s[i][i], s[i + 1][i + 1]
            if a and b and b % a != 0:
                # classic 2x2 fix: gcd goes up, lcm goes down
                col_add(i, i + 1, -1)
                q = s[i + 1][i] // s[i][i] if s[i][i] else 0
                while s[i + 1][i] != 0:
                    q = s[i + 1][i] // s[i][i]
                    row_add(i + 1, i, q)
                    if s[i + 1][i] != 0:
                        row_swap(i, i + 1)
                while s[i][i + 1] != 0:
                    q = s[i][i + 1] // s[i][i]
                    col_add(i + 1, i, q)
                    if s[i][i + 1] != 0:
                        col_swap(i, i + 1)
                if s[i][i] < 0:
                    row_neg(i)
                if s[i + 1][i + 1] < 0:
                    row_neg(i + 1)
                changed = True
    return (
        tuple(tuple(r) for r in u),
        tuple(tuple(r) for r in s),
        tuple(tuple(r) for r in v),
    )


def saturate_span(vectors):
    """Basis of the saturated sublattice N ∩ span_R(vectors).

    The result is normalized by Hermite normal form, so it is deterministic.
    Raises ValueError if every input vector is zero.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        raise ValueError("saturate_span needs at least one vector")
    d = len(vecs[0])
    cols = tuple(tuple(v[i] for v in vecs) for i in range(d))
    u, s, _ = smith_normal_form(cols)
    rank = sum(1 for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i] != 0)
    if rank == 0:
        raise ValueError("cannot saturate the span of zero vectors")
    uinv = mat_inverse_unimodular(u)
    basis = tuple(tuple(uinv[r][i] for r in range(d)) for i in range(rank))
    _, h = row_hermite(basis)
    return tuple(h[i] for i in range(rank))


@dataclass(frozen=True)
class UnimodularMap:
    """An element of GL(d,Z) acting on column vectors."""

    matrix: tuple

    def __post_init__(self):
        if mat_det(self.matrix) not in (1, -1):
            raise ValueError("matrix is not unimodular")

    @property
    def dim(self):
        return len(self.matrix)

    def apply(self, v):
        return mat_vec(self.matrix, v)

    def apply_all(self, vs):
        return tuple(mat_vec(self.matrix, v) for v in vs)

    def inverse(self):
        return UnimodularMap(mat_inverse_unimodular(self.matrix))

    def compose(self, other):
        """self after other, as maps."""
        return UnimodularMap(mat_mul(self.matrix, other.matrix))

    @staticmethod
    def identity(d):
        return UnimodularMap(mat_identity(d))


@dataclass(frozen=True)
class QuotientProjection:
    """Projection N -> N_b with kernel exactly the saturated fiber lattice.

    The matrix has shape (d-k) x d and is normalized by row Hermite form so
    two calls with the same fiber basis produce identical output.
    """

    source_dim: int
    fiber_basis: tuple
    matrix: tuple

    @property
    def target_dim(self):
        return self.source_dim - len(self.fiber_basis)

    def apply(self, v):
        return tuple(dot(row, v) for row in self.matrix)


def quotient_projection(fiber_basis, dim):
    """Build the quotient projection for a saturated fiber sublattice.

    fiber_basis must be a basis (independent rows) of a saturated sublattice
    of Z^dim; otherwise ValueError is raised.
    """
    basis = tuple(tuple(b) for b in fiber_basis)
    k = len(basis)
    if k == 0:
        raise ValueError("empty fiber basis")
    if any(len(b) != dim for b in basis):
        raise ValueError("fiber basis vectors must have length dim")
    cols = tuple(tuple(b[i] for b in basis) for i in range(dim))
    u, s, _ = smith_normal_form(cols)
    rank = sum(1 for i in range(min(dim, k)) if s[i][i] != 0)
    if rank != k:
        raise ValueError("fiber basis is not linearly independent")
    if any(s[i][i] != 1 for i in range(k)):
        raise ValueError("fiber basis does not span a saturated sublattice")
    if k == dim:
        return QuotientProjection(dim, basis, ())
    proj = tuple(u[i] for i in range(k, dim))
    _, h = row_hermite(proj)
    matrix = tuple(h[i] for i in range(dim - k))
    pi = QuotientProjection(dim, basis, matrix)
    for b in basis:
        if any(x != 0 for x in pi.apply(b)):
            raise AssertionError("projection does not kill the fiber basis")
    return pi


def pibar(pi, v):
    """Primitive generator of the ray through pi(v).

    Raises ValueError when v lies in the fiber lattice (projection zero).
    """
    w = pi.apply(v)
    if not w or all(x == 0 for x in w):
        raise ValueError("vector lies in the fiber lattice; no base ray")
    return primitivize(w)[0]


def right_inverse(mat):
    """Integer right inverse of a surjective matrix (unit invariant factors)."""
    r = len(mat)
    d = len(mat[0])
    u, s, v = smith_normal_form(mat)
    if any(s[i][i] != 1 for i in range(r)):
        raise ValueError("matrix has no integer right inverse")
    embed = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(d))
    x = mat_mul(mat_mul(v, embed), u)
    if mat_mul(mat, x) != mat_identity(r):
        raise AssertionError("right inverse construction failed")
    return x


def _rank_fraction(rows):
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for col in range(cols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        work[rank] = [x / pv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def in_span(v, basis):
    """Exact test for v in span_R(basis)."""
    if all(x == 0 for x in v):
        return True
    if not basis:
        return False
    return _rank_fraction(list(basis)) == _rank_fraction(list(basis) + [v])


def coordinates_in_basis(v, basis):
    """Integer coordinates of v with respect to lattice basis rows.

    Returns None when v is not an integer combination of the basis.
    """
    k = len(basis)
    d = len(v)
    # solve c * basis = v by Gaussian elimination over Q
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(d)]
    rank = 0
    pivots = []
    for col in range(k):
        piv = None
        for i in range(rank, d):
            if aug[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pv = aug[rank][col]
        aug[rank] = [x / pv for x in aug[rank]]
        for i in range(d):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivots.append(col)
        rank += 1
    for i in range(rank, d):
        if aug[i][k] != 0:
            return None
    coords = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        coords[col] = aug[r][k]
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)
