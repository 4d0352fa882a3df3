"""Hermitian forms over F_{q^2}: evaluation, rank, congruence reduction,
tangency and section classification, and exact point counting by closed
formula and by full enumeration.

A Hermitian form is an (n+1)x(n+1) matrix H with H^T = H^(q); its variety
is the zero set of x^T H x^(q) in P^n(F_{q^2}).  The non-degenerate variety
in P^n has exactly (q^n - (-1)^n)(q^(n+1) - (-1)^(n+1)) / (q^2 - 1) rational
points, and every linear section is a cone with a vertex subspace of
dimension v over a non-degenerate base of dimension s, encoded here as
SectionType(v, s).
"""

import functools
import multiprocessing
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, Degenerate, NotOnVariety, OutOfRange
from .field import solve_norm
from .projgeom import (
    Hyperplane,
    ProjPoint,
    matrix_rank,
    normalize,
    num_points,
    point_array,
    rref,
)

DEFAULT_POINT_BUDGET = 300_000_000
_CHUNK = 1 << 20


@dataclass(frozen=True)
class HermitianForm:
    matrix: tuple
    n: int
    ctx: object

    def __post_init__(self):
        H = self.matrix
        assert len(H) == self.n + 1 and all(len(r) == self.n + 1 for r in H)
        if not any(any(row) for row in H):
            raise ValueError("zero matrix is not a Hermitian form")
        fr = self.ctx.frobenius
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                if fr(H[i][j]) != H[j][i]:
                    raise ValueError("matrix is not Hermitian (H^T != H^(q))")


@dataclass(frozen=True)
class SectionType:
    """A linear section of the variety is the cone with vertex dimension v
    over a non-degenerate base of dimension s; v = -1 means non-degenerate,
    s = -1 means the subspace lies entirely on the variety."""

    v: int
    s: int
    m: int

    def __post_init__(self):
        assert self.v + self.s == self.m - 1

    @property
    def label(self):
        if self.v == -1:
            return f"U{self.s}"
        if self.s == -1:
            return f"P{self.m}-inside"
        return f"Pi{self.v}U{self.s}"


@dataclass(frozen=True)
class TangencyReport:
    kind: str  # "tangent" | "non_tangent"
    witness: ProjPoint  # tangency point, or the external polar point


def standard_form(n, ctx):
    """The non-degenerate canonical form: H = identity."""
    H = tuple(
        tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(n + 1)
    )
    return HermitianForm(H, n, ctx)


def padded_standard_form(r, n, ctx):
    """Rank-r form as block-diagonal identity_r + zero."""
    if not 1 <= r <= n + 1:
        raise OutOfRange(f"rank r={r} outside 1..{n + 1}")
    H = tuple(
        tuple(1 if (i == j and i < r) else 0 for j in range(n + 1))
        for i in range(n + 1)
    )
    return HermitianForm(H, n, ctx)


def gram(f, u, v):
    """Sesquilinear product u^T H v^(q)."""
    ctx = f.ctx
    vq = [ctx.frobenius(x) for x in v]
    acc = 0
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        s = 0
        for hij, vj in zip(f.matrix[i], vq):
            if hij and vj:
                s = ctx.add(s, ctx.mul(hij, vj))
        if s:
            acc = ctx.add(acc, ctx.mul(ui, s))
    return acc


def evaluate(f, P):
    """Value of x^T H x^(q) at the canonical representative of P."""
    return gram(f, P.coords, P.coords)


def contains(f, P):
    return evaluate(f, P) == 0


@functools.lru_cache(maxsize=None)
def rank(f):
    """Matrix rank of H over F_{q^2} by Gaussian elimination."""
    return matrix_rank([list(r) for r in f.matrix], f.ctx)


def congruence_reduce(f):
    """Invertible P with P H P^(q)T = diag(1,...,1,0,...,0) and the rank r.

    Greedy pivoting: take the first basis vector with nonzero self-product;
    if none exists but some mixed product is nonzero, mix with the smallest
    field element that makes the self-product (a subfield trace) nonzero.
    The stated diagonal identity is re-checked before returning.
    """
    ctx = f.ctx
    n1 = f.n + 1
    rest = [[1 if i == j else 0 for j in range(n1)] for i in range(n1)]
    out = []
    while rest:
        k = next((i for i, v in enumerate(rest) if gram(f, v, v) != 0), None)
        if k is None:
            pair = next(
                (
                    (i, j, gram(f, rest[i], rest[j]))
                    for i in range(len(rest))
                    for j in range(i + 1, len(rest))
                    if gram(f, rest[i], rest[j]) != 0
                ),
                None,
            )
            if pair is None:
                break  # form vanishes identically on the remaining span
            i, j, c = pair
            cq = ctx.frobenius(c)
            lam = next(
                l
                for l in range(1, ctx.order)
                if ctx.add(ctx.mul(ctx.frobenius(l), c), ctx.mul(l, cq)) != 0
            )
            rest[i] = [
                ctx.add(x, ctx.mul(lam, y)) for x, y in zip(rest[i], rest[j])
            ]
            k = i
        v = rest.pop(k)
        d = gram(f, v, v)
        mu = solve_norm(ctx, ctx.inv(d))
        v = [ctx.mul(mu, x) for x in v]
        rest = [
            [ctx.sub(wx, ctx.mul(gram(f, w, v), vx)) for wx, vx in zip(w, v)]
            for w in rest
        ]
        out.append(v)
    r = len(out)
    P = [tuple(row) for row in out + rest]
    assert matrix_rank(P, ctx) == n1, "change of basis not invertible"
    for a in range(n1):
        for b in range(n1):
            want = 1 if (a == b and a < r) else 0
            got = gram(f, P[a], P[b])
            assert got == want, "congruence certificate failed"
    return tuple(P), r


def nondegenerate_count(n, q):
    """Rational points of the non-degenerate variety in P^n."""
    if n < 0:
        return 0
    sn = -1 if n % 2 else 1
    return (q**n - sn) * (q ** (n + 1) + sn) // (q * q - 1)


def count_points_formula(n, q, r):
    """Points of the rank-r variety in P^n: a cone with vertex P^(n-r) over
    the non-degenerate variety in P^(r-1)."""
    if not 1 <= r <= n + 1:
        raise OutOfRange(f"rank r={r} outside 1..{n + 1}")
    vertex = num_points(n - r, q) if n - r >= 0 else 0
    return vertex + q ** (2 * (n - r + 1)) * nondegenerate_count(r - 1, q)


def section_count(stype, q):
    """Point count of a section from its SectionType."""
    if stype.s == -1:
        return num_points(stype.m, q)
    return count_points_formula(stype.m, q, stype.s + 1)


# -- vectorized evaluation ---------------------------------------------------


def eval_form_at(f, pts):
    """Values of the form at each row of a point-index array (vectorized)."""
    ctx = f.ctx
    H = f.matrix
    n1 = f.n + 1
    diagonal = all(H[i][j] == 0 for i in range(n1) for j in range(n1) if i != j)
    if diagonal:
        acc = np.zeros(len(pts), dtype=np.uint8)
        for i in range(n1):
            d = H[i][i]
            if d == 0:
                continue
            t = ctx.vnorm(pts[:, i])
            if d != 1:
                t = ctx.vscale(d, t)
            acc = ctx.vadd(acc, t)
        return acc
    frob_cols = [ctx.vfrob(pts[:, j]) for j in range(n1)]
    acc = np.zeros(len(pts), dtype=np.uint8)
    for i in range(n1):
        s = None
        for j in range(n1):
            hij = H[i][j]
            if hij == 0:
                continue
            t = ctx.vscale(hij, frob_cols[j])
            s = t if s is None else ctx.vadd(s, t)
        if s is None:
            continue
        acc = ctx.vadd(acc, ctx.vmul(pts[:, i], s))
    return acc


def _count_range(f, start, stop):
    pts = point_array(f.n, f.ctx)
    total = 0
    for a in range(start, stop, _CHUNK):
        b = min(a + _CHUNK, stop)
        vals = eval_form_at(f, pts[a:b])
        total += int(np.count_nonzero(vals == 0))
    return total


def count_points_enum(f, budget=DEFAULT_POINT_BUDGET, workers=1):
    """Exact |V(f)(F_{q^2})| by scanning every point of P^n."""
    N = num_points(f.n, f.ctx.q)
    if N > budget:
        raise BudgetExceeded(N, budget)
    if workers <= 1 or N < 4 * _CHUNK:
        return _count_range(f, 0, N)
    bounds = np.linspace(0, N, workers + 1, dtype=np.int64)
    jobs = [(f, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
    with multiprocessing.get_context("fork").Pool(workers) as pool:
        parts = pool.starmap(_count_range, jobs)
    return sum(parts)


def variety_mask(f, budget=DEFAULT_POINT_BUDGET):
    """Boolean mask over the canonical point order: True iff on the variety."""
    N = num_points(f.n, f.ctx.q)
    if N > budget:
        raise BudgetExceeded(N, budget)
    pts = point_array(f.n, f.ctx)
    out = np.empty(N, dtype=bool)
    for a in range(0, N, _CHUNK):
        b = min(a + _CHUNK, N)
        out[a:b] = eval_form_at(f, pts[a:b]) == 0
    return out


# -- tangency and sections ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def _inverse_matrix(f):
    """H^{-1} by augmented Gaussian elimination; raises Degenerate."""
    ctx = f.ctx
    n1 = f.n + 1
    aug = [
        list(f.matrix[i]) + [1 if i == j else 0 for j in range(n1)]
        for i in range(n1)
    ]
    red, pivots = rref(aug, ctx)
    if len(red) < n1 or pivots != list(range(n1)):
        raise Degenerate("form has no inverse (rank < n+1)")
    return tuple(tuple(row[n1:]) for row in red)


def tangent_hyperplane(f, P):
    """The hyperplane x -> x^T H p^(q) at a variety point P; contains P."""
    if not contains(f, P):
        raise NotOnVariety(f"point {P.coords} is not on the variety")
    ctx = f.ctx
    pq = [ctx.frobenius(x) for x in P.coords]
    cov = []
    for row in f.matrix:
        s = 0
        for hij, vj in zip(row, pq):
            if hij and vj:
                s = ctx.add(s, ctx.mul(hij, vj))
        cov.append(s)
    h = Hyperplane(normalize(cov, ctx))
    assert ctx.dot(h.covector, P.coords) == 0
    return h


def classify_hyperplane(f, hyp):
    """Tangent/non-tangent classification with the witness point.

    The candidate point is P = (H^{-1} a^T)^(q) for covector a; if P lies on
    the variety the hyperplane is its tangent there, otherwise the hyperplane
    is the polar of the external point P.
    """
    ctx = f.ctx
    if rank(f) != f.n + 1:
        raise Degenerate("classification needs a non-degenerate form")
    Hinv = _inverse_matrix(f)
    a = hyp.covector
    p = []
    for row in Hinv:
        s = 0
        for hij, aj in zip(row, a):
            if hij and aj:
                s = ctx.add(s, ctx.mul(hij, aj))
        p.append(ctx.frobenius(s))
    witness = ProjPoint(normalize(p, ctx))
    if contains(f, witness):
        assert tangent_hyperplane(f, witness) == Hyperplane(
            normalize(a, ctx)
        ), "tangency witness does not reproduce the hyperplane"
        return TangencyReport("tangent", witness)
    return TangencyReport("non_tangent", witness)


def restrict(f, subspace):
    """Form restricted to a subspace: B H B^(q)T for the basis matrix B.

    Returns None when the restriction is the zero matrix, i.e. the subspace
    lies entirely on the variety.
    """
    B = subspace.basis
    m1 = len(B)
    rows = tuple(
        tuple(gram(f, B[u], B[v]) for v in range(m1)) for u in range(m1)
    )
    if not any(any(r) for r in rows):
        return None
    return HermitianForm(rows, m1 - 1, f.ctx)


def classify_section(f, subspace):
    """SectionType (v, s) of a proper linear section of a non-degenerate
    variety; the base rank comes from the restricted matrix."""
    n, m = f.n, subspace.dim
    if rank(f) != n + 1:
        raise Degenerate("section classification needs a non-degenerate form")
    if not 0 <= m <= n - 1:
        raise OutOfRange(f"section dimension m={m} outside 0..{n - 1}")
    sub = restrict(f, subspace)
    s = -1 if sub is None else rank(sub) - 1
    st = SectionType(m - 1 - s, s, m)
    assert n - 2 * m + s >= 0, "impossible section type"
    return st


def tangents_through_count(f, P):
    """Tangent hyperplanes through a variety point: q^2 |U_{n-2}| + 1."""
    if not contains(f, P):
        raise NotOnVariety(f"point {P.coords} is not on the variety")
    q = f.ctx.q
    return q * q * nondegenerate_count(f.n - 2, q) + 1
