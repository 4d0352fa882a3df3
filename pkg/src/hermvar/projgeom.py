"""Canonical points, hyperplanes, and linear subspaces of P^n(F_{q^2}).

Vectors are tuples of field-element indices.  The canonical representative
of a projective class scales the first nonzero coordinate to 1, which makes
representatives unique and hashable.  Points are enumerated in pivot-block
order (first nonzero coordinate ascending, then the remaining coordinates as
base-q^2 digits), and ``point_rank`` is the dense index of a point in that
order; the search module uses it to address bitset rows.

Hyperplane covectors live in the dual space and use the same canonical form
and ordering.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import WrongDimension


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple

    @property
    def n(self):
        return len(self.coords) - 1


@dataclass(frozen=True)
class Hyperplane:
    covector: tuple

    @property
    def n(self):
        return len(self.covector) - 1


@dataclass(frozen=True)
class LinearSubspace:
    """Row-space of a reduced-row-echelon basis; dim -1 encodes the empty
    subspace (zero rows)."""

    basis: tuple
    n: int

    @property
    def dim(self):
        return len(self.basis) - 1


def normalize(vec, ctx):
    """Canonical representative: first nonzero coordinate scaled to 1."""
    for v in vec:
        if v != 0:
            if v == 1:
                return tuple(vec)
            inv = ctx.inv(v)
            return tuple(ctx.mul(inv, x) for x in vec)
    raise ValueError("zero vector has no projective class")


def num_points(n, q):
    """|P^n(F_{q^2})| = (q^(2(n+1)) - 1) / (q^2 - 1)."""
    Q = q * q
    return (Q ** (n + 1) - 1) // (Q - 1)


def hyperplanes_through_count(n, q):
    """Number of hyperplanes of P^n through a fixed point."""
    Q = q * q
    return (Q**n - 1) // (Q - 1)


def enumerate_points(n, ctx):
    """Yield every point of P^n exactly once, in canonical order."""
    Q = ctx.order
    for k in range(n + 1):
        head = (0,) * k + (1,)
        for tail in itertools.product(range(Q), repeat=n - k):
            yield ProjPoint(head + tail)


def enumerate_hyperplanes(n, ctx):
    """Yield every hyperplane of P^n once, covectors in canonical order."""
    for pt in enumerate_points(n, ctx):
        yield Hyperplane(pt.coords)


_POINT_ARRAYS = {}


def point_array(n, ctx):
    """All canonical points as an (N, n+1) uint8 array, in enumeration order.

    Cached per (n, q); treat the result as read-only.
    """
    key = (n, ctx.q)
    arr = _POINT_ARRAYS.get(key)
    if arr is None:
        Q = ctx.order
        blocks = []
        for k in range(n + 1):
            cnt = Q ** (n - k)
            block = np.zeros((cnt, n + 1), dtype=np.uint8)
            block[:, k] = 1
            t = np.arange(cnt, dtype=np.int64)
            for j in range(n, k, -1):
                block[:, j] = t % Q
                t //= Q
            blocks.append(block)
        arr = np.concatenate(blocks)
        arr.setflags(write=False)
        _POINT_ARRAYS[key] = arr
    return arr


def _rank_offsets(n, Q):
    offs = [0] * (n + 2)
    for k in range(n + 1):
        offs[k + 1] = offs[k] + Q ** (n - k)
    return offs


def point_rank(coords, ctx):
    """Dense index of a canonical point in enumeration order."""
    n = len(coords) - 1
    Q = ctx.order
    k = next(i for i, v in enumerate(coords) if v != 0)
    offs = _rank_offsets(n, Q)
    r = offs[k]
    for j in range(k + 1, n + 1):
        r += coords[j] * Q ** (n - j)
    return r


def point_from_rank(r, n, ctx):
    """Inverse of point_rank."""
    Q = ctx.order
    offs = _rank_offsets(n, Q)
    k = next(i for i in range(n + 1) if offs[i] <= r < offs[i + 1])
    t = r - offs[k]
    coords = [0] * (n + 1)
    coords[k] = 1
    for j in range(n, k, -1):
        coords[j] = t % Q
        t //= Q
    return ProjPoint(tuple(coords))


def point_rank_array(coords_arr, ctx):
    """Vectorized point_rank for an array of canonical vectors."""
    arr = np.asarray(coords_arr, dtype=np.int64)
    n = arr.shape[1] - 1
    Q = ctx.order
    weights = Q ** np.arange(n, -1, -1, dtype=np.int64)
    pivot = np.argmax(arr != 0, axis=1)
    offs = np.array(_rank_offsets(n, Q), dtype=np.int64)
    total = arr @ weights
    return offs[pivot] + total - weights[pivot]


# -- linear algebra over F_{q^2} -------------------------------------------


def rref(rows, ctx):
    """Reduced row echelon form; returns (nonzero rows as tuples, pivot cols)."""
    work = [list(r) for r in rows]
    if not work:
        return (), []
    ncols = len(work[0])
    piv = 0
    pivots = []
    for col in range(ncols):
        src = next((r for r in range(piv, len(work)) if work[r][col] != 0), None)
        if src is None:
            continue
        work[piv], work[src] = work[src], work[piv]
        inv = ctx.inv(work[piv][col])
        work[piv] = [ctx.mul(inv, x) for x in work[piv]]
        for r in range(len(work)):
            if r != piv and work[r][col] != 0:
                f = work[r][col]
                work[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(work[r], work[piv])]
        pivots.append(col)
        piv += 1
        if piv == len(work):
            break
    return tuple(tuple(r) for r in work[:piv]), pivots


def matrix_rank(rows, ctx):
    return len(rref(rows, ctx)[0])


def nullspace(rows, ctx, ncols=None):
    """Canonical RREF basis of {x : rows @ x = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows, ctx)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = ctx.neg(red[i][f])
        basis.append(tuple(vec))
    return rref(basis, ctx)[0] if basis else ()


def subspace_from_rows(rows, ctx, n=None):
    """Build the LinearSubspace spanned by the given row vectors."""
    if n is None:
        n = len(rows[0]) - 1
    basis, _ = rref(rows, ctx)
    return LinearSubspace(basis, n)


def intersect_hyperplanes(hyperplanes, ctx):
    """Common intersection of k >= 1 distinct hyperplanes, as a subspace."""
    if not hyperplanes:
        raise ValueError("need at least one hyperplane")
    covs = [h.covector for h in hyperplanes]
    if len(set(covs)) != len(covs):
        raise ValueError("hyperplanes must be distinct")
    n = len(covs[0]) - 1
    return LinearSubspace(nullspace(covs, ctx), n)


def membership(point, subspace, ctx):
    """True iff the point lies in the row space of the subspace basis."""
    if subspace.dim < 0:
        return False
    vec = list(point.coords)
    for row in subspace.basis:
        p = next(i for i, v in enumerate(row) if v != 0)
        if vec[p] != 0:
            f = vec[p]
            vec = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(vec, row)]
    return all(v == 0 for v in vec)


def hyperplanes_through(point, ctx):
    """Yield the (q^{2n}-1)/(q^2-1) hyperplanes containing the point."""
    n = point.n
    basis = nullspace([point.coords], ctx)
    for coeff in enumerate_points(n - 1, ctx):
        cov = [0] * (n + 1)
        for c, row in zip(coeff.coords, basis):
            if c:
                cov = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(cov, row)]
        yield Hyperplane(normalize(cov, ctx))


def pencil_through(subspace, ctx):
    """The q^2+1 hyperplanes containing a codimension-2 subspace, sorted in
    canonical covector order."""
    n = subspace.n
    if subspace.dim != n - 2:
        raise WrongDimension(f"pencil needs dim {n - 2}, got {subspace.dim}")
    duals = nullspace([list(r) for r in subspace.basis], ctx)
    assert len(duals) == 2
    r1, r2 = duals
    members = [r2] + [
        tuple(ctx.add(a, ctx.mul(b, x)) for a, x in zip(r1, r2)) for b in range(ctx.order)
    ]
    members = [normalize(m, ctx) for m in members]
    members.sort(key=lambda cov: point_rank(cov, ctx))
    return [Hyperplane(m) for m in members]


def subspace_points(subspace, ctx):
    """All points of the subspace, canonical representatives."""
    m = subspace.dim
    if m < 0:
        return []
    pts = []
    for coeff in enumerate_points(m, ctx):
        vec = [0] * (subspace.n + 1)
        for c, row in zip(coeff.coords, subspace.basis):
            if c:
                vec = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(vec, row)]
        pts.append(ProjPoint(normalize(vec, ctx)))
    return pts


def subspace_point_array(subspace, ctx):
    """Vectorized subspace_points: (M, n+1) uint8 array of representatives
    (not individually normalized; classes are distinct)."""
    m = subspace.dim
    if m < 0:
        return np.zeros((0, subspace.n + 1), dtype=np.uint8)
    coeffs = point_array(m, ctx)
    out = np.zeros((coeffs.shape[0], subspace.n + 1), dtype=np.uint8)
    for i, row in enumerate(subspace.basis):
        col = coeffs[:, i]
        for j, r in enumerate(row):
            if r:
                out[:, j] = ctx.vadd(out[:, j], ctx.vscale(r, col))
    return out


def random_subspace(n, m, ctx, rng):
    """Uniformly-seeded subspace of dimension m in P^n (full-rank resampling)."""
    while True:
        rows = rng.integers(0, ctx.order, size=(m + 1, n + 1))
        rows = [tuple(int(x) for x in r) for r in rows]
        basis, _ = rref(rows, ctx)
        if len(basis) == m + 1:
            return LinearSubspace(basis, n)
