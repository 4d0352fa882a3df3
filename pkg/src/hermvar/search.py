"""Exhaustive and statistical experiments over hyperplane arrangements.

The exhaustive triple search walks every unordered triple of hyperplanes.
Counts are assembled from memoized section data: per-hyperplane section
counts (from tangency classification), per-pair section counts keyed by the
common codimension-2 subspace, and triple terms from a dense
plane-x-hyperplane incidence table.  Variety membership is precomputed once
as a dense mask over the canonical point order so that the enumeration
cross-check is a masked popcount.

Codimension-2 subspaces are enumerated directly as reduced-row-echelon dual
lines (two-row RREF matrices of covectors), which visits every pencil
exactly once without deduplication.
"""

import json
import math
import multiprocessing
import time
from dataclasses import dataclass

import numpy as np

from .bounds import cone_counts, cubic_bound_closed
from .cubics import (
    arrangement,
    intersect_count_arrangement,
    linear_factor,
    make_hypersurface,
    max_cubic_intersection,
    monomial_exponents,
)
from .errors import BudgetExceeded
from .hermitian import (
    DEFAULT_POINT_BUDGET,
    classify_hyperplane,
    nondegenerate_count,
    standard_form,
    tangent_hyperplane,
    variety_mask,
)
from .projgeom import (
    Hyperplane,
    ProjPoint,
    enumerate_points,
    num_points,
    point_array,
    point_from_rank,
    point_rank_array,
)

_MEMO_CELL_LIMIT = 50_000_000  # plane x hyperplane table entries


def gaussian_binomial(m, k, Q):
    """Number of k-dim subspaces of an m-dim vector space over a Q-element
    field."""
    num = den = 1
    for i in range(k):
        num *= Q ** (m - i) - 1
        den *= Q ** (k - i) - 1
    return num // den


# -- shared geometry --------------------------------------------------------


def incidence_zero_matrix(n, ctx):
    """Z[i, p] = True iff point p lies on hyperplane i (canonical orders)."""
    pts = point_array(n, ctx)
    N = len(pts)
    Z = np.empty((N, N), dtype=bool)
    blk = max(1, 4_000_000 // N)
    for a in range(0, N, blk):
        b = min(a + blk, N)
        acc = np.zeros((b - a, N), dtype=np.uint8)
        for j in range(n + 1):
            acc = ctx.vadd(acc, ctx.vmul(pts[a:b, j][:, None], pts[None, :, j]))
        Z[a:b] = acc == 0
    return Z


def dual_line_catalog(n, ctx):
    """Member hyperplane ranks of every pencil, one row per codimension-2
    subspace, via direct RREF enumeration of dual lines."""
    Q = ctx.order
    blocks = []
    for c1 in range(n + 1):
        for c2 in range(c1 + 1, n + 1):
            free1 = [j for j in range(c1 + 1, n + 1) if j != c2]
            free2 = [j for j in range(c2 + 1, n + 1)]
            cnt = Q ** (len(free1) + len(free2))
            r1 = np.zeros((cnt, n + 1), dtype=np.uint8)
            r2 = np.zeros((cnt, n + 1), dtype=np.uint8)
            r1[:, c1] = 1
            r2[:, c2] = 1
            t = np.arange(cnt, dtype=np.int64)
            for j in reversed(free2):
                r2[:, j] = t % Q
                t //= Q
            for j in reversed(free1):
                r1[:, j] = t % Q
                t //= Q
            mem = np.empty((cnt, Q + 1), dtype=np.int64)
            mem[:, 0] = point_rank_array(r2, ctx)
            for b in range(Q):
                rows = r1 if b == 0 else ctx.vadd(r1, ctx.vscale(b, r2))
                mem[:, 1 + b] = point_rank_array(rows, ctx)
            blocks.append(mem)
    cat = np.concatenate(blocks)
    assert len(cat) == gaussian_binomial(n + 1, 2, Q)
    return cat


def hyperplane_tangency(n, q):
    """Tangency kind of every canonical hyperplane of P^n (standard form)."""
    f = standard_form(n, _ctx(q))
    kinds = np.empty(num_points(n, q), dtype=bool)  # True = tangent
    for i, P in enumerate(enumerate_points(n, _ctx(q))):
        kinds[i] = classify_hyperplane(f, Hyperplane(P.coords)).kind == "tangent"
    return kinds


def _ctx(q):
    from .field import make_field

    return make_field(q)


@dataclass
class _Geometry:
    n: int
    q: int
    N: int
    Z: np.ndarray  # point-on-hyperplane incidence
    u: np.ndarray  # variety membership mask over points
    tangent: np.ndarray  # per-hyperplane tangency
    S: np.ndarray  # per-hyperplane section counts (from classification)
    planes: np.ndarray  # pencil member ranks per codim-2 subspace
    plane_count: np.ndarray  # section count of each codim-2 subspace


def build_geometry(n, q, budget=DEFAULT_POINT_BUDGET):
    ctx = _ctx(q)
    N = num_points(n, q)
    if N * N > budget:
        raise BudgetExceeded(N * N, budget, what="incidence entries")
    f = standard_form(n, ctx)
    Z = incidence_zero_matrix(n, ctx)
    u = variety_mask(f)
    tangent = hyperplane_tangency(n, q)
    tangent_count = 1 + q * q * nondegenerate_count(n - 2, q)
    S = np.where(tangent, tangent_count, nondegenerate_count(n - 1, q)).astype(
        np.int64
    )
    # classification counts must agree with the masked popcounts, exactly
    enum_S = (Z & u[None, :]).sum(axis=1)
    assert np.array_equal(S, enum_S), "hyperplane section counts disagree"
    planes = dual_line_catalog(n, ctx)
    plane_count = np.empty(len(planes), dtype=np.int64)
    blk = 4096
    Zu = Z & u[None, :]
    for a in range(0, len(planes), blk):
        b = min(a + blk, len(planes))
        rows = Zu[planes[a:b, 0]] & Z[planes[a:b, 1]]
        plane_count[a:b] = rows.sum(axis=1)
    return _Geometry(n, q, N, Z, u, tangent, S, planes, plane_count)


# -- exhaustive triple search -------------------------------------------------


@dataclass
class SearchReport:
    n: int
    q: int
    seed: int
    total_triples: int
    global_max: int
    max_formula_value: int
    reaches_formula_max: bool
    histogram: dict
    argmax_total: int
    argmax_arrangements: list
    argmax_structure: dict
    samples_verified: int
    method_mix: dict
    wall_time_s: float

    def to_json_dict(self):
        return {
            "schema": 1,
            "kind": "triple_search",
            "n": self.n,
            "q": self.q,
            "seed": self.seed,
            "total_triples": self.total_triples,
            "global_max": self.global_max,
            "max_formula_value": self.max_formula_value,
            "reaches_formula_max": self.reaches_formula_max,
            "histogram": [[int(v), int(c)] for v, c in sorted(self.histogram.items())],
            "argmax_total": self.argmax_total,
            "argmax_arrangements": self.argmax_arrangements,
            "argmax_structure": dict(sorted(self.argmax_structure.items())),
            "samples_verified": self.samples_verified,
            "method_mix": self.method_mix,
        }


def exhaustive_triples(
    n,
    q,
    budget=DEFAULT_POINT_BUDGET,
    seed=0,
    verify_samples=1000,
    argmax_limit=1000,
):
    """Exact maximum of |union of three hyperplanes meet variety| over all
    unordered triples, with full histogram and re-verified argmax list."""
    t0 = time.time()
    ctx = _ctx(q)
    N = num_points(n, q)
    total = math.comb(N, 3)
    if total > budget:
        raise BudgetExceeded(total, budget, what="triples")
    geo = build_geometry(n, q, budget=budget)
    n_planes = len(geo.planes)
    if n_planes * N > _MEMO_CELL_LIMIT:
        raise BudgetExceeded(
            n_planes * N, _MEMO_CELL_LIMIT, what="pair/triple memo cells"
        )
    Zu = geo.Z & geo.u[None, :]
    # pair section count and plane id, addressed by hyperplane pair
    P = np.zeros((N, N), dtype=np.int64)
    plane_id = np.zeros((N, N), dtype=np.int32)
    for pid in range(n_planes):
        mem = geo.planes[pid]
        c = geo.plane_count[pid]
        P[np.ix_(mem, mem)] = c
        plane_id[np.ix_(mem, mem)] = pid
    # triple term: points of each plane that lie on hyperplane k and the
    # variety, for every (plane, k)
    plane_ind = np.zeros((N, n_planes), dtype=np.int64)
    for pid in range(n_planes):
        plane_ind[:, pid] = geo.Z[geo.planes[pid, 0]] & geo.Z[geo.planes[pid, 1]]
    Tline = (Zu.astype(np.int64) @ plane_ind).T  # (n_planes, N)

    S = geo.S
    hist_size = int(3 * S.max()) + 2
    hist = np.zeros(hist_size, dtype=np.int64)
    gmax = -1

    def pair_iter():
        for pid in range(n_planes):
            mem = np.sort(geo.planes[pid])
            pc = int(geo.plane_count[pid])
            for a in range(len(mem)):
                for b in range(a + 1, len(mem)):
                    yield pid, pc, int(mem[a]), int(mem[b]), mem[mem > mem[b]]

    for pid, pc, i, j, pencil_tail in pair_iter():
        if j + 1 >= N:
            continue
        base = int(S[i] + S[j]) - pc
        counts = base + S[j + 1 :] - P[i, j + 1 :] - P[j, j + 1 :] + Tline[pid, j + 1 :]
        if len(pencil_tail):
            counts[pencil_tail - (j + 1)] = (
                int(S[i] + S[j]) - 2 * pc + S[pencil_tail]
            )
        hist += np.bincount(counts, minlength=hist_size)
        m = int(counts.max())
        if m > gmax:
            gmax = m

    total_check = int(hist.sum())
    assert total_check == total, "histogram does not cover every triple"

    # second pass: collect every argmax triple
    argmax = []
    for pid, pc, i, j, pencil_tail in pair_iter():
        if j + 1 >= N:
            continue
        counts = (
            int(S[i] + S[j])
            - pc
            + S[j + 1 :]
            - P[i, j + 1 :]
            - P[j, j + 1 :]
            + Tline[pid, j + 1 :]
        )
        if len(pencil_tail):
            counts[pencil_tail - (j + 1)] = (
                int(S[i] + S[j]) - 2 * pc + S[pencil_tail]
            )
        for k in np.nonzero(counts == gmax)[0]:
            argmax.append((i, j, int(k) + j + 1))

    f = standard_form(n, ctx)

    def hyp(rank):
        return Hyperplane(point_from_rank(rank, n, ctx).coords)

    structure = {}
    arr_dicts = []
    for i, j, k in argmax:
        enum = int(np.count_nonzero((geo.Z[i] | geo.Z[j] | geo.Z[k]) & geo.u))
        assert enum == gmax, "argmax re-verification by enumeration failed"
        arr = arrangement((hyp(i), hyp(j), hyp(k)), f)
        label = (
            f"{arr.pi_section.label}|" + ",".join(sorted(arr.tangency))
        )
        structure[label] = structure.get(label, 0) + 1
        if len(arr_dicts) < argmax_limit:
            arr_dicts.append(arr.to_json_dict(count=enum))

    # sampled three-way verification: internal assembly, classification
    # formulas, and masked popcount enumeration
    rng = np.random.default_rng(seed)
    verified = 0
    for _ in range(verify_samples):
        i, j, k = sorted(int(x) for x in rng.choice(N, size=3, replace=False))
        pid = int(plane_id[i, j])
        in_pencil = k in set(int(x) for x in geo.planes[pid])
        if in_pencil:
            internal = int(S[i] + S[j] + S[k]) - 2 * int(geo.plane_count[pid])
        else:
            internal = (
                int(S[i] + S[j] + S[k])
                - int(P[i, j] + P[i, k] + P[j, k])
                + int(Tline[pid, k])
            )
        rep = intersect_count_arrangement(arrangement((hyp(i), hyp(j), hyp(k)), f), f)
        enum = int(np.count_nonzero((geo.Z[i] | geo.Z[j] | geo.Z[k]) & geo.u))
        assert internal == rep.count == enum, (
            f"triple count mismatch at {(i, j, k)}: "
            f"{internal} / {rep.count} / {enum}"
        )
        verified += 1

    mf = max_cubic_intersection(n, q)
    return SearchReport(
        n=n,
        q=q,
        seed=seed,
        total_triples=total,
        global_max=gmax,
        max_formula_value=mf,
        reaches_formula_max=bool(gmax >= mf),
        histogram={int(v): int(c) for v, c in enumerate(hist) if c},
        argmax_total=len(argmax),
        argmax_arrangements=arr_dicts,
        argmax_structure=structure,
        samples_verified=verified,
        method_mix={
            "formula_fraction": 1.0,
            "enumeration_verified": len(argmax) + verified,
        },
        wall_time_s=time.time() - t0,
    )


# -- pencil scans ------------------------------------------------------------


@dataclass
class PencilScanReport:
    n: int
    q: int
    pencils: int
    best_count: int
    max_formula_value: int
    best_is_formula_max: bool
    best_structures: dict
    tangent_members_by_section: dict

    def to_json_dict(self):
        return {
            "schema": 1,
            "kind": "pencil_scan",
            "n": self.n,
            "q": self.q,
            "pencils": self.pencils,
            "best_count": self.best_count,
            "max_formula_value": self.max_formula_value,
            "best_is_formula_max": self.best_is_formula_max,
            "best_structures": dict(sorted(self.best_structures.items())),
            "tangent_members_by_section": dict(
                sorted(self.tangent_members_by_section.items())
            ),
        }


def pencil_triples_scan(n, q, budget=DEFAULT_POINT_BUDGET):
    """Best triple within every pencil (three hyperplanes through a common
    codimension-2 subspace), exhaustively over all such subspaces.

    This covers the stratum where the global maximum lives and stays
    feasible where the full triple space does not (the pencil count grows
    like N^2, not N^3).
    """
    geo = build_geometry(n, q, budget=budget)
    u_count, cone0, cone1 = cone_counts(n, q)
    label_of = {u_count: "U", cone0: "Pi0U", cone1: "Pi1U"}
    S_members = geo.S[geo.planes]  # (n_planes, q^2+1)
    top3 = np.sort(S_members, axis=1)[:, -3:].sum(axis=1)
    best_per_plane = top3 - 2 * geo.plane_count
    best = int(best_per_plane.max())
    tmem = geo.tangent[geo.planes].sum(axis=1)  # tangent members per pencil
    structures = {}
    for pid in np.nonzero(best_per_plane == best)[0]:
        pc = int(geo.plane_count[pid])
        t = int(tmem[pid])
        structures_key = f"{label_of[pc]}|tangent_members={t}"
        structures[structures_key] = structures.get(structures_key, 0) + 1
    tangent_by_section = {}
    for pc, t in zip(geo.plane_count, tmem):
        key = f"{label_of[int(pc)]}|tangent_members={int(t)}"
        tangent_by_section[key] = tangent_by_section.get(key, 0) + 1
    mf = max_cubic_intersection(n, q)
    return PencilScanReport(
        n=n,
        q=q,
        pencils=len(geo.planes),
        best_count=best,
        max_formula_value=mf,
        best_is_formula_max=bool(best == mf),
        best_structures=structures,
        tangent_members_by_section=tangent_by_section,
    )


def pairwise_section_scan(n, q, budget=DEFAULT_POINT_BUDGET):
    """Exhaustive pairwise-section audit over every hyperplane pair, grouped
    by pencil: for each codimension-2 subspace, the section count and the
    tangent/non-tangent split of its pencil members.

    Returns (geometry, per-plane tangent member counts); the standing
    exclusions are:
      * a section of line-vertex shape forbids pairs with a non-tangent
        member (so at most one non-tangent hyperplane in that pencil);
      * a section of point-vertex shape forbids tangent-tangent pairs (at
        most one tangent member).
    """
    geo = build_geometry(n, q, budget=budget)
    tmem = geo.tangent[geo.planes].sum(axis=1)
    return geo, tmem


# -- incidence double counting -------------------------------------------------


@dataclass
class IncidenceReport:
    n: int
    q: int
    variety_points: int
    hyperplanes_total: int
    tangent_hyperplanes: int
    non_tangent_hyperplanes: int
    hyperplanes_through_point: int
    point_tangent_count: int
    tangent_count_uniform: bool
    incidence_left: int
    incidence_right: int

    def to_json_dict(self):
        return {
            "schema": 1,
            "kind": "incidence",
            "n": self.n,
            "q": self.q,
            "variety_points": self.variety_points,
            "hyperplanes_total": self.hyperplanes_total,
            "tangent_hyperplanes": self.tangent_hyperplanes,
            "non_tangent_hyperplanes": self.non_tangent_hyperplanes,
            "hyperplanes_through_point": self.hyperplanes_through_point,
            "point_tangent_count": self.point_tangent_count,
            "tangent_count_uniform": self.tangent_count_uniform,
            "incidence_left": self.incidence_left,
            "incidence_right": self.incidence_right,
        }


def incidence_double_count(n, q, budget=DEFAULT_POINT_BUDGET):
    """Exhaustive incidence verification around tangency.

    Checks, by direct enumeration: every variety point lies on the same
    number of hyperplanes; the tangent ones among them number
    q^2 |U_{n-2}| + 1; tangent hyperplanes are in bijection with variety
    points; and the point/non-tangent-hyperplane incidences sum identically
    from both sides.
    """
    ctx = _ctx(q)
    N = num_points(n, q)
    if N * N > budget:
        raise BudgetExceeded(N * N, budget, what="incidence entries")
    f = standard_form(n, ctx)
    geo_Z = incidence_zero_matrix(n, ctx)
    u = variety_mask(f)
    upts_idx = np.nonzero(u)[0]
    pts = point_array(n, ctx)
    upts = pts[upts_idx]
    # tangent covectors, one per variety point
    covs = []
    for row in upts:
        covs.append(
            tangent_hyperplane(f, ProjPoint(tuple(int(x) for x in row))).covector
        )
    assert len(set(covs)) == len(covs), "tangent map must be injective"
    cov_arr = np.array(covs, dtype=np.uint8)
    # tangency incidence among variety points: T[a, b] = 1 iff point b lies
    # on the tangent hyperplane at point a
    nU = len(upts)
    tangent_through = np.zeros(nU, dtype=np.int64)
    blk = max(1, 4_000_000 // nU)
    for a in range(0, nU, blk):
        b = min(a + blk, nU)
        acc = np.zeros((b - a, nU), dtype=np.uint8)
        for j in range(n + 1):
            acc = ctx.vadd(acc, ctx.vmul(cov_arr[a:b, j][:, None], upts[None, :, j]))
        tangent_through += (acc == 0).sum(axis=0)
    uniform = bool((tangent_through == tangent_through[0]).all())
    t_count = int(tangent_through[0])
    # hyperplane side
    kinds = hyperplane_tangency(n, q)
    n_tangent = int(kinds.sum())
    hyps_through = geo_Z[:, upts_idx].sum(axis=0)
    assert (hyps_through == hyps_through[0]).all()
    left = int(((hyps_through - tangent_through)).sum())
    right = int((geo_Z[~kinds][:, upts_idx].sum(axis=1)).sum())
    return IncidenceReport(
        n=n,
        q=q,
        variety_points=nU,
        hyperplanes_total=N,
        tangent_hyperplanes=n_tangent,
        non_tangent_hyperplanes=N - n_tangent,
        hyperplanes_through_point=int(hyps_through[0]),
        point_tangent_count=t_count,
        tangent_count_uniform=uniform,
        incidence_left=left,
        incidence_right=right,
    )


# -- random cubic sampling -------------------------------------------------------


@dataclass
class RandomCubicReport:
    n: int
    q: int
    trials: int
    seed: int
    threshold: int
    histogram: dict
    retained: int
    discarded_divisible: list
    exceedances: list
    max_count: int
    threshold_asserted: bool  # the q >= 7 regime where exceedance is failure
    wall_time_s: float

    def to_json_dict(self):
        return {
            "schema": 1,
            "kind": "random_cubics",
            "n": self.n,
            "q": self.q,
            "trials": self.trials,
            "seed": self.seed,
            "threshold": self.threshold,
            "histogram": [[int(v), int(c)] for v, c in sorted(self.histogram.items())],
            "retained": self.retained,
            "discarded_divisible": self.discarded_divisible,
            "exceedances": self.exceedances,
            "max_count": self.max_count,
            "threshold_asserted": self.threshold_asserted,
        }


_RC_STATE = {}


def _monomial_matrix(n, ctx):
    """Rows of monomial values over all canonical points, one row per
    degree-3 exponent tuple (descending graded-lex)."""
    exps = monomial_exponents(n, 3)
    pts = point_array(n, ctx)
    M = np.empty((len(exps), len(pts)), dtype=np.uint8)
    for r, exp in enumerate(exps):
        col = None
        for i, e in enumerate(exp):
            for _ in range(e):
                col = pts[:, i] if col is None else ctx.vmul(col, pts[:, i])
        M[r] = col
    return exps, M


def _cubic_trial(t):
    """One seeded trial; reads the fork-shared state."""
    st = _RC_STATE
    ctx = st["ctx"]
    n = st["n"]
    exps = st["exps"]
    rng = np.random.default_rng(np.random.SeedSequence((st["seed"], t)))
    while True:
        cs = rng.integers(0, ctx.order, size=len(exps))
        if cs.any():
            break
    C = make_hypersurface(
        {e: int(c) for e, c in zip(exps, cs)}, n, 3, ctx
    )
    lf = linear_factor(C, ctx)
    if lf is not None:
        return (t, "divisible", list(lf.covector), None)
    M = st["M"]
    u = st["u"]
    acc = np.zeros(M.shape[1], dtype=np.uint8)
    coeff = dict(C.monomials)
    for r, exp in enumerate(exps):
        c = coeff.get(exp, 0)
        if c == 0:
            continue
        term = M[r] if c == 1 else ctx.vscale(c, M[r])
        acc = ctx.vadd(acc, term)
    count = int(np.count_nonzero((acc == 0) & u))
    mono = [[list(e), int(c)] for e, c in C.monomials]
    return (t, "counted", count, mono)


def random_cubic_sample(
    n, q, trials, seed, workers=1, budget=DEFAULT_POINT_BUDGET
):
    """Sample uniformly random cubics, discard those divisible by a linear
    form, and compare each retained intersection count against the
    cubic-split threshold.  Exceedances at q >= 7 are counterexample
    candidates and carry the full polynomial."""
    t0 = time.time()
    ctx = _ctx(q)
    N = num_points(n, q)
    if N > budget:
        raise BudgetExceeded(N, budget)
    f = standard_form(n, ctx)
    exps, M = _monomial_matrix(n, ctx)
    u = variety_mask(f)
    _RC_STATE.clear()
    _RC_STATE.update(
        {"ctx": ctx, "n": n, "exps": exps, "M": M, "u": u, "seed": seed}
    )
    if workers > 1:
        with multiprocessing.get_context("fork").Pool(workers) as pool:
            results = pool.map(_cubic_trial, range(trials), chunksize=1)
    else:
        results = [_cubic_trial(t) for t in range(trials)]
    results.sort(key=lambda r: r[0])
    threshold = cubic_bound_closed(n, q)
    hist = {}
    discarded = []
    exceed = []
    max_count = -1
    for t, kind, payload, mono in results:
        if kind == "divisible":
            discarded.append({"trial": t, "linear_factor": payload})
            continue
        count = payload
        hist[count] = hist.get(count, 0) + 1
        max_count = max(max_count, count)
        if count > threshold:
            exceed.append({"trial": t, "count": count, "monomials": mono})
    return RandomCubicReport(
        n=n,
        q=q,
        trials=trials,
        seed=seed,
        threshold=threshold,
        histogram=hist,
        retained=trials - len(discarded),
        discarded_divisible=discarded,
        exceedances=exceed,
        max_count=max_count,
        threshold_asserted=q >= 7,
        wall_time_s=time.time() - t0,
    )


# -- serialization ---------------------------------------------------------------


def report_json(report, path=None):
    """Deterministic JSON text for any report object with to_json_dict."""
    text = json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def histogram_csv(histogram, path):
    with open(path, "w") as fh:
        fh.write("value,count\n")
        for v in sorted(histogram):
            fh.write(f"{v},{histogram[v]}\n")
