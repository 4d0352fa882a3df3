"""Cubic hypersurfaces and their intersections with the Hermitian variety.

Unions of three hyperplanes are the central objects: their intersection
count with the variety is assembled exactly from section classifications by
inclusion-exclusion (the pencil case uses sum(sections) - 2*common, the
codimension-3 case subtracts the three pairwise sections and adds the triple
one back), with full point enumeration kept as an independent oracle.

Degree is kept parametric (monomials of any fixed degree d) so the affine
section-bound checker can exercise d = 2 as well; only the d = 3 maxima
carry closed formulas.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    DuplicateHyperplanes,
    InsufficientPencilMembers,
    OutOfRange,
    PreconditionViolated,
)
from .hermitian import (
    DEFAULT_POINT_BUDGET,
    _CHUNK,
    classify_hyperplane,
    classify_section,
    eval_form_at,
    nondegenerate_count,
    section_count,
)
from .projgeom import (
    Hyperplane,
    LinearSubspace,
    enumerate_points,
    intersect_hyperplanes,
    normalize,
    nullspace,
    num_points,
    pencil_through,
    point_array,
    point_rank,
    rref,
    subspace_point_array,
)


@dataclass(frozen=True)
class Hypersurface:
    """Homogeneous form of fixed degree, as a sorted monomial table.

    ``monomials`` is a tuple of (exponent_tuple, coeff) pairs in descending
    graded-lex order with the leading coefficient scaled to 1 (projective
    canonical form).
    """

    monomials: tuple
    n: int
    degree: int


def make_hypersurface(coeffs, n, degree, ctx):
    """Build the canonical Hypersurface from an exponent->coefficient map."""
    items = []
    for exp, c in coeffs.items():
        if c == 0:
            continue
        assert len(exp) == n + 1 and sum(exp) == degree and min(exp) >= 0
        items.append((tuple(exp), c))
    if not items:
        raise ValueError("zero polynomial does not define a hypersurface")
    items.sort(key=lambda t: t[0], reverse=True)
    lead = items[0][1]
    if lead != 1:
        inv = ctx.inv(lead)
        items = [(e, ctx.mul(inv, c)) for e, c in items]
    return Hypersurface(tuple(items), n, degree)


def monomial_exponents(n, degree):
    """All exponent tuples of the given degree, descending graded-lex."""
    out = set()
    for combo in itertools.combinations_with_replacement(range(n + 1), degree):
        exp = [0] * (n + 1)
        for i in combo:
            exp[i] += 1
        out.add(tuple(exp))
    return sorted(out, reverse=True)


def random_hypersurface(n, degree, ctx, rng):
    """Uniform coefficients over F_{q^2}, zero polynomial rejected."""
    exps = monomial_exponents(n, degree)
    while True:
        cs = rng.integers(0, ctx.order, size=len(exps))
        if cs.any():
            return make_hypersurface(
                {e: int(c) for e, c in zip(exps, cs)}, n, degree, ctx
            )


def _pmul(A, B, ctx):
    out = {}
    for ea, ca in A.items():
        for eb, cb in B.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = ctx.mul(ca, cb)
            if c:
                prev = out.get(e, 0)
                s = ctx.add(prev, c)
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
    return out


def _as_dict(C):
    return {e: c for e, c in C.monomials}


def expand_product(hyperplanes, ctx):
    """The hypersurface cut out by the product of the linear forms."""
    n = hyperplanes[0].n
    acc = None
    for h in hyperplanes:
        lin = {
            tuple(int(i == j) for j in range(n + 1)): c
            for i, c in enumerate(h.covector)
            if c
        }
        acc = lin if acc is None else _pmul(acc, lin, ctx)
    return make_hypersurface(acc, n, len(hyperplanes), ctx)


def evaluate_poly(C, coords, ctx):
    acc = 0
    for exp, c in C.monomials:
        t = c
        for x, e in zip(coords, exp):
            if e:
                if x == 0:
                    t = 0
                    break
                t = ctx.mul(t, ctx.pow(x, e))
        if t:
            acc = ctx.add(acc, t)
    return acc


def eval_poly_at(C, pts, ctx):
    """Vectorized values of the form at each row of a point-index array."""
    acc = np.zeros(len(pts), dtype=np.uint8)
    for exp, c in C.monomials:
        col = None
        for i, e in enumerate(exp):
            for _ in range(e):
                col = pts[:, i] if col is None else ctx.vmul(col, pts[:, i])
        term = col if c == 1 else ctx.vscale(c, col)
        acc = ctx.vadd(acc, term)
    return acc


def restrict_poly(C, basis, ctx):
    """Substitute the parametrization x = sum(y_u * basis_u) into the form;
    None when the restriction is the zero polynomial."""
    m1 = len(basis)
    # linear forms x_i = sum_u basis[u][i] y_u, as dicts over y-exponents
    unit = tuple([0] * m1)
    coord_forms = []
    for i in range(len(basis[0])):
        d = {}
        for u in range(m1):
            c = basis[u][i]
            if c:
                e = tuple(int(v == u) for v in range(m1))
                d[e] = c
        coord_forms.append(d)
    out = {}
    for exp, c in C.monomials:
        term = {unit: c}
        dead = False
        for i, e in enumerate(exp):
            for _ in range(e):
                if not coord_forms[i]:
                    dead = True
                    break
                term = _pmul(term, coord_forms[i], ctx)
            if dead or not term:
                dead = True
                break
        if dead:
            continue
        for e, cc in term.items():
            prev = out.get(e, 0)
            s = ctx.add(prev, cc)
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    if not out:
        return None
    return make_hypersurface(out, m1 - 1, C.degree, ctx)


# -- enumeration ------------------------------------------------------------


def intersect_count_enum(C, f, budget=DEFAULT_POINT_BUDGET, workers=1):
    """|V(C) meet V(f)| by scanning all points of P^n (chunked, vectorized)."""
    ctx = f.ctx
    N = num_points(f.n, ctx.q)
    if N > budget:
        raise BudgetExceeded(N, budget)
    pts = point_array(f.n, ctx)
    total = 0
    for a in range(0, N, _CHUNK):
        b = min(a + _CHUNK, N)
        block = pts[a:b]
        on_c = eval_poly_at(C, block, ctx) == 0
        if on_c.any():
            on_f = eval_form_at(f, block) == 0
            total += int(np.count_nonzero(on_c & on_f))
    return total


# -- arrangements -----------------------------------------------------------


@dataclass(frozen=True)
class Arrangement:
    """An ordered triple of distinct hyperplanes with its tangency pattern
    and the section type of the common intersection."""

    hyperplanes: tuple
    tangency: tuple
    pi_section: object  # SectionType of the common intersection
    n: int
    q: int

    def to_json_dict(self, count=None):
        d = {
            "n": self.n,
            "q": self.q,
            "covectors": [list(h.covector) for h in self.hyperplanes],
            "tangency": list(self.tangency),
            "pi_section": {"v": self.pi_section.v, "s": self.pi_section.s},
        }
        if count is not None:
            d["count"] = count
        return d


@dataclass(frozen=True)
class IntersectionReport:
    count: int
    method: str  # "inclusion_exclusion" | "enumeration"
    breakdown: tuple  # (("per_hyperplane", (...)), ...) as sorted pairs


def arrangement(hyperplanes, f):
    """Attach tangency and common-section metadata to a hyperplane triple."""
    covs = [h.covector for h in hyperplanes]
    if len(set(covs)) != len(covs):
        raise DuplicateHyperplanes("arrangement hyperplanes must be distinct")
    ctx = f.ctx
    tang = tuple(classify_hyperplane(f, h).kind for h in hyperplanes)
    common = intersect_hyperplanes(hyperplanes, ctx)
    st = classify_section(f, common)
    return Arrangement(tuple(hyperplanes), tang, st, f.n, ctx.q)


def intersect_count_arrangement(arr, f):
    """Exact |union of the three hyperplanes meet V(f)| from section
    classifications only (no point enumeration)."""
    ctx = f.ctx
    q = ctx.q
    hyps = arr.hyperplanes
    if len(set(h.covector for h in hyps)) != len(hyps):
        raise DuplicateHyperplanes("arrangement hyperplanes must be distinct")
    per_hyp = tuple(
        section_count(classify_section(f, intersect_hyperplanes([h], ctx)), q)
        for h in hyps
    )
    common = intersect_hyperplanes(hyps, ctx)
    codim = f.n - common.dim
    if codim == 2:
        pi_count = section_count(classify_section(f, common), q)
        count = sum(per_hyp) - 2 * pi_count
        breakdown = (
            ("common", pi_count),
            ("per_hyperplane", per_hyp),
        )
    else:
        pair_counts = []
        for i, j in itertools.combinations(range(len(hyps)), 2):
            sub = intersect_hyperplanes([hyps[i], hyps[j]], ctx)
            pair_counts.append(section_count(classify_section(f, sub), q))
        triple = section_count(classify_section(f, common), q)
        count = sum(per_hyp) - sum(pair_counts) + triple
        breakdown = (
            ("per_hyperplane", per_hyp),
            ("per_pair", tuple(pair_counts)),
            ("triple", triple),
        )
    return IntersectionReport(count, "inclusion_exclusion", breakdown)


# -- maxima and extremal configurations --------------------------------------


def max_cubic_intersection(n, q):
    """Largest |cubic meet variety| over cubic hypersurfaces in P^n
    (3 |U_{n-1}| - 2 |U_{n-2}| for even n, (3q^2-2) |U_{n-2}| + 3 for odd),
    proved to be the maximum for q >= 7."""
    if n < 4:
        raise OutOfRange(f"n={n} must be >= 4")
    if n % 2 == 0:
        return 3 * nondegenerate_count(n - 1, q) - 2 * nondegenerate_count(n - 2, q)
    return (3 * q * q - 2) * nondegenerate_count(n - 2, q) + 3


def all_tangent_pencil_value(n, q):
    """Count for three tangent pencil members over a line-vertex common
    section, for even n; always below max_cubic_intersection."""
    if n < 4 or n % 2:
        raise OutOfRange(f"n={n} must be even and >= 4")
    val = (q ** (2 * n - 3) * (3 * q * q - 2) - q**n * (q - 1) - 1) // (q * q - 1)
    assert val < max_cubic_intersection(n, q)
    return val


def build_extremal(f, scan_limit=64):
    """Deterministically build the extremal candidate: three hyperplanes
    through a common codimension-2 space with non-degenerate section, all
    tangent for odd n and all non-tangent for even n.

    Candidate spaces are intersections of pairs of non-tangent hyperplanes
    taken in canonical order; each non-degenerate candidate's pencil is
    scanned for three members of the required tangency (smallest canonical
    covectors win).  If every scanned pencil falls short the failure is
    reported, never silently relaxed.
    """
    ctx = f.ctx
    n = f.n
    if n < 4:
        raise OutOfRange(f"n={n} must be >= 4")
    want = "tangent" if n % 2 else "non_tangent"
    non_tangent = []
    seen = set()
    scanned = []
    for P in enumerate_points(n, ctx):
        h = Hyperplane(P.coords)
        if classify_hyperplane(f, h).kind != "non_tangent":
            continue
        for prev in non_tangent:
            sub = intersect_hyperplanes([prev, h], ctx)
            if sub in seen:
                continue
            seen.add(sub)
            if classify_section(f, sub).v != -1:
                continue
            pencil = pencil_through(sub, ctx)
            members = [
                m for m in pencil if classify_hyperplane(f, m).kind == want
            ]
            if len(members) >= 3:
                return arrangement(tuple(members[:3]), f)
            scanned.append(len(members))
            if len(scanned) >= scan_limit:
                raise InsufficientPencilMembers(
                    f"none of {len(scanned)} scanned non-degenerate pencils "
                    f"contains 3 {want} hyperplanes "
                    f"(qualifying members seen: {sorted(set(scanned))})"
                )
        non_tangent.append(h)
    raise InsufficientPencilMembers(
        f"exhausted all candidate pencils; none of {len(scanned)} "
        f"non-degenerate pencils contains 3 {want} hyperplanes"
    )



# -- divisibility by linear forms ---------------------------------------------


def divides_linear(covector, C, ctx):
    """Exact test whether the linear form divides the hypersurface.

    Substitutes the pivot variable of the (canonical) covector by the
    negated tail and checks that the result is the zero polynomial.
    """
    n = C.n
    k = next(i for i, v in enumerate(covector) if v != 0)
    assert covector[k] == 1, "covector must be canonical"
    # s = -(sum_{j != k} a_j x_j); substitution x_k -> s
    s_lin = {}
    for j, a in enumerate(covector):
        if j != k and a:
            e = tuple(int(v == j) for v in range(n + 1))
            s_lin[e] = ctx.neg(a)
    s_pow = [{tuple([0] * (n + 1)): 1}, s_lin]
    for _ in range(C.degree - 1):
        s_pow.append(_pmul(s_pow[-1], s_lin, ctx))
    out = {}
    for exp, c in C.monomials:
        t = exp[k]
        rest = tuple(0 if i == k else e for i, e in enumerate(exp))
        if t == 0:
            parts = {rest: c}
        else:
            if not s_pow[t]:
                continue
            parts = {
                tuple(r + s for r, s in zip(rest, se)): ctx.mul(c, sc)
                for se, sc in s_pow[t].items()
            }
        for e, cc in parts.items():
            prev = out.get(e, 0)
            snew = ctx.add(prev, cc)
            if snew:
                out[e] = snew
            elif e in out:
                del out[e]
    return not out


def _probe_plane(C, ctx):
    """A plane (2-dim subspace) on which C restricts to a nonzero form:
    extend the first rational point where C does not vanish to a basis."""
    n = C.n
    base = None
    for P in enumerate_points(n, ctx):
        if evaluate_poly(C, P.coords, ctx) != 0:
            base = P.coords
            break
    assert base is not None, "nonzero cubic cannot vanish at every point"
    rows = [base]
    for i in range(n + 1):
        e = tuple(int(j == i) for j in range(n + 1))
        cand, _ = rref(rows + [e], ctx)
        if len(cand) > len(rows):
            rows = list(cand)
        if len(rows) == 3:
            break
    return tuple(rows)


def linear_factor(C, ctx):
    """First canonical hyperplane covector dividing C, or None.

    Complete by a probe-plane argument: any linear factor L either contains
    the probe plane entirely, or cuts it in a line that must divide the
    restricted ternary form.  Both candidate families are finite and small,
    so scanning them is an exact pruning of the full covector scan.  When the
    restriction has no linear factor, C has none.
    """
    n = C.n
    if n < 3:
        raise OutOfRange("linear-factor search needs n >= 3")
    basis = _probe_plane(C, ctx)
    R = restrict_poly(C, basis, ctx)
    assert R is not None  # the probe plane is chosen through a non-zero point
    line_factors = [
        L.coords
        for L in enumerate_points(2, ctx)
        if divides_linear(L.coords, R, ctx)
    ]
    candidates = set()
    if line_factors:
        # hyperplanes containing the probe plane
        duals = nullspace([list(r) for r in basis], ctx)
        for coeff in enumerate_points(len(duals) - 1, ctx):
            cov = [0] * (n + 1)
            for c, row in zip(coeff.coords, duals):
                if c:
                    cov = [ctx.add(x, ctx.mul(c, y)) for x, y in zip(cov, row)]
            candidates.add(normalize(cov, ctx))
        # hyperplanes whose trace on the plane is one of the line factors:
        # particular solution of B a^T = b plus the kernel of B
        for b in line_factors:
            aug = [list(row) + [b[u]] for u, row in enumerate(basis)]
            red, pivots = rref(aug, ctx)
            part = [0] * (n + 1)
            for r, p in zip(red, pivots):
                part[p] = r[n + 1]
            kern = nullspace([list(r) for r in basis], ctx)
            for coeff in itertools.product(range(ctx.order), repeat=len(kern)):
                cov = list(part)
                for c, row in zip(coeff, kern):
                    if c:
                        cov = [
                            ctx.add(x, ctx.mul(c, y)) for x, y in zip(cov, row)
                        ]
                if any(cov):
                    candidates.add(normalize(cov, ctx))
    hits = [
        cov for cov in candidates if divides_linear(cov, C, ctx)
    ]
    if not hits:
        return None
    hits.sort(key=lambda cov: point_rank(cov, ctx))
    return Hyperplane(hits[0])


# -- affine section bound ------------------------------------------------------


def check_affine_section_bound(C, f, sigma, pi, budget=DEFAULT_POINT_BUDGET):
    """Whether |V(C) meet V(f) meet (sigma minus pi)| <= (d-1)(q+1)q^(2n-6),
    for a hyperplane sigma not inside C and a codim-2 space pi inside both
    C and sigma.  The count is by enumeration of the hyperplane's points."""
    ctx = f.ctx
    n, q, d = f.n, ctx.q, C.degree
    if d > q or n < 3:
        raise PreconditionViolated(f"need degree d={d} <= q={q} and n >= 3")
    sigma_sub = intersect_hyperplanes([sigma], ctx)
    if pi.dim != n - 2:
        raise PreconditionViolated("pi must have codimension 2")
    pi_duals = nullspace([list(r) for r in pi.basis], ctx)
    if any(ctx.dot(sigma.covector, row) != 0 for row in pi.basis):
        raise PreconditionViolated("pi must lie inside sigma")
    if restrict_poly(C, pi.basis, ctx) is not None:
        raise PreconditionViolated("pi must lie inside the hypersurface")
    if restrict_poly(C, sigma_sub.basis, ctx) is None:
        raise PreconditionViolated("sigma must not lie inside the hypersurface")
    N = num_points(n - 1, q)
    if N > budget:
        raise BudgetExceeded(N, budget)
    pts = subspace_point_array(sigma_sub, ctx)
    on_c = eval_poly_at(C, pts, ctx) == 0
    on_f = eval_form_at(f, pts) == 0
    in_pi = np.ones(len(pts), dtype=bool)
    for cov in pi_duals:
        acc = np.zeros(len(pts), dtype=np.uint8)
        for j, a in enumerate(cov):
            if a:
                acc = ctx.vadd(acc, ctx.vscale(a, pts[:, j]))
        in_pi &= acc == 0
    count = int(np.count_nonzero(on_c & on_f & ~in_pi))
    bound = (d - 1) * (q + 1) * q ** (2 * n - 6)
    return count <= bound


def make_affine_bound_instance(n, d, ctx, rng):
    """Construct (C, sigma, pi) meeting the affine-bound preconditions:
    sigma = V(x_0), pi = V(x_0, x_1), C = x_0*G + x_1*H for random forms
    G, H of degree d-1 (resampled until sigma is not inside C)."""
    e0 = tuple(int(i == 0) for i in range(n + 1))
    e1 = tuple(int(i == 1) for i in range(n + 1))
    sigma = Hyperplane(e0)
    pi_basis = tuple(
        tuple(int(j == i) for j in range(n + 1)) for i in range(2, n + 1)
    )
    pi = LinearSubspace(pi_basis, n)
    x0 = {e0: 1}
    x1 = {e1: 1}
    while True:
        G = random_hypersurface(n, d - 1, ctx, rng)
        H = random_hypersurface(n, d - 1, ctx, rng)
        poly = _pmul(x0, _as_dict(G), ctx)
        for e, c in _pmul(x1, _as_dict(H), ctx).items():
            prev = poly.get(e, 0)
            s = ctx.add(prev, c)
            if s:
                poly[e] = s
            elif e in poly:
                del poly[e]
        if not poly:
            continue
        C = make_hypersurface(poly, n, d, ctx)
        sigma_sub = intersect_hyperplanes([sigma], ctx)
        if restrict_poly(C, sigma_sub.basis, ctx) is not None:
            return C, sigma, pi
