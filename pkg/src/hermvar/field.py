"""Exact arithmetic in F_q and F_{q^2} via dense lookup tables.

An element of F_{q^2} is an integer index in ``0 .. q^2 - 1``.  Writing
q = p^e, the field F_{q^2} = F_p[x]/(f) is built from the lexicographically
smallest monic irreducible polynomial f of degree 2e over F_p, and the index
of an element with coefficient vector (c_0, c_1, ...) is sum(c_i * p^i).
Index 0 is the zero element and index 1 is the multiplicative identity,
for every q.  The construction is fully deterministic, so indices are
reproducible across runs and machines.

The subfield F_q sits inside F_{q^2} as the fixed points of the Frobenius
map x -> x^q; its elements are scattered indices identified by
``subfield_mask``.
"""

import functools

import numpy as np

from .errors import ExceedsCap, NotPrimePower

DEFAULT_CAP = 13


def is_prime_power(q):
    """Return (p, e) with q = p^e, or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q and p < q:
            break
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return (q, 1)


def _poly_mul_mod(a, b, p, modulus):
    """Multiply coefficient vectors a, b over F_p modulo the monic polynomial
    x^m + modulus (modulus holds the low-order coefficients)."""
    m = len(modulus)
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce: x^m == -modulus
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * modulus[j]) % p
    return prod[:m] + [0] * (m - len(prod))


def _poly_rem(num, den, p):
    """Remainder of polynomial division over F_p (coefficient lists, low first)."""
    num = list(num)
    dd = len(den) - 1
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
        dd -= 1
    inv_lead = pow(den[-1], p - 2, p)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            f = (c * inv_lead) % p
            for j in range(dd + 1):
                num[k - dd + j] = (num[k - dd + j] - f * den[j]) % p
    return num[:dd] if dd > 0 else []


def _is_irreducible(coeffs, p):
    """Trial division by all monic polynomials of degree <= m//2."""
    m = len(coeffs) - 1
    for d in range(1, m // 2 + 1):
        for t in range(p**d):
            den = []
            tt = t
            for _ in range(d):
                den.append(tt % p)
                tt //= p
            den.append(1)
            if not any(_poly_rem(coeffs, den, p)):
                return False
    return True


def _smallest_irreducible(p, m):
    """Lexicographically smallest monic irreducible of degree m over F_p,
    ordering candidates by the base-p value of their low coefficient vector."""
    for t in range(p**m):
        low = []
        tt = t
        for _ in range(m):
            low.append(tt % p)
            tt //= p
        if _is_irreducible(low + [1], p):
            return tuple(low)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """Immutable arithmetic context for F_{q^2} with its subfield F_q.

    All tables are dense numpy arrays indexed by element index; the context
    is safe to share across threads and forked workers.
    """

    def __init__(self, q, cap=DEFAULT_CAP):
        pe = is_prime_power(q)
        if pe is None:
            raise NotPrimePower(f"q={q} is not a prime power")
        if q > cap:
            raise ExceedsCap(f"q={q} above cap {cap}")
        self.q = q
        self.p, self.e = pe
        self.order = q * q
        m = 2 * self.e
        self.modulus = _smallest_irreducible(self.p, m)
        self._build_tables(m)
        self._check_invariants()

    def _build_tables(self, m):
        p, Q = self.p, self.order

        digits = np.zeros((Q, m), dtype=np.int64)
        idx = np.arange(Q)
        for j in range(m):
            digits[:, j] = idx % p
            idx = idx // p
        weights = p ** np.arange(m)

        summed = (digits[:, None, :] + digits[None, :, :]) % p
        self.add_table = (summed @ weights).astype(np.uint8)
        self.neg_table = (((-digits) % p) @ weights).astype(np.uint8)

        # exp/log from a multiplicative generator found by scalar search
        mod = list(self.modulus)
        exp = [1]
        gen = None
        for g in range(2, Q):
            gd = [int(x) for x in digits[g]]
            cur = gd
            powers = [1, g]
            while True:
                cur = _poly_mul_mod(cur, gd, p, mod)
                val = int(sum(c * w for c, w in zip(cur, weights)))
                if val == 1:
                    break
                powers.append(val)
            if len(powers) == Q - 1:
                gen = g
                exp = powers
                break
        assert gen is not None, "no generator found"
        self.generator = gen
        exp = np.array(exp, dtype=np.int64)
        log = np.zeros(Q, dtype=np.int64)
        log[exp] = np.arange(Q - 1)
        self._exp, self._log = exp, log

        mul = np.zeros((Q, Q), dtype=np.uint8)
        nz = np.arange(1, Q)
        mul[1:, 1:] = exp[(log[nz][:, None] + log[nz][None, :]) % (Q - 1)].astype(
            np.uint8
        )
        self.mul_table = mul

        inv = np.zeros(Q, dtype=np.uint8)
        inv[nz] = exp[(-log[nz]) % (Q - 1)].astype(np.uint8)
        self.inv_table = inv

        frob = np.zeros(Q, dtype=np.uint8)
        frob[nz] = exp[(self.q * log[nz]) % (Q - 1)].astype(np.uint8)
        self.frob_table = frob

        ar = np.arange(Q)
        self.norm_table = self.mul_table[ar, frob[ar]]
        self.trace_table = self.add_table[ar, frob[ar]]
        self.subfield_mask = frob == ar

    def _check_invariants(self):
        Q, q = self.order, self.q
        fr = self.frob_table
        assert np.array_equal(fr[fr], np.arange(Q)), "Frobenius not an involution"
        assert int(self.subfield_mask.sum()) == q, "subfield size wrong"
        assert self.subfield_mask[self.norm_table].all(), "norm leaves subfield"
        assert self.subfield_mask[self.trace_table].all(), "trace leaves subfield"
        # norm maps nonzero elements onto the q-1 nonzero subfield elements,
        # each hit exactly q+1 times
        counts = np.bincount(self.norm_table[1:], minlength=Q)
        sub_nz = self.subfield_mask & (np.arange(Q) != 0)
        assert (counts[sub_nz] == q + 1).all(), "norm not (q+1)-to-1"
        assert counts[~sub_nz].sum() == 0

    # -- scalar operations ------------------------------------------------

    def add(self, a, b):
        return int(self.add_table[a, b])

    def sub(self, a, b):
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a, b):
        return int(self.mul_table[a, b])

    def neg(self, a):
        return int(self.neg_table[a])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def frobenius(self, a):
        return int(self.frob_table[a])

    def norm(self, a):
        return int(self.norm_table[a])

    def trace(self, a):
        return int(self.trace_table[a])

    def pow(self, a, k):
        if k == 0:
            return 1
        if a == 0:
            return 0
        return int(self._exp[(k * int(self._log[a])) % (self.order - 1)])

    def dot(self, u, v):
        """Plain bilinear dot product sum(u_i v_i), no conjugation."""
        acc = 0
        for a, b in zip(u, v):
            acc = self.add_table[acc, self.mul_table[a, b]]
        return int(acc)

    def elements(self):
        return range(self.order)

    def subfield_elements(self):
        return [int(i) for i in np.nonzero(self.subfield_mask)[0]]

    # -- vectorized operations on index arrays -----------------------------

    def vmul(self, a, b):
        idx = np.asarray(a).astype(np.int32) * self.order + b
        return self.mul_table.ravel().take(idx)

    def vadd(self, a, b):
        idx = np.asarray(a).astype(np.int32) * self.order + b
        return self.add_table.ravel().take(idx)

    def vscale(self, c, a):
        """c * a for scalar c and array a (single row gather)."""
        return self.mul_table[c].take(a)

    def vfrob(self, a):
        return self.frob_table.take(a)

    def vnorm(self, a):
        return self.norm_table.take(a)

    def __repr__(self):
        return f"FieldCtx(q={self.q})"

    __hash__ = object.__hash__


@functools.lru_cache(maxsize=None)
def make_field(q, cap=DEFAULT_CAP):
    """Build (and cache) the arithmetic context for F_{q^2}."""
    return FieldCtx(q, cap=cap)


def frobenius(ctx, a):
    return ctx.frobenius(a)


def norm(ctx, a):
    return ctx.norm(a)


def trace(ctx, a):
    return ctx.trace(a)


def solve_norm(ctx, d):
    """Smallest-index lam with lam^(q+1) = d, for nonzero subfield d.

    Solvability is guaranteed by surjectivity of the norm map; failure is an
    internal invariant violation, not a caller error.
    """
    if d == 0 or not ctx.subfield_mask[d]:
        raise ValueError(f"d={d} is not a nonzero subfield element")
    hits = np.nonzero(ctx.norm_table == d)[0]
    assert hits.size > 0, "norm surjectivity violated"
    return int(hits[0])
