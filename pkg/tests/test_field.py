import numpy as np
import pytest

from hermvar.errors import ExceedsCap, NotPrimePower
from hermvar.field import is_prime_power, make_field, solve_norm

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9, 11, 13]


def poly_mul_oracle(ctx, a, b):
    """Independent product via base-p coefficient arithmetic mod the modulus."""
    p = ctx.p
    m = 2 * ctx.e

    def digs(x):
        out = []
        for _ in range(m):
            out.append(x % p)
            x //= p
        return out

    da, db = digs(a), digs(b)
    prod = [0] * (2 * m - 1)
    for i, ai in enumerate(da):
        for j, bj in enumerate(db):
            prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, m - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(m):
                prod[k - m + j] = (prod[k - m + j] - c * ctx.modulus[j]) % p
    return sum(c * p**i for i, c in enumerate(prod[:m]))


def test_is_prime_power():
    assert is_prime_power(2) == (2, 1)
    assert is_prime_power(4) == (2, 2)
    assert is_prime_power(9) == (3, 2)
    assert is_prime_power(13) == (13, 1)
    assert is_prime_power(6) is None
    assert is_prime_power(12) is None
    assert is_prime_power(1) is None


def test_make_field_errors():
    with pytest.raises(NotPrimePower):
        make_field(6)
    with pytest.raises(ExceedsCap):
        make_field(16)
    assert make_field(4).order == 16


def test_f4_structure():
    # F_4 = F_2[x]/(x^2+x+1): indices 0, 1, omega=2, omega+1=3
    ctx = make_field(2)
    assert ctx.modulus == (1, 1)
    omega = 2
    assert ctx.mul(omega, omega) == 3  # omega^2 = omega + 1
    assert ctx.frobenius(omega) == 3
    assert ctx.frobenius(0) == 0 and ctx.frobenius(1) == 1
    assert ctx.norm(omega) == 1  # omega * omega^2 = omega^3 = 1
    assert ctx.norm(1) == 1
    assert ctx.trace(1) == 0  # 1 + 1 in characteristic 2


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_mul_table_matches_polynomial_arithmetic(q):
    ctx = make_field(q)
    rng = np.random.default_rng(q)
    pairs = rng.integers(0, ctx.order, size=(200, 2))
    for a, b in pairs:
        assert ctx.mul(int(a), int(b)) == poly_mul_oracle(ctx, int(a), int(b))


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_frobenius_involution_and_homomorphism(q):
    ctx = make_field(q)
    Q = ctx.order
    fr = ctx.frob_table
    assert np.array_equal(fr[fr], np.arange(Q))
    # a^q by square-and-multiply, independent of the frobenius table
    for a in range(Q):
        assert ctx.pow(a, ctx.q) == int(fr[a])
    rng = np.random.default_rng(q + 1)
    for a, b in rng.integers(0, Q, size=(200, 2)):
        a, b = int(a), int(b)
        assert ctx.frobenius(ctx.add(a, b)) == ctx.add(ctx.frobenius(a), ctx.frobenius(b))
        assert ctx.frobenius(ctx.mul(a, b)) == ctx.mul(ctx.frobenius(a), ctx.frobenius(b))


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_subfield_is_frobenius_fixed(q):
    ctx = make_field(q)
    fixed = [a for a in ctx.elements() if ctx.frobenius(a) == a]
    assert len(fixed) == q
    assert fixed == ctx.subfield_elements()


@pytest.mark.parametrize("q", PRIME_POWERS)
def test_norm_onto_subfield(q):
    ctx = make_field(q)
    hits = {}
    for a in range(1, ctx.order):
        n = ctx.norm(a)
        assert ctx.subfield_mask[n] and n != 0
        hits[n] = hits.get(n, 0) + 1
    assert len(hits) == q - 1
    assert all(c == q + 1 for c in hits.values())


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    ctx = make_field(q)
    Q = ctx.order
    for a in range(1, Q):  # exhaustive inverses
        assert ctx.mul(a, ctx.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        ctx.inv(0)
    rng = np.random.default_rng(q + 2)
    for a, b, c in rng.integers(0, Q, size=(300, 3)):
        a, b, c = int(a), int(b), int(c)
        assert ctx.mul(a, ctx.mul(b, c)) == ctx.mul(ctx.mul(a, b), c)
        assert ctx.add(a, ctx.add(b, c)) == ctx.add(ctx.add(a, b), c)
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.add(a, b) == ctx.add(b, a)
        assert ctx.mul(a, b) == ctx.mul(b, a)
    for a in range(Q):
        assert ctx.add(a, ctx.neg_table[a]) == 0
        assert ctx.add(a, 0) == a
        assert ctx.mul(a, 1) == a
        assert ctx.mul(a, 0) == 0


def test_norm_trace_in_f9():
    ctx = make_field(3)
    g = ctx.generator
    assert ctx.norm(g) == ctx.pow(g, 4)
    assert ctx.norm(g) != 0 and ctx.subfield_mask[ctx.norm(g)]


@pytest.mark.parametrize("q,d", [(2, 1), (3, 2), (7, 3)])
def test_solve_norm(q, d):
    ctx = make_field(q)
    assert ctx.subfield_mask[d]
    lam = solve_norm(ctx, d)
    assert ctx.pow(lam, q + 1) == d
    # smallest index among all solutions
    sols = [a for a in range(1, ctx.order) if ctx.norm(a) == d]
    assert lam == min(sols)


def test_solve_norm_rejects_bad_input():
    ctx = make_field(3)
    with pytest.raises(ValueError):
        solve_norm(ctx, 0)
    non_sub = next(a for a in range(ctx.order) if not ctx.subfield_mask[a])
    with pytest.raises(ValueError):
        solve_norm(ctx, non_sub)


def test_vector_ops_match_scalar():
    ctx = make_field(3)
    rng = np.random.default_rng(5)
    a = rng.integers(0, 9, 50, dtype=np.uint8)
    b = rng.integers(0, 9, 50, dtype=np.uint8)
    assert all(int(x) == ctx.mul(int(u), int(v)) for x, u, v in zip(ctx.vmul(a, b), a, b))
    assert all(int(x) == ctx.add(int(u), int(v)) for x, u, v in zip(ctx.vadd(a, b), a, b))
    assert all(int(x) == ctx.frobenius(int(u)) for x, u in zip(ctx.vfrob(a), a))
    assert all(int(x) == ctx.norm(int(u)) for x, u in zip(ctx.vnorm(a), a))
    assert all(int(x) == ctx.mul(4, int(u)) for x, u in zip(ctx.vscale(4, a), a))
