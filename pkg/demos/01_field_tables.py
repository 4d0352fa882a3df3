"""Walk through the lookup-table arithmetic for F_{q^2} and its subfield.

Shows the deterministic construction (smallest irreducible modulus), the
Frobenius involution x -> x^q, and the norm map fibers.
"""

from hermvar import make_field, solve_norm

for q in (2, 3, 7):
    ctx = make_field(q)
    print(f"== F_{q*q} built as F_{ctx.p}[x]/(x^{2*ctx.e} + {list(ctx.modulus)})")
    print(f"   generator index: {ctx.generator}")
    sub = ctx.subfield_elements()
    print(f"   subfield F_{q} (Frobenius-fixed indices): {sub}")

    fibers = {}
    for a in range(1, ctx.order):
        fibers.setdefault(ctx.norm(a), []).append(a)
    sizes = {d: len(v) for d, v in sorted(fibers.items())}
    print(f"   norm fibers over nonzero subfield elements (all size q+1={q+1}): {sizes}")

    d = sub[1]  # the element 1
    lam = solve_norm(ctx, d)
    print(f"   smallest lambda with lambda^(q+1) = {d}: index {lam}")
    print()

ctx = make_field(2)
omega = 2
print("F_4 spot checks: omega has index 2, omega^2 =", ctx.mul(omega, omega),
      "(= omega+1), frobenius(omega) =", ctx.frobenius(omega),
      ", norm(omega) =", ctx.norm(omega))
