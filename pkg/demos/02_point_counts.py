"""Count rational points of the variety two ways: closed formula against a
full scan of projective space, including the degenerate (cone) ranks.
"""

from hermvar import (
    count_points_enum,
    count_points_formula,
    make_field,
    num_points,
    padded_standard_form,
    standard_form,
)

print("non-degenerate variety sizes |U_n(F_{q^2})|, formula vs full scan:")
for q in (2, 3):
    ctx = make_field(q)
    for n in range(1, 6):
        f = standard_form(n, ctx)
        enum = count_points_enum(f)
        formula = count_points_formula(n, q, n + 1)
        tag = "ok" if enum == formula else "MISMATCH"
        print(f"  n={n} q={q}: scan {enum:>10,}  formula {formula:>10,}  [{tag}]"
              f"  (ambient {num_points(n, q):,} points)")

print()
print("degenerate ranks are cones; still exact at every rank (n=4, q=2):")
ctx = make_field(2)
for r in range(1, 6):
    f = padded_standard_form(r, 4, ctx)
    print(f"  rank {r}: scan {count_points_enum(f):>4}  "
          f"formula {count_points_formula(4, 2, r):>4}")
