"""Classify every hyperplane of P^4(F_4) against the variety: tangent
sections are point-vertex cones, non-tangent ones are non-degenerate, and
the tangent hyperplanes through a fixed variety point number q^2|U_{n-2}|+1.
"""

from collections import Counter

from hermvar import (
    classify_hyperplane,
    classify_section,
    contains,
    enumerate_hyperplanes,
    enumerate_points,
    intersect_hyperplanes,
    make_field,
    section_count,
    standard_form,
    tangents_through_count,
)

n, q = 4, 2
ctx = make_field(q)
f = standard_form(n, ctx)

kinds = Counter()
shapes = Counter()
for h in enumerate_hyperplanes(n, ctx):
    kinds[classify_hyperplane(f, h).kind] += 1
    st = classify_section(f, intersect_hyperplanes([h], ctx))
    shapes[(st.label, section_count(st, q))] += 1

print(f"hyperplanes of P^{n}(F_{q*q}): {sum(kinds.values())}")
print(f"  tangency: {dict(kinds)}   (tangent count equals |U_{n}| = 165)")
print(f"  section shapes (label, points): {dict(shapes)}")

P = next(p for p in enumerate_points(n, ctx) if contains(f, p))
print(f"tangent hyperplanes through the variety point {P.coords}: "
      f"{tangents_through_count(f, P)} (= q^2*9 + 1)")
