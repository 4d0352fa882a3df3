"""Tabulate the quadric- and cubic-split thresholds, export them to CSV,
and evaluate the standing inequalities (with the q=2 gap reported as
informational: the theory only asserts it for q >= 3, and it really does
fail at q=2).
"""

from hermvar import build_bound_table, check_bound_power_gap
from hermvar.bounds import check_section_quadric_gap, max_section_bound
from hermvar.bounds import quadric_bound_closed, cubic_bound_closed

for q in (2, 3, 7):
    table = build_bound_table(q, 8)
    print(f"q={q}:  n   quadric bound   cubic bound     |U_n|")
    for row in table.rows:
        print(f"      {row['n']:>2}  {row['A_closed']:>13,}  {row['B_closed']:>12,}  {row['hermitian_count']:>12,}")
    print()

table = build_bound_table(2, 10)
table.to_csv("bounds_q2.csv")
print("wrote bounds_q2.csv")
print()

print("power-gap inequality for n in 5..12 at q in {2,3,7}:",
      all(check_bound_power_gap(n, q) for n in range(5, 13) for q in (2, 3, 7)))

print()
print("section + quadric bound vs cubic bound (strict gap needs q >= 3):")
for q in (2, 3, 7):
    for n in (4, 5):
        lhs = max_section_bound(n, q) + quadric_bound_closed(n, q)
        rhs = cubic_bound_closed(n, q)
        holds = check_section_quadric_gap(n, q)
        note = "" if q >= 3 else "   <- informational at q=2"
        print(f"  n={n} q={q}: {lhs:,} < {rhs:,} ? {holds}{note}")
