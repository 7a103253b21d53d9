"""
Certified decay of the difference-set bound
===========================================

Walks the radius recursions for one parameter inside the decay region
(c = 5) and one outside it (c = 3), and prints the certified per-depth
upper bounds on the measure of the difference set.
"""

from cantordiff import (
    Parameter,
    bound_table,
    decay_condition,
    decay_parameters,
    radius_limits,
)

# the threshold: bounds decay geometrically iff |c| > 3 and
# |c|^2 - 6|c| + 6 > 0, equivalently 2 / r_limit^2 < 1
for a in (3.0, 4.73, 4.74, 5.0):
    p = Parameter(a)
    _, r_lim = radius_limits(p)
    print(f"|c| = {a}: limit ratio {2 / r_lim**2:.6f}, "
          f"decay guaranteed: {decay_condition(p)}")
print()

# inside the region the ratio settles below 1 and the bound collapses
p = Parameter(5.0)
dp = decay_parameters(p)
print(f"c = 5: epsilon {dp.epsilon:.6f}, settle index {dp.settle_index}, "
      f"ratio {dp.ratio:.6f}")
print(" n   R_n        r_n        K_n            bound          step")
for row in bound_table(p, 20):
    print(f"{row.n:2d}   {row.outer_radius:.6f}   {row.inner_radius:.6f}   "
          f"{row.diam_bound:<12.6g}   {row.bound:<12.6g}   {row.ratio_step:.6f}")

first = next(r.n for r in bound_table(p, 200) if r.bound < 1e-3)
print(f"bound drops below 1e-3 at depth {first}")
print()

# outside the region the same table diverges
p = Parameter(3.0)
print("c = 3 (no decay):")
for row in bound_table(p, 10):
    print(f"{row.n:2d}   bound {row.bound:<12.6g}   step {row.ratio_step:.6f}")
