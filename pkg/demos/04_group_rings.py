"""Exact ZG arithmetic and module equations for finite G.

Run:  python3 demos/04_group_rings.py
"""

from d2kit import (
    GroupRingElement,
    GroupRingMatrix,
    group_model,
    parse_presentation,
    regular_rep_expand,
    solve_gr_system,
)

m = group_model(parse_presentation("gens: t\nrels: t^2\n"), 10)
one = GroupRingElement.one(m)
t = GroupRingElement.from_element(m, m.generator_images[0])

print("in Z[Z/2]: (1+t)(1-t) =", ((one + t) * (one - t)).to_pairs(), "(zero divisors)")
print("(1+t)^2 =", ((one + t) * (one + t)).to_pairs())
print("augmentation of 3 - 2t:", (3 * one - 2 * t).augmentation())

M = GroupRingMatrix.from_rows(m, [[t]])
print("\nexpansion of [t]:", regular_rep_expand(M).to_rows())
N = GroupRingMatrix.from_rows(m, [[one + t]])
print("expansion of [1+t]:", regular_rep_expand(N).to_rows())

# Module equations solve exactly or are certified infeasible:
# r (1+t) = 1 forces 2 eps(r) = 1 under augmentation.
print("\nsolve r (1+t) = 1:",
      solve_gr_system(N, GroupRingMatrix.identity(m, 1), "left"))

# A column inclusion has the canonical retraction (0, 1).
z5 = group_model(parse_presentation("gens: x\nrels: x^5\n"), 100)
z, e = GroupRingElement.zero(z5), GroupRingElement.one(z5)
d = GroupRingMatrix(z5, 2, 1, [z, e])
R = solve_gr_system(d, GroupRingMatrix.identity(z5, 1), "left")
print("retraction of the inclusion ZG -> ZG^2:",
      [x.to_pairs() for x in R.entries])
print("R o d is the identity:", R.compose(d).is_identity())
