# The 3x+1 map with the trivial cycle {1, 2} cut away.
#
# phi_c(x) = 0 for x <= 2, x/2 for even x, (3x + 1)/2 for odd x.
# Restricted to 1..50 it has no cycle, so I - M is invertible with det 1,
# M is nilpotent, and the inverse can be written down from orbits alone.

from orbitmat import (
    build_ihat, build_m, detect_cycle, heights, indicator_det, inverse_via_orbits,
    localize, nilpotency_degree, orbit, parse_spec, render_svg,
)

lf = localize(parse_spec("collatz"), 50)
print("phi_c,50 on 1..12:", lf.tolist()[:12])
print("cycle:", detect_cycle(lf))

hp = heights(lf)
print("height partition:", hp.partition_pi)
print("nilpotency degree:", nilpotency_degree(build_m(lf)), "(max height", hp.degree_m, ")")

# 27 climbs past 50 after one step
print("orbit of 3:", orbit(lf, 3))
print("orbit of 27:", orbit(lf, 27))

inv = inverse_via_orbits(lf, hp)
print("nonzeros in the inverse:", inv.nnz, "= sum of heights =", hp.weighted_sum)
print("det(I - M) by exact elimination:", indicator_det(build_ihat(lf)))

# sparsity plots: +1 red, -1 blue
render_svg(build_ihat(lf), "collatz_ihat.svg")
render_svg(inv, "collatz_inverse.svg")
print("wrote collatz_ihat.svg and collatz_inverse.svg")
