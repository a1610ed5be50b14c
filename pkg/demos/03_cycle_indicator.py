# A cycle makes I - M singular.
#
# The 3x - 1 map has the cycle 5 -> 7 -> 10 -> 5. It survives in phi_n exactly
# when n >= 10, and from then on det(I - M_n) = 0 with the cycle's indicator
# vector as an eigenvector of M_n for eigenvalue 1.

from orbitmat import (
    build_ihat, build_m, cycle_eigenvector, detect_cycle, indicator_det, localize,
    parse_spec, scan_for_cycle,
)

text = "rcwa:mod=2;0:1,0;1:3,-1;cut=2"
spec = parse_spec(text)
for n in (8, 9, 10, 11, 30):
    lf = localize(spec, n)
    rep = detect_cycle(lf)
    print(f"n={n:3d}  cycle={str(rep.elements or '-'):<12}  det(I - M)={indicator_det(build_ihat(lf))}")

lf = localize(spec, 12)
print("eigenvector support:", cycle_eigenvector(build_m(lf), detect_cycle(lf)).support)
print("first n with a cycle in [2, 200]:", scan_for_cycle(text, 2, 200))
print("same for the 3x + 1 variant in [2, 10^4]:", scan_for_cycle("collatz", 2, 10**4))
