# Closed-form patterns: shifts x -> x + t and the next-prime map.

from math import comb

from sympy import primepi

from orbitmat import build_m, inverse_via_neumann, localize, nilpotency_degree, parse_spec


def show(inv, size=12):
    dense = [[0] * inv.n for _ in range(inv.n)]
    for r, c, v in inv.entries():
        dense[r - 1][c - 1] = v
    for row in dense[:size]:
        print("".join("#" if v else "." for v in row[:size]))


for t in (1, 2, -1, -3):
    m = build_m(localize(parse_spec(f"shift:t={t}"), 12))
    print(f"\nshift t={t}: degree {nilpotency_degree(m)}")
    show(inverse_via_neumann(m))

n = 50
m = build_m(localize(parse_spec("nextprime"), n))
inv = inverse_via_neumann(m)
print(f"\nnextprime n={n}: degree {nilpotency_degree(m)} = pi(n) = {primepi(n)}")
print(f"inverse nonzeros {inv.nnz} = n + C(pi(n), 2) = {n + comb(int(primepi(n)), 2)}")
