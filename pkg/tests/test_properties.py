"""Hypothesis checks of the structural identities on random local functions."""

from hypothesis import given, settings, strategies as st

from orbitmat import (
    LocalFunction,
    build_ihat,
    build_m,
    decompose,
    detect_cycle,
    heights,
    intersect_count,
    inverse_via_neumann,
    inverse_via_orbits,
    iter_powers,
    j_nk,
    nilpotency_degree,
    nnz,
    orbit,
    power,
)
from orbitmat.exact_oracle import dense_from_sparse, dense_mul, dense_power, indicator_det


@st.composite
def local_functions(draw, max_n=40):
    n = draw(st.integers(1, max_n))
    table = [draw(st.integers(0, n).filter(lambda v, x=x: v != x)) for x in range(1, n + 1)]
    return LocalFunction(n, table)


@st.composite
def acyclic_local_functions(draw, max_n=40):
    """Random forests: every x points to 0 or to a larger index under a random relabeling."""
    n = draw(st.integers(1, max_n))
    perm = draw(st.permutations(range(1, n + 1)))
    table = [0] * n
    for i in range(n):
        target = draw(st.integers(i + 1, n))  # n means "exit to 0"
        table[perm[i] - 1] = 0 if target == n else perm[target]
    return LocalFunction(n, table)


@settings(max_examples=150, deadline=None)
@given(acyclic_local_functions())
def test_height_partition_invariants(lf):
    n = lf.n
    hp = heights(lf)
    assert all(1 <= h <= n for h in hp.heights.tolist())
    assert sum(hp.partition_pi) == n
    assert all(p >= 1 for p in hp.partition_pi)
    m = hp.degree_m
    assert sum(nu * p for nu, p in enumerate(hp.partition_pi, start=1)) <= n * m - m * (m - 1) // 2
    assert decompose(lf).level_counts() == hp.partition_pi


@settings(max_examples=150, deadline=None)
@given(acyclic_local_functions())
def test_orbits_and_classes(lf):
    hp = heights(lf)
    dec = decompose(lf)
    assert j_nk(lf, 1) == lf.n - len(dec.classes)
    for x in range(1, lf.n + 1):
        o = orbit(lf, x)
        assert len(o) == len(set(o)) == hp.heights[x - 1]
        assert dec.class_root[x - 1] == o[-1]
    for k in range(1, lf.n + 2):
        assert j_nk(lf, k) <= max(lf.n - k, 0)


@settings(max_examples=100, deadline=None)
@given(acyclic_local_functions())
def test_power_disjointness_and_counts(lf):
    m = build_m(lf)
    hp = heights(lf)
    powers = list(iter_powers(m))
    assert nilpotency_degree(m) == hp.degree_m == len(powers)
    for k, p in enumerate(powers, start=1):
        assert nnz(p) <= lf.n - k
        assert nnz(p) == j_nk(lf, k)
        for q in powers[k:]:
            assert intersect_count(p, q) == 0


@settings(max_examples=100, deadline=None)
@given(acyclic_local_functions(max_n=20))
def test_inverse_routes_and_oracle(lf):
    inv = inverse_via_orbits(lf)
    assert inv == inverse_via_neumann(build_m(lf))
    assert inv.nnz == heights(lf).weighted_sum
    ihat = dense_from_sparse(build_ihat(lf))
    assert dense_mul(ihat, dense_from_sparse(inv)).tolist() == [
        [int(i == j) for j in range(lf.n)] for i in range(lf.n)]


@settings(max_examples=150, deadline=None)
@given(local_functions(max_n=24))
def test_determinant_indicator(lf):
    rep = detect_cycle(lf)
    det = indicator_det(build_ihat(lf))
    assert det == (0 if rep.found else 1)
    assert (nilpotency_degree(build_m(lf)) is None) == rep.found


@settings(max_examples=60, deadline=None)
@given(local_functions(max_n=12), st.integers(1, 14))
def test_power_matches_dense(lf, k):
    m = build_m(lf)
    assert dense_from_sparse(power(m, k)) == dense_power(dense_from_sparse(m), k)
