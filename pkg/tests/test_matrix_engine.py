import pytest
from sympy import primepi, primerange

from orbitmat import (
    CyclePresentError,
    DimensionMismatch,
    IndexOutOfRange,
    NotACycleError,
    NotNilpotentError,
    PartialMapMatrix,
    SparseSignMatrix,
    apply_basis,
    build_ihat,
    build_m,
    cycle_eigenvector,
    detect_cycle,
    heights,
    intersect_count,
    inverse_nnz,
    inverse_via_neumann,
    inverse_via_orbits,
    iter_powers,
    localize,
    nilpotency_degree,
    nnz,
    parse_spec,
    power,
)
from orbitmat.orbit_engine import CycleReport

from _instances import PHI_C, PHI_R, THREE_X_MINUS_ONE, dense_matrix_power


def lf_of(text, n):
    return localize(parse_spec(text), n)


def subdiag(n, k):
    """Entry set of D_{n,k}: ones at (j + k, j)."""
    return {(j + k, j) for j in range(1, n - k + 1)} if 0 <= k < n else set()


def support(s):
    return {(r, c) for r, c, v in s.entries() if v}


class TestBuild:
    def test_shift(self):
        m = build_m(lf_of("shift:t=1", 3))
        assert m.col_to_row.tolist() == [2, 3, 0]
        assert support(m) == subdiag(3, 1)

    def test_two_cycle(self):
        assert build_m(lf_of("table:1>2,2>1", 2)).col_to_row.tolist() == [2, 1]

    def test_phi_c(self):
        assert build_m(lf_of(PHI_C, 4)).col_to_row.tolist() == [0, 0, 0, 2]

    def test_n_one(self):
        m = build_m(lf_of("shift:t=1", 1))
        assert m.is_zero() and nilpotency_degree(m) == 1
        assert build_ihat(lf_of("shift:t=1", 1)).columns == (((1, 1),),)

    def test_single_nonzero_per_column(self):
        with pytest.raises(ValueError):
            PartialMapMatrix(3, [4, 0, 0])


class TestApplyBasis:
    def test_values(self):
        assert apply_basis(build_m(lf_of("shift:t=1", 5)), 3) == 4
        assert apply_basis(build_m(lf_of(PHI_C, 50)), 3) == 5
        assert apply_basis(build_m(lf_of(PHI_C, 50)), 1) == 0

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            apply_basis(build_m(lf_of(PHI_C, 5)), 6)
        with pytest.raises(IndexOutOfRange):
            apply_basis(build_m(lf_of(PHI_C, 5)), 0)


class TestPower:
    def test_shift_square(self):
        p = power(build_m(lf_of("shift:t=1", 5)), 2)
        assert support(p) == {(3, 1), (4, 2), (5, 3)}

    @pytest.mark.parametrize("text", [PHI_C, PHI_R, "shift:t=1", "nextprime", "shift:t=-3"])
    def test_nilpotent_by_n(self, text):
        m = build_m(lf_of(text, 40))
        assert power(m, 40).is_zero()
        assert power(m, 1000).is_zero()

    def test_two_cycle_squares_to_identity(self):
        m = build_m(lf_of("table:1>2,2>1", 2))
        assert power(m, 2).col_to_row.tolist() == [1, 2]
        assert power(m, 2) == PartialMapMatrix.identity(2)
        assert power(m, 10**9 + 1) == m

    @pytest.mark.parametrize("text,n", [(PHI_C, 12), (PHI_R, 12), ("table:1>2,2>3,3>1,5>4", 6)])
    def test_matches_dense_power(self, text, n):
        lf = lf_of(text, n)
        m = build_m(lf)
        for k in range(1, n + 2):
            dense = dense_matrix_power(lf.tolist(), k)
            cells = {(i + 1, j + 1) for i in range(n) for j in range(n) if dense[i][j]}
            assert support(power(m, k)) == cells
            assert all(v in (0, 1) for row in dense for v in row)

    def test_iter_powers_stops_at_zero(self):
        m = build_m(lf_of(PHI_C, 50))
        ps = list(iter_powers(m))
        assert len(ps) == 18 and ps[-1].is_zero() and not ps[-2].is_zero()


class TestCounts:
    def test_nnz(self):
        assert nnz(power(build_m(lf_of("shift:t=1", 5)), 2)) == 3

    def test_disjoint_shift_powers(self):
        m = build_m(lf_of("shift:t=1", 5))
        assert intersect_count(m, power(m, 2)) == 0

    def test_self_intersection(self):
        m = build_m(lf_of(PHI_R, 50))
        assert intersect_count(m, m) == nnz(m) == 42

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            intersect_count(build_m(lf_of(PHI_C, 5)), build_m(lf_of(PHI_C, 6)))

    def test_count_identity(self):
        lf = lf_of(PHI_C, 50)
        hp = heights(lf)
        total = 0
        for k, p in enumerate(iter_powers(build_m(lf)), start=1):
            total += hp.partition_pi[k - 1]
            assert nnz(p) == 50 - total


class TestNilpotencyDegree:
    def test_shift(self):
        assert nilpotency_degree(build_m(lf_of("shift:t=1", 50))) == 50

    def test_phi_c(self):
        assert nilpotency_degree(build_m(lf_of(PHI_C, 50))) == 18

    def test_next_prime(self):
        assert primepi(50) == 15
        assert nilpotency_degree(build_m(lf_of("nextprime", 50))) == 15

    def test_cycle(self):
        assert nilpotency_degree(build_m(lf_of(THREE_X_MINUS_ONE, 10))) is None


class TestIhat:
    def test_two_cycle(self):
        ihat = build_ihat(lf_of("table:1>2,2>1", 2))
        assert ihat.columns == (((1, 1), (2, -1)), ((1, -1), (2, 1)))

    def test_shift(self):
        ihat = build_ihat(lf_of("shift:t=1", 3))
        assert {(r, c, v) for r, c, v in ihat.entries()} == {
            (1, 1, 1), (2, 2, 1), (3, 3, 1), (2, 1, -1), (3, 2, -1)}

    def test_phi_c_structure(self):
        ihat = build_ihat(lf_of(PHI_C, 50))
        assert ihat.nnz == 50 + 40 <= 100
        assert all(ihat.get(j, j) == 1 for j in range(1, 51))
        assert all(sum(1 for _, v in col if v == -1) <= 1 for col in ihat.columns)


class TestInverse:
    def test_shift_full_lower_triangle(self):
        inv = inverse_via_orbits(lf_of("shift:t=1", 50))
        assert support(inv) == {(i, j) for j in range(1, 51) for i in range(j, 51)}
        assert inv.nnz == 1275

    def test_phi_c_and_phi_r_counts(self):
        assert inverse_via_orbits(lf_of(PHI_C, 50)).nnz == 348
        assert inverse_via_orbits(lf_of(PHI_R, 50)).nnz == 267
        assert inverse_nnz(heights(lf_of(PHI_C, 50))) == 348

    def test_shift_two_checkerboard(self):
        inv = inverse_via_neumann(build_m(lf_of("shift:t=2", 6)))
        expected = subdiag(6, 0) | subdiag(6, 2) | subdiag(6, 4)
        assert support(inv) == expected

    def test_shift_minus_one_upper_triangle(self):
        inv = inverse_via_neumann(build_m(lf_of("shift:t=-1", 4)))
        assert support(inv) == {(i, j) for j in range(1, 5) for i in range(1, j + 1)}

    def test_shift_minus_seven_is_transpose_of_plus_seven(self):
        down = support(inverse_via_orbits(lf_of("shift:t=7", 50)))
        up = support(inverse_via_orbits(lf_of("shift:t=-7", 50)))
        assert up == {(c, r) for r, c in down}

    def test_next_prime(self):
        inv = inverse_via_neumann(build_m(lf_of("nextprime", 50)))
        q = list(primerange(1, 51))
        expected = subdiag(50, 0) | {(q[i], q[j]) for j in range(len(q)) for i in range(j + 1, len(q))}
        assert support(inv) == expected
        assert inv.nnz == 155

    @pytest.mark.parametrize("text", [PHI_C, PHI_R, "nextprime", "shift:t=3", "chapman"])
    def test_two_routes_agree(self, text):
        lf = lf_of(text, 50)
        assert inverse_via_orbits(lf) == inverse_via_neumann(build_m(lf))

    def test_cycle_errors(self):
        lf = lf_of("table:1>2,2>1", 3)
        with pytest.raises(NotNilpotentError):
            inverse_via_neumann(build_m(lf))
        with pytest.raises(CyclePresentError):
            inverse_via_orbits(lf)


class TestEigenvector:
    def test_two_cycle(self):
        lf = lf_of("table:1>2,2>1", 2)
        assert cycle_eigenvector(build_m(lf), detect_cycle(lf)).support == (1, 2)

    @pytest.mark.parametrize("n", [10, 12, 30])
    def test_three_x_minus_one(self, n):
        lf = lf_of(THREE_X_MINUS_ONE, n)
        cert = cycle_eigenvector(build_m(lf), detect_cycle(lf))
        assert cert.support == (5, 7, 10)
        v = cert.dense(n)
        mv = [0] * n
        for j, r in enumerate(build_m(lf).col_to_row.tolist()):
            if r:
                mv[r - 1] += v[j]
        assert mv == v

    def test_rejects_non_cycle(self):
        m = build_m(lf_of(THREE_X_MINUS_ONE, 10))
        with pytest.raises(NotACycleError):
            cycle_eigenvector(m, CycleReport(True, (5, 7)))
        with pytest.raises(NotACycleError):
            cycle_eigenvector(m, CycleReport(False))


def test_sparse_sign_matrix_dimension_check():
    with pytest.raises(DimensionMismatch):
        SparseSignMatrix(2, (((1, 1),),))
