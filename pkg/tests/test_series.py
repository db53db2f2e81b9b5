from fractions import Fraction

import pytest

import dyckzeta as dz
from dyckzeta import (
    DomainError,
    InternalInconsistency,
    InvalidMatrix,
    NotInvertible,
    Series,
    SeriesMatrix,
)

# frozen from an independent pre-build expansion of xi = z + xi^3
FIB_ZETA_COEFFS = [
    1, 2, 8, 20, 65, 172, 520, 1404, 4099, 11158, 31932,
    87216, 246444, 673924, 1887776, 5163116, 14371815, 39292974,
    108853968, 297424212, 820895361,
]
FIB_PI = [2, 12, 20, 84, 162, 600, 1248, 4308, 9398]

LUCAS = [1, 3, 4, 7, 11, 18, 29, 47]


def frac_list(s):
    return [c for c in s.coeffs]


# ----------------------------------------------------------- arithmetic core


def test_sqrt_matches_square():
    a = Series([1, 0, -8], 12)  # 1 - 4*2 z^2
    s = a.sqrt()
    assert s * s == a
    assert frac_list(s)[:6] == [1, 0, -4, 0, -8, 0]


def test_log_of_geometric():
    geo = Series.one(8) / (Series.one(8) - Series.z(8))
    expected = Series([Fraction(1, n) if n else 0 for n in range(9)])
    assert geo.log() == expected


def test_mul_inverse_pair():
    one_minus_z = Series([1, -1], 10)
    assert one_minus_z * (Series.one(10) / one_minus_z) == Series.one(10)


def test_div_requires_unit_constant_term():
    with pytest.raises(NotInvertible):
        Series.one(4) / Series.z(4)


def test_log_sqrt_domain():
    with pytest.raises(DomainError):
        Series([2, 1], 4).log()
    with pytest.raises(DomainError):
        Series([0, 1], 4).sqrt()


def test_compose_z_squared():
    s = Series([5, 1, 7], 6).compose_z_squared()
    assert frac_list(s) == [5, 0, 1, 0, 7, 0, 0]


def test_shift_down():
    s = Series([0, 0, 3, 4], 5)
    assert frac_list(s.shift_down(2))[:2] == [3, 4]
    with pytest.raises(DomainError):
        Series([0, 1], 3).shift_down(2)


def test_operations_take_min_order():
    a = Series([1, 1], 10)
    b = Series([1, 2], 4)
    assert (a + b).order == 4
    assert (a * b).order == 4


def test_exact_string_serialization():
    s = Series([Fraction(1, 3), 2], 2)
    assert s.to_strings() == ["1/3", "2", "0"]


# ------------------------------------------------------------- code system


def test_code_system_one_vertex_closed_form():
    for n_loops in (1, 2, 3, 4):
        order = 16
        sol = dz.solve_code_system(dz.loop_graph(n_loops), order)
        closed = (Series.one(order) - Series([1, 0, -4 * n_loops], order).sqrt()) / 2
        assert sol.code[0] == closed
        # leading terms N z^2 + N^2 z^4 + 2 N^3 z^6 + 5 N^4 z^8
        got = [int(c) for c in sol.code[0].coeffs[:9]]
        assert got == [0, 0, n_loops, 0, n_loops**2, 0, 2 * n_loops**3, 0, 5 * n_loops**4]


def test_code_system_solves_defining_equations(test_graph):
    g = test_graph
    order = 14
    sol = dz.solve_code_system(g, order)
    z2 = Series([0, 0, 1], order)
    for u in range(g.vertex_count):
        rhs = Series.zero(order)
        for v in range(g.vertex_count):
            m = g.adjacency[u][v]
            if m:
                rhs = rhs + sol.star[v] * m
        assert sol.code[u] == z2 * rhs, f"vertex {u}"
        assert sol.star[u] * (Series.one(order) - sol.code[u]) == Series.one(order)
        assert sol.code[u].is_nonneg_integers()


def test_code_system_fibonacci_low_coeffs(fib):
    sol = dz.solve_code_system(fib, 8)
    assert int(sol.code[0].coeff(2)) == 2 == dz.count_code_words(fib, 0, 2, "md_code")
    assert int(sol.code[1].coeff(2)) == 1 == dz.count_code_words(fib, 1, 2, "md_code")


def test_code_system_fibonacci_star_identity(fib):
    # the star series of vertex 0 is the square of the star series of vertex 1
    sol = dz.solve_code_system(fib, 32)
    assert sol.star[0] == sol.star[1] * sol.star[1]


# ---------------------------------------------------------------- zeta forms


def test_zeta_from_code_matrix_scalar_full_shift():
    h = SeriesMatrix([[Series([0, 3], 8)]])
    zeta = dz.zeta_from_code_matrix(h)
    assert [int(c) for c in zeta.coeffs] == [3**n for n in range(9)]


def test_zeta_from_code_matrix_edge_shift(fib):
    zeta = dz.zeta_from_code_matrix(dz.adjacency_z_matrix(fib, 8))
    assert zeta == Series.one(8) / Series([1, -1, -1], 8)
    assert dz.periodic_counts_from_zeta(zeta) == LUCAS


def test_zeta_from_zero_matrix():
    h = SeriesMatrix([[Series.zero(5), Series.zero(5)], [Series.zero(5), Series.zero(5)]])
    assert dz.zeta_from_code_matrix(h) == Series.one(5)


def test_series_matrix_requires_square():
    with pytest.raises(InvalidMatrix):
        SeriesMatrix([[Series.one(3)], [Series.one(3)]])


def test_circular_code_zeta():
    assert dz.periodic_counts_from_zeta(dz.circular_code_zeta(Series.z(8))) == [1] * 8
    two_z = dz.circular_code_zeta(Series([0, 2], 8))
    assert dz.periodic_counts_from_zeta(two_z) == [2**n for n in range(1, 9)]
    with pytest.raises(DomainError):
        dz.circular_code_zeta(Series.one(4))


def test_markov_dyck_zeta_fibonacci(fib):
    zeta = dz.markov_dyck_zeta(fib, 20)
    assert [int(c) for c in zeta.coeffs] == FIB_ZETA_COEFFS


def test_markov_dyck_zeta_constant_term(test_graph):
    assert dz.markov_dyck_zeta(test_graph, 6).coeff(0) == 1


def test_zeta_times_determinants_is_one(test_graph):
    g = test_graph
    order = 16
    zeta = dz.markov_dyck_zeta(g, order)
    sol = dz.solve_code_system(g, order)
    eye = SeriesMatrix.identity(g.vertex_count, order)
    az = dz.adjacency_z_matrix(g, order)
    d = dz.diagonal_matrix(list(sol.code), order)
    dstar = dz.diagonal_matrix(list(sol.star), order)
    product = (eye - d - az).det() * (eye - dstar * az).det()
    assert zeta * product == Series.one(order)


def test_periodic_counts_fibonacci(fib):
    zeta = dz.markov_dyck_zeta(fib, 9)
    assert dz.periodic_counts_from_zeta(zeta) == FIB_PI


def test_periodic_counts_trivial():
    assert dz.periodic_counts_from_zeta(Series.one(6)) == [0] * 6


def test_periodic_counts_integrality_guard():
    with pytest.raises(InternalInconsistency):
        dz.periodic_counts_from_zeta(Series([1, 1, -1], 2))


def test_code_block_matrix_diagnostic(fib):
    # D (I - Az)^{-1} row sums generate the plus-completed code blocks;
    # sanity: entries are nonnegative integer series and the matrix
    # reproduces D when multiplied back by (I - Az).
    order = 10
    h = dz.code_block_matrix(fib, order)
    sol = dz.solve_code_system(fib, order)
    az = dz.adjacency_z_matrix(fib, order)
    eye = SeriesMatrix.identity(2, order)
    back = h * (eye - az)
    for i in range(2):
        for j in range(2):
            assert h.rows[i][j].is_nonneg_integers()
            expect = sol.code[i] if i == j else Series.zero(order)
            assert back.rows[i][j] == expect
