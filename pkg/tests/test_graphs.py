from fractions import Fraction

import pytest

import dyckzeta as dz
from dyckzeta import InvalidGraph, InvalidVertex, NoPerronRoot, NotIrreducible


def test_build_from_adjacency_row_major():
    g = dz.build_graph({"adjacency": [[1, 1], [1, 0]]})
    assert g.vertex_count == 2
    assert g.edges == ((0, 0), (0, 1), (1, 0))


def test_build_parallel_loops():
    g = dz.build_graph({"adjacency": [[2]]})
    assert g.vertex_count == 1
    assert g.edges == ((0, 0), (0, 0))


def test_build_from_edge_list_multiplicity():
    g = dz.build_graph({"vertices": 2, "edges": [[0, 1], [0, 1], [1, 0]]})
    assert g.adjacency == ((0, 2), (1, 0))


def test_adjacency_rederivable_from_edges(test_graph):
    g = test_graph
    counts = [[0] * g.vertex_count for _ in range(g.vertex_count)]
    for s, d in g.edges:
        counts[s][d] += 1
    assert tuple(tuple(r) for r in counts) == g.adjacency
    for v in range(g.vertex_count):
        assert all(g.src(e) == v for e in g.out_edges(v))


def test_build_rejects_bad_input():
    with pytest.raises(InvalidGraph):
        dz.build_graph({"vertices": 2, "edges": [[0, 2]]})
    with pytest.raises(InvalidGraph):
        dz.build_graph({"vertices": 0, "edges": []})
    with pytest.raises(InvalidGraph):
        dz.build_graph({"vertices": 2, "edges": [[0, 1]], "adjacency": [[1]]})
    with pytest.raises(InvalidGraph):
        dz.build_graph({"vertices": 2})
    with pytest.raises(InvalidGraph):
        dz.build_graph({"adjacency": [[1, 0]]})
    with pytest.raises(InvalidGraph):
        dz.build_graph({"adjacency": [[-1]]})


def test_char_poly_fibonacci(fib):
    assert dz.char_poly(fib) == dz.IntPolynomial([1, -1, -1])


def test_char_poly_loops():
    for n in (1, 3, 5):
        assert dz.char_poly(dz.loop_graph(n)) == dz.IntPolynomial([1, -n])


def test_char_poly_no_edges_is_one():
    g = dz.Graph(3, [])
    assert dz.char_poly(g) == dz.IntPolynomial([1])


def test_char_poly_constant_term_is_one(test_graph):
    p = dz.char_poly(test_graph)
    assert p(Fraction(0)) == 1
    for v in range(test_graph.vertex_count):
        assert dz.char_poly_minor(test_graph, v)(Fraction(0)) == 1


def test_char_poly_minor_fibonacci(fib):
    assert dz.char_poly_minor(fib, 0) == dz.IntPolynomial([1])
    assert dz.char_poly_minor(fib, 1) == dz.IntPolynomial([1, -1])


def test_char_poly_minor_single_vertex_convention():
    assert dz.char_poly_minor(dz.loop_graph(4), 0) == dz.IntPolynomial([1])


def test_char_poly_minor_bad_vertex(fib):
    with pytest.raises(InvalidVertex):
        dz.char_poly_minor(fib, 2)


def test_perron_rho_fibonacci(fib):
    rho = dz.perron_rho(fib, tol=1e-12)
    assert abs(rho - 2 / (1 + 5 ** 0.5)) < 1e-10


def test_perron_rho_loops():
    assert abs(dz.perron_rho(dz.loop_graph(5)) - 0.2) < 1e-10
    assert dz.perron_rho(dz.loop_graph(1)) == 1.0  # exact rational hit


def test_perron_rho_certificate(test_graph):
    tol = 1e-10
    rho = dz.perron_rho(test_graph, tol=tol)
    p = dz.char_poly(test_graph)
    assert abs(float(p(Fraction(rho)))) <= 10 * tol
    for k in range(1, 101):
        x = Fraction(k, 100) * (Fraction(rho) - Fraction(tol))
        if x > 0:
            assert p(x) > 0


def test_perron_rho_requires_strong_connectivity():
    dag = dz.Graph(2, [(0, 1)])
    with pytest.raises(NotIrreducible):
        dz.perron_rho(dag)


def test_perron_rho_no_edges():
    with pytest.raises(NoPerronRoot):
        dz.perron_rho(dz.Graph(1, []))


def test_first_return_series_fibonacci(fib):
    s0 = dz.first_return_series(fib, 0, 10)
    assert [int(c) for c in s0.coeffs] == [0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]
    s1 = dz.first_return_series(fib, 1, 10)
    assert [int(c) for c in s1.coeffs] == [0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]


def test_first_return_series_loops():
    s = dz.first_return_series(dz.loop_graph(3), 0, 6)
    assert [int(c) for c in s.coeffs] == [0, 3, 0, 0, 0, 0, 0]


def test_first_return_cofactor_identity(test_graph):
    # first_return_series must equal the expansion of 1 - p/p_v exactly
    order = 15
    g = test_graph
    p = dz.char_poly(g)
    for v in range(g.vertex_count):
        pv = dz.char_poly_minor(g, v)
        cofactor = dz.Series.one(order) - dz.Series(p.coeffs, order) / dz.Series(pv.coeffs, order)
        assert dz.first_return_series(g, v, order) == cofactor, f"vertex {v}"


def test_path_validation(fib):
    dz.Path(fib, 0, [0, 1, 2])  # 0->0->1->0
    with pytest.raises(InvalidGraph):
        dz.Path(fib, 0, [2])  # edge 2 starts at vertex 1
    with pytest.raises(InvalidVertex):
        dz.Path(fib, 5, [])


def test_int_polynomial_arithmetic():
    p = dz.IntPolynomial([1, -1, -1])
    q = dz.IntPolynomial([0, 1])
    assert p * q == dz.IntPolynomial([0, 1, -1, -1])
    assert p + q == dz.IntPolynomial([1, 0, -1])
    assert p.derivative() == dz.IntPolynomial([-1, -2])
    assert dz.IntPolynomial([1, 0, 0]).degree == 0  # trailing zeros trimmed
    assert p(Fraction(1, 2)) == Fraction(1, 4)


def test_determinant_guard():
    big = dz.Graph(13, [(i, (i + 1) % 13) for i in range(13)])
    with pytest.raises(InvalidGraph):
        dz.char_poly(big)
