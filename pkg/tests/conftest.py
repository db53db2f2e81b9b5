import itertools

import pytest

import dyckzeta as dz


@pytest.fixture
def fib():
    return dz.fibonacci_graph()


def standard_test_graphs():
    """The fixed cross-validation fleet: Fibonacci, one-vertex loop graphs,
    and three family instances."""
    graphs = [dz.fibonacci_graph()]
    graphs += [dz.loop_graph(n) for n in (1, 2, 3, 4)]
    graphs += [dz.family_graph(1, 2, 3), dz.family_graph(1, 1, 2), dz.family_graph(2, 1, 3)]
    return graphs


@pytest.fixture(params=standard_test_graphs(), ids=lambda g: g.name)
def test_graph(request):
    return request.param


def all_words(g, n):
    """Every word of length n over the doubled-edge alphabet."""
    return itertools.product(dz.alphabet(g), repeat=n)
