import pytest

from stemforge.generators import (GenerationError, random_connected_k14_free, sharpness_family,
                                  sharpness_graph)
from stemforge.graph import is_connected, is_k1r_free, sigma_p, star_graph
from stemforge.oracle import min_leaf_branch


def test_double_star():
    g = sharpness_graph(1, 1)
    assert g.n == 6
    assert g.edges() == [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]


def test_order_differs_from_quoted_formula():
    fam = sharpness_family(1, 2)
    assert fam.n == 10 == 1 + 1 + (1 + 3) * 2
    assert fam.stated_order == 8


@pytest.mark.parametrize("k, p", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_family_invariants(k, p):
    fam = sharpness_family(k, p)
    g = fam.graph
    assert g.n == (k + 1) + (k + 3) * p
    assert is_connected(g)
    assert is_k1r_free(g, 4)
    assert sigma_p(g, k + 3) == g.n - k - 1
    for blob in fam.blobs:
        assert all(g.degree(v) == p for v in blob)
    ends = {fam.path[0], fam.path[-1]}
    for x in fam.path:
        assert g.degree(x) == (2 * p + 1 if x in ends else p + 2)


@pytest.mark.parametrize("k, p", [(1, 1), (1, 2), (2, 1)])
def test_family_is_sharp(k, p):
    assert min_leaf_branch(sharpness_graph(k, p))[0] >= 2 * k + 4


def test_k0_extension():
    with pytest.raises(ValueError):
        sharpness_graph(0, 1)
    assert sharpness_graph(0, 1, allow_k0=True) == star_graph(3)
    with pytest.raises(ValueError):
        sharpness_graph(1, 0)


def test_random_single_vertex():
    g = random_connected_k14_free(1, 0.5, seed=0)
    assert g.n == 1 and g.num_edges == 0


def test_random_is_deterministic_and_valid():
    a = random_connected_k14_free(6, 0.8, seed=7)
    b = random_connected_k14_free(6, 0.8, seed=7)
    assert a == b
    assert is_connected(a) and is_k1r_free(a, 4)


def test_random_gives_up():
    with pytest.raises(GenerationError):
        random_connected_k14_free(12, 0.2, seed=1, max_tries=3)


@pytest.mark.parametrize("prob", [0.0, 1.0, -0.5])
def test_random_rejects_probabilities(prob):
    with pytest.raises(ValueError):
        random_connected_k14_free(5, prob, seed=0)
