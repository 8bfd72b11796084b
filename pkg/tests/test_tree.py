import pytest
from hypothesis import given, settings

from stemforge.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from stemforge.tree import (SpanningTree, TreeError, is_oblique_neighbor, oblique_degree,
                            oblique_neighbors_in, parse_parent_line, pseudoadjacency_witness,
                            pseudoadjacent)

from conftest import brute_far_endpoint, graph_with_tree


def own_tree(g: Graph) -> SpanningTree:
    return SpanningTree(g, g.edges())


# spider: center 0, legs 0-1, 0-2, 0-3-4
SPIDER = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
# H-tree: path a-b-c-d = 0-1-2-3, extra leaf e=4 at b, f=5 at c
H_TREE = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])


class TestLeavesAndBranches:
    def test_star(self):
        t = own_tree(star_graph(3))
        assert t.leaves() == {1, 2, 3} and t.branch_vertices() == {0}

    def test_path(self):
        t = own_tree(path_graph(5))
        assert t.leaves() == {0, 4} and t.branch_vertices() == set()

    def test_spider_identity(self):
        t = own_tree(SPIDER)
        assert len(t.leaves()) == 3 and len(t.branch_vertices()) == 1
        assert len(t.leaves()) == 2 + sum(t.degree(b) - 2 for b in t.branch_vertices())

    def test_tiny_trees(self):
        assert own_tree(Graph.from_edges(1, [])).leaves() == set()
        assert own_tree(path_graph(2)).leaves() == {0, 1}


class TestPaths:
    def test_examples(self):
        t = own_tree(path_graph(3))
        assert t.path(0, 2) == [0, 1, 2]
        assert t.path(1, 1) == [1]
        s = own_tree(star_graph(3))
        assert s.path(1, 2) == [1, 0, 2]

    def test_step_toward(self):
        assert own_tree(path_graph(3)).step_toward(0, 2) == 1
        assert own_tree(star_graph(3)).step_toward(1, 2) == 0
        t = own_tree(H_TREE)
        for u, v in t.edges:
            assert t.step_toward(u, v) == v and t.step_toward(v, u) == u
        with pytest.raises(TreeError):
            t.step_toward(2, 2)

    def test_far_endpoint(self):
        tri = complete_graph(3)
        t = SpanningTree(tri, [(0, 1), (1, 2)])
        assert t.far_endpoint((1, 2), 0) == 2
        assert t.far_endpoint((0, 1), 0) == 1
        p4 = own_tree(path_graph(4))
        assert p4.far_endpoint((0, 1), 3) == 0
        with pytest.raises(TreeError):
            p4.far_endpoint((0, 2), 3)


class TestOblique:
    def test_examples(self):
        t = SpanningTree(complete_graph(3), [(0, 1), (1, 2)])
        assert is_oblique_neighbor(t, 0, (1, 2))
        assert is_oblique_neighbor(t, 1, (1, 2))
        p3 = own_tree(path_graph(3))
        assert not is_oblique_neighbor(p3, 0, (1, 2))
        assert oblique_neighbors_in(t, (1, 2), []) == set()
        assert oblique_neighbors_in(t, (1, 2), [0]) == {0}
        assert oblique_neighbors_in(p3, (1, 2), [0]) == set()

    def test_pseudoadjacency(self):
        p4 = own_tree(path_graph(4))
        assert pseudoadjacent(p4, 0, 1)
        # brute force over the three edges of P_4
        assert not any(p4.graph.has_edge(0, brute_far_endpoint(p4, e, 0))
                       and p4.graph.has_edge(3, brute_far_endpoint(p4, e, 3)) for e in p4.edges)
        assert not pseudoadjacent(p4, 0, 3)
        c4 = SpanningTree(cycle_graph(4), [(0, 1), (1, 2), (2, 3)])
        assert pseudoadjacency_witness(c4, 0, 3) == (0, 1)


class TestStem:
    def test_examples(self):
        assert own_tree(star_graph(3)).reducible_stem() == {0}
        legs222 = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        assert own_tree(legs222).reducible_stem() == {0}
        assert own_tree(H_TREE).reducible_stem() == {1, 2}

    def test_path_has_no_stem(self):
        with pytest.raises(TreeError, match="no branch"):
            own_tree(path_graph(4)).reducible_stem()

    def test_nearest_branch(self):
        assert own_tree(star_graph(3)).nearest_branch(2) == 0
        legs222 = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
        assert own_tree(legs222).nearest_branch(6) == 0
        assert own_tree(H_TREE).nearest_branch(0) == 1
        with pytest.raises(TreeError):
            own_tree(path_graph(3)).nearest_branch(0)

    def test_branch_pairs(self):
        assert own_tree(H_TREE).branch_pairs() == [(1, 2)]
        assert own_tree(star_graph(3)).branch_pairs() == []


class TestSerialization:
    def test_parent_line_round_trip(self):
        t = own_tree(H_TREE)
        line = t.to_parent_line()
        assert line == "6: -1 0 1 2 1 2"
        assert parse_parent_line(H_TREE, line) == t

    def test_rejects_non_trees(self):
        with pytest.raises(TreeError):
            SpanningTree(cycle_graph(4), cycle_graph(4).edges())
        with pytest.raises(TreeError):
            SpanningTree(path_graph(3), [(0, 2), (0, 1)])
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        with pytest.raises(TreeError, match="connected"):
            SpanningTree(g, [(0, 1), (1, 2), (2, 0)])


@settings(max_examples=300)
@given(graph_with_tree(max_n=10))
def test_oblique_degree_equals_graph_degree(pair):
    g, t = pair
    for v in g.vertices:
        assert oblique_degree(t, v) == g.degree(v)


@settings(max_examples=200)
@given(graph_with_tree(max_n=10))
def test_tree_identities(pair):
    g, t = pair
    assert len(t.leaves()) == 2 + sum(t.degree(b) - 2 for b in t.branch_vertices())
    for u in g.vertices:
        for v in g.vertices:
            assert t.path(u, v) == t.path(v, u)[::-1]
    for a, b in t.edges:
        for v in g.vertices:
            assert t.far_endpoint((a, b), v) == brute_far_endpoint(t, (a, b), v)
        assert {t.far_endpoint((a, b), a), t.far_endpoint((a, b), b)} == {a, b}
    if t.branch_vertices():
        stem = t.reducible_stem()
        assert t.branch_vertices() <= stem
        start = min(stem)
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in t.adj[x]:
                if y in stem and y not in seen:
                    seen.add(y)
                    stack.append(y)
        assert seen == stem
