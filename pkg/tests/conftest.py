import random
from collections import deque
from itertools import combinations

import pytest
from hypothesis import strategies as st

from stemforge.graph import Graph
from stemforge.tree import SpanningTree


def random_spanning_tree(g: Graph, rng: random.Random) -> SpanningTree:
    """Kruskal over a shuffled edge list."""
    edges = g.edges()
    rng.shuffle(edges)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            chosen.append((u, v))
    return SpanningTree(g, chosen)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """A random spanning tree plus G(n, p) noise, so always connected."""
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    edges |= {e for e in combinations(range(n), 2) if rng.random() < p}
    return Graph.from_edges(n, edges)


def bfs_distances(adj, src):
    dist = {src: 0}
    q = deque([src])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return dist


def brute_far_endpoint(t: SpanningTree, e, v):
    d = bfs_distances(t.adj, v)
    a, b = e
    return a if d[a] > d[b] else b


@st.composite
def connected_graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(p, i) for i, p in enumerate(parents, start=1)}
    extra = draw(st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))),
                         max_size=3 * n))
    edges |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    return Graph.from_edges(n, edges)


@st.composite
def graph_with_tree(draw, min_n=2, max_n=9):
    g = draw(connected_graphs(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return g, random_spanning_tree(g, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(12345)


# Every SpanningTree built in this process is checked against the leaf identity.
LEAF_IDENTITY = {"trees": 0, "failures": []}


def _leaf_identity_holds(t: SpanningTree) -> bool:
    if t.n < 2:
        return True
    return len(t.leaves()) == 2 + sum(t.degree(b) - 2 for b in t.branch_vertices())


@pytest.fixture(autouse=True, scope="session")
def _watch_leaf_identity():
    original = SpanningTree.__init__

    def init(self, *args, **kwargs):
        original(self, *args, **kwargs)
        LEAF_IDENTITY["trees"] += 1
        if not _leaf_identity_holds(self):
            LEAF_IDENTITY["failures"].append(sorted(self.edges))

    SpanningTree.__init__ = init
    yield
    SpanningTree.__init__ = original


def pytest_terminal_summary(terminalreporter):
    bad = LEAF_IDENTITY["failures"]
    terminalreporter.write_line(
        f"leaf identity: {LEAF_IDENTITY['trees']} trees checked, {len(bad)} failures")
    if bad:
        terminalreporter.write_line(f"first failing tree: {bad[0]}")


def pytest_sessionfinish(session, exitstatus):
    if LEAF_IDENTITY["failures"] and exitstatus == 0:
        session.exitstatus = 1
