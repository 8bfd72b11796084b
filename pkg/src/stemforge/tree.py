"""Spanning trees of a host graph and the tree-relative notions used by the search.

A tree edge ``e`` is a canonical ``(min, max)`` pair.  For a vertex ``v``,
``far_endpoint(e, v)`` is the endpoint of ``e`` farther from ``v`` in the tree,
and ``v`` is an *oblique neighbor* of ``e`` when ``v`` is adjacent in the host
graph to that far endpoint.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .graph import Edge, Graph, canon


class TreeError(ValueError):
    pass


class SpanningTree:
    """Immutable spanning tree of ``graph``; shortest-path parents are cached per root."""

    __slots__ = ("graph", "edges", "adj", "_parents")

    def __init__(self, graph: Graph, edges: Iterable[Edge], *, validate: bool = True):
        self.graph = graph
        self.edges = frozenset(canon(u, v) for u, v in edges)
        adj: list[set[int]] = [set() for _ in range(graph.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)
        self._parents: dict[int, list[int]] = {}
        if validate:
            self.validate()

    def validate(self) -> None:
        g = self.graph
        if g.n == 0:
            if self.edges:
                raise TreeError("edges on an empty graph")
            return
        if len(self.edges) != g.n - 1:
            raise TreeError(f"a spanning tree needs {g.n - 1} edges, got {len(self.edges)}")
        for u, v in self.edges:
            if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
                raise TreeError(f"tree edge {u}-{v} is not a graph edge")
        if len(self._parent_table(0)) != g.n or -2 in self._parent_table(0):
            raise TreeError("edge set is not connected")

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> frozenset[int]:
        if self.n <= 1:
            return frozenset()
        return frozenset(v for v in range(self.n) if len(self.adj[v]) == 1)

    def branch_vertices(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if len(self.adj[v]) >= 3)

    def leaf_branch_count(self) -> int:
        return len(self.leaves()) + len(self.branch_vertices())

    def is_path(self) -> bool:
        return not self.branch_vertices()

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SpanningTree) and self.graph == other.graph
                and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, edges={sorted(self.edges)})"

    # -- paths ---------------------------------------------------------------

    def _parent_table(self, root: int) -> list[int]:
        table = self._parents.get(root)
        if table is None:
            table = [-2] * self.n
            table[root] = -1
            stack = [root]
            while stack:
                v = stack.pop()
                for w in self.adj[v]:
                    if table[w] == -2:
                        table[w] = v
                        stack.append(w)
            self._parents[root] = table
        return table

    def path(self, u: int, v: int) -> list[int]:
        """The unique tree path from ``u`` to ``v``, both ends included."""
        parent = self._parent_table(v)
        out = [u]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out

    def distance(self, u: int, v: int) -> int:
        return len(self.path(u, v)) - 1

    def step_toward(self, u: int, v: int) -> int:
        """The tree neighbour of ``u`` on the path to ``v``."""
        if u == v:
            raise TreeError("step_toward needs distinct vertices")
        return self._parent_table(v)[u]

    def far_endpoint(self, e: Edge, v: int) -> int:
        a, b = e
        if canon(a, b) not in self.edges:
            raise TreeError(f"{a}-{b} is not a tree edge")
        parent = self._parent_table(v)
        # the endpoint whose parent toward v is the other endpoint lies farther
        return a if parent[a] == b else b

    def side(self, e: Edge, v: int) -> frozenset[int]:
        """Vertices in the component of T - e containing endpoint ``v`` of ``e``."""
        a, b = e
        other = b if v == a else a
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen and not (x == v and y == other):
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    # -- structure around branch vertices -------------------------------------

    def nearest_branch(self, s: int) -> int:
        """First branch vertex met walking from leaf ``s``."""
        if self.degree(s) != 1:
            raise TreeError(f"{s} is not a leaf")
        prev, cur = -1, s
        while self.degree(cur) < 3:
            nxt = [w for w in self.adj[cur] if w != prev]
            if not nxt:
                raise TreeError("tree has no branch vertices")
            prev, cur = cur, nxt[0]
        return cur

    def leg(self, s: int) -> list[int]:
        """Vertices from leaf ``s`` up to, excluding, its nearest branch vertex."""
        b = self.nearest_branch(s)
        return self.path(s, b)[:-1]

    def reducible_stem(self) -> frozenset[int]:
        if not self.branch_vertices():
            raise TreeError("no branch vertices: reducible stem undefined")
        pruned: set[int] = set()
        for x in self.leaves():
            pruned.update(self.leg(x))
        return frozenset(range(self.n)) - pruned

    def branch_pairs(self) -> list[tuple[int, int]]:
        """Pairs b < r of branch vertices whose tree path has no other branch vertex."""
        branch = self.branch_vertices()
        pairs = []
        for b in sorted(branch):
            for first in sorted(self.adj[b]):
                prev, cur = b, first
                while cur not in branch and self.degree(cur) == 2:
                    prev, cur = cur, next(w for w in self.adj[cur] if w != prev)
                if cur in branch and b < cur:
                    pairs.append((b, cur))
        return sorted(pairs)

    # -- serialization ---------------------------------------------------------

    def parent_array(self, root: int = 0) -> list[int]:
        if self.n == 0:
            return []
        return list(self._parent_table(root))

    def to_parent_line(self, root: int = 0) -> str:
        return f"{self.n}: " + " ".join(str(p) for p in self.parent_array(root))

    @classmethod
    def from_parent_array(cls, graph: Graph, parents: list[int]) -> "SpanningTree":
        if len(parents) != graph.n:
            raise TreeError("parent array length differs from n")
        return cls(graph, [(v, p) for v, p in enumerate(parents) if p != -1])


def parse_parent_line(graph: Graph, line: str) -> SpanningTree:
    head, _, rest = line.partition(":")
    n = int(head)
    if n != graph.n:
        raise TreeError(f"tree is on {n} vertices, graph has {graph.n}")
    return SpanningTree.from_parent_array(graph, [int(x) for x in rest.split()])


def is_oblique_neighbor(t: SpanningTree, v: int, e: Edge) -> bool:
    return t.graph.has_edge(v, t.far_endpoint(e, v))


def oblique_neighbors_in(t: SpanningTree, e: Edge, xs: Iterable[int]) -> frozenset[int]:
    return frozenset(x for x in xs if is_oblique_neighbor(t, x, e))


def pseudoadjacency_witness(t: SpanningTree, u: int, v: int) -> Optional[Edge]:
    """Smallest tree edge having both ``u`` and ``v`` as oblique neighbours, if any."""
    if u == v:
        raise TreeError("pseudoadjacency needs distinct vertices")
    for e in sorted(t.edges):
        if is_oblique_neighbor(t, u, e) and is_oblique_neighbor(t, v, e):
            return e
    return None


def pseudoadjacent(t: SpanningTree, u: int, v: int) -> bool:
    return pseudoadjacency_witness(t, u, v) is not None


def oblique_degree(t: SpanningTree, v: int) -> int:
    """Number of tree edges having ``v`` as an oblique neighbour (equals deg_G(v))."""
    return sum(1 for e in t.edges if is_oblique_neighbor(t, v, e))
