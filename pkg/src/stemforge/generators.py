"""Instance generators: the path-plus-cliques sharpness family and random K_{1,4}-free graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, find_induced_star, is_connected


@dataclass(frozen=True)
class SharpnessGraph:
    graph: Graph
    k: int
    p: int
    path: tuple[int, ...]
    blobs: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def stated_order(self) -> int:
        """``k + 1 + (k + 2) p``, the order quoted alongside this family; the
        construction itself has k + 3 cliques, so the true order is
        ``k + 1 + (k + 3) p``."""
        return self.k + 1 + (self.k + 2) * self.p


def sharpness_family(k: int, p: int, *, allow_k0: bool = False) -> SharpnessGraph:
    """Path x_1..x_{k+1} with k+3 copies D_0..D_{k+2} of K_p attached.

    x_i is joined to all of D_i, x_1 additionally to D_0 and x_{k+1} to
    D_{k+2}.  Path vertices come first, then the cliques in index order.
    With ``allow_k0`` the path is the single vertex x_1 carrying D_0, D_1, D_2.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if k < 0 or (k == 0 and not allow_k0):
        raise ValueError("k must be >= 1 (k = 0 needs allow_k0)")
    path = tuple(range(k + 1))
    blobs = []
    nxt = k + 1
    for _ in range(k + 3):
        blobs.append(tuple(range(nxt, nxt + p)))
        nxt += p
    edges = [(i, i + 1) for i in range(k)]
    for blob in blobs:
        edges.extend(combinations(blob, 2))
    attach = [0] + list(range(k + 1)) + [k]  # D_0 -> x_1, D_i -> x_i, D_{k+2} -> x_{k+1}
    for i, blob in enumerate(blobs):
        edges.extend((path[attach[i]], w) for w in blob)
    return SharpnessGraph(Graph.from_edges(nxt, edges), k, p, path, tuple(blobs))


def sharpness_graph(k: int, p: int, *, allow_k0: bool = False) -> Graph:
    return sharpness_family(k, p, allow_k0=allow_k0).graph


class GenerationError(RuntimeError):
    pass


def random_connected_k14_free(n: int, edge_prob: float, seed, max_tries: int = 1000) -> Graph:
    """Rejection-sample G(n, edge_prob) until connected and K_{1,4}-free.

    Deterministic in ``seed``.  Sparse graphs on many vertices are rarely
    both, so raise ``edge_prob`` when this runs out of tries.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < edge_prob < 1:
        raise ValueError("edge_prob must lie strictly between 0 and 1")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    for _ in range(max_tries):
        g = Graph.from_edges(n, [e for e in pairs if rng.random() < edge_prob])
        if is_connected(g) and find_induced_star(g, 4) is None:
            return g
    raise GenerationError(f"no connected K_1,4-free graph in {max_tries} tries "
                          f"(n={n}, edge_prob={edge_prob})")
