"""Simple undirected graphs on vertices 0..n-1 and their brute-force invariants."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, int]

# Exponential routines (alpha, sigma_p) are meant for desk-scale graphs.
SOFT_LIMIT = 20


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at {v}")
            for w in nbrs:
                if not 0 <= w < self.n or v not in self.adj[w]:
                    raise ValueError(f"asymmetric or out-of-range adjacency {v}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(not self.has_edge(a, b) for a, b in combinations(vs, 2))


# --------------------------------------------------------------------------
# Text formats
# --------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the canonical edge-list format.

    First meaningful line is ``n m``; then ``m`` lines ``u v``.  Blank lines
    and ``#`` comments are skipped.  Errors report the 1-based line number.
    """
    header: Optional[tuple[int, int]] = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"non-integer token in {line!r}", lineno) from None
        if len(nums) != 2:
            what = "header must be 'n m'" if header is None else "edge line must be 'u v'"
            raise GraphFormatError(what, lineno)
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (n, m)
            continue
        u, v = nums
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", lineno)
        e = canon(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e[0]} {e[1]}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing header 'n m'")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def _g6_size(data: list[int]) -> tuple[int, int]:
    if not data:
        raise GraphFormatError("empty graph6 string")
    if data[0] < 63:
        return data[0], 1
    if len(data) >= 4 and data[1] < 63:
        return (data[1] << 12) | (data[2] << 6) | data[3], 4
    if len(data) >= 8:
        n = 0
        for c in data[2:8]:
            n = (n << 6) | c
        return n, 8
    raise GraphFormatError("truncated graph6 size field")


def parse_graph6(text: str) -> Graph:
    """Read one graph6 string (optional ``>>graph6<<`` header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d < 64 for d in data):
        raise GraphFormatError("invalid graph6 character")
    n, offset = _g6_size(data)
    bits = []
    for d in data[offset:]:
        bits.extend((d >> (5 - i)) & 1 for i in range(6))
    need = n * (n - 1) // 2
    if len(bits) < need or len(data) - offset != (need + 5) // 6:
        raise GraphFormatError(f"graph6 body length does not match n={n}")
    edges = []
    k = 0
    # upper triangle, column-major: (0,1),(0,2),(1,2),(0,3),...
    for v in range(1, n):
        for u in range(v):
            if bits[k]:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        head = [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    bits = [1 if g.has_edge(u, v) else 0 for v in range(1, n) for u in range(v)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return "".join(chr(c + 63) for c in head + body)


def parse_graph(text: str) -> Graph:
    """Auto-detect edge-list versus graph6 input."""
    meaningful = [ln.strip() for ln in text.splitlines()
                  if ln.strip() and not ln.strip().startswith("#")]
    if not meaningful:
        raise GraphFormatError("empty input")
    first = meaningful[0]
    if first.startswith(">>graph6<<") or (len(meaningful) == 1 and " " not in first
                                          and not first.isdigit()):
        return parse_graph6(first)
    return parse_edge_list(text)


# --------------------------------------------------------------------------
# Invariants
# --------------------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


@dataclass(frozen=True)
class StarWitness:
    """An induced K_{1,r}: ``center`` adjacent to every leaf, leaves pairwise non-adjacent."""

    center: int
    leaves: tuple[int, ...]

    def verify(self, g: Graph) -> bool:
        return (all(g.has_edge(self.center, x) for x in self.leaves)
                and self.center not in self.leaves
                and len(set(self.leaves)) == len(self.leaves)
                and g.is_independent(self.leaves))


def find_induced_star(g: Graph, r: int) -> Optional[StarWitness]:
    """Lexicographically smallest induced K_{1,r}, or None when the graph is K_{1,r}-free."""
    if r < 1:
        raise ValueError("r must be >= 1")
    for v in g.vertices:
        nbrs = sorted(g.adj[v])
        if len(nbrs) < r:
            continue
        for combo in _independent_subsets(g, nbrs, r):
            return StarWitness(v, combo)
    return None


def is_k1r_free(g: Graph, r: int) -> bool:
    return find_induced_star(g, r) is None


def _independent_subsets(g: Graph, pool: Sequence[int], size: int) -> Iterator[tuple[int, ...]]:
    """Independent ``size``-subsets of ``pool`` in lexicographic order (pool sorted)."""
    chosen: list[int] = []

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for i in range(start, len(pool) - (size - len(chosen)) + 1):
            w = pool[i]
            if any(w in g.adj[c] for c in chosen):
                continue
            chosen.append(w)
            yield from rec(i + 1)
            chosen.pop()

    yield from rec(0)


def independent_sets(g: Graph, size: int) -> Iterator[tuple[int, ...]]:
    """All independent vertex sets of exactly ``size`` vertices, lexicographic."""
    return _independent_subsets(g, list(g.vertices), size)


def _soft_limit(g: Graph, what: str) -> None:
    if g.n > SOFT_LIMIT:
        warnings.warn(f"{what} is exponential; n={g.n} exceeds {SOFT_LIMIT}", stacklevel=3)


def independence_number(g: Graph) -> int:
    _soft_limit(g, "independence_number")
    best = 0

    def rec(candidates: frozenset[int], size: int) -> None:
        nonlocal best
        if not candidates:
            best = max(best, size)
            return
        if size + len(candidates) <= best:
            return
        v = min(candidates, key=lambda x: (len(g.adj[x] & candidates), x))
        # some maximum independent set contains v or one of its neighbours in candidates
        for w in sorted((g.adj[v] & candidates) | {v}):
            rec(candidates - g.adj[w] - {w}, size + 1)
            candidates = candidates - {w}
            if size + len(candidates) <= best:
                return

    rec(frozenset(g.vertices), 0)
    return best


INF = float("inf")


def sigma_p(g: Graph, p: int) -> float | int:
    """Minimum degree sum over independent p-sets; ``math.inf`` if alpha(g) < p."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    _soft_limit(g, "sigma_p")
    order = sorted(g.vertices, key=lambda v: (g.degree(v), v))
    deg = [g.degree(v) for v in g.vertices]
    best: float | int = INF
    chosen: list[int] = []

    def rec(start: int, total: int) -> None:
        nonlocal best
        need = p - len(chosen)
        if need == 0:
            best = min(best, total)
            return
        for i in range(start, len(order) - need + 1):
            w = order[i]
            # order is degree-ascending, so the cheapest completion starts at w
            if total + deg[w] * need >= best:
                return
            if any(w in g.adj[c] for c in chosen):
                continue
            chosen.append(w)
            rec(i + 1, total + deg[w])
            chosen.pop()

    rec(0, 0)
    return best


def induced(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph, reindexed; returns (subgraph, new-index -> old-vertex map)."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u in keep for v in g.adj[u] if v in index and u < v]
    return Graph.from_edges(len(keep), edges), keep


# Small named graphs, handy in tests and the CLI.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def star_graph(r: int) -> Graph:
    """K_{1,r} with center 0."""
    return Graph.from_edges(r + 1, [(0, i) for i in range(1, r + 1)])
