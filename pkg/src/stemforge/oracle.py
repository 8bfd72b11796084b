"""Exhaustive ground truth for small graphs, and sweeps comparing it to the search."""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import inf
from pathlib import Path
from typing import Iterator, Optional

from .engine import EngineError, GoodTree, apply_move, improve, initial_tree, potential
from .generators import random_connected_k14_free
from .graph import Edge, Graph, find_induced_star, is_connected, sigma_p, to_edge_list
from .tree import SpanningTree

COUNTEREXAMPLE_ENV = "STEMFORGE_COUNTEREXAMPLE_DIR"
DEFAULT_COUNTEREXAMPLE_DIR = "counterexamples"
MAX_EXHAUSTIVE_N = 8


# --------------------------------------------------------------------------
# Spanning-tree enumeration
# --------------------------------------------------------------------------

def _connected_without(g: Graph, dead: set[Edge]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w not in seen and (min(v, w), max(v, w)) not in dead:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _grow(g: Graph, score=None, bound=None) -> Iterator[list[Edge]]:
    """Grow trees from vertex 0; each branch includes or deletes one frontier edge.

    Deletion is only taken when the remaining graph stays connected, so every
    branch ends in a spanning tree and each tree appears exactly once.  New
    frontier edges go on top of the stack, so early trees are long paths.
    With ``score``/``bound``, subtrees whose partial score is already
    ``>= bound()`` are skipped.
    """
    n = g.n
    if n == 0:
        return
    in_tree = [False] * n
    in_tree[0] = True
    deg = [0] * n
    tree: list[Edge] = []
    dead: set[Edge] = set()

    def rec(frontier: list[Edge]) -> Iterator[list[Edge]]:
        if len(tree) == n - 1:
            yield list(tree)
            return
        if score is not None and score(deg, tree) >= bound():
            return
        # frontier holds every live edge leaving the tree, so it is never empty here
        u, v = frontier[-1]
        rest = frontier[:-1]
        # include u-v
        in_tree[v] = True
        e = (min(u, v), max(u, v))
        tree.append(e)
        deg[u] += 1
        deg[v] += 1
        grown = [f for f in rest if f[1] != v]
        grown += [(v, w) for w in sorted(g.adj[v], reverse=True) if not in_tree[w]]
        yield from rec(grown)
        deg[u] -= 1
        deg[v] -= 1
        tree.pop()
        in_tree[v] = False
        # delete u-v, unless it is a bridge of what is left
        dead.add(e)
        if _connected_without(g, dead):
            yield from rec(rest)
        dead.discard(e)

    if n == 1:
        yield []
        return
    yield from rec([(0, w) for w in sorted(g.adj[0], reverse=True)])


def enumerate_spanning_trees(g: Graph) -> Iterator[SpanningTree]:
    if not is_connected(g):
        raise ValueError("graph is not connected")
    for edges in _grow(g):
        yield SpanningTree(g, edges, validate=False)


def count_spanning_trees(g: Graph) -> int:
    if not is_connected(g):
        return 0
    return sum(1 for _ in _grow(g))


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [row[:] for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def matrix_tree_count(g: Graph) -> int:
    """Spanning-tree count as a cofactor of the Laplacian."""
    if g.n <= 1:
        return 1
    lap = [[0] * g.n for _ in range(g.n)]
    for v in g.vertices:
        lap[v][v] = g.degree(v)
        for w in g.adj[v]:
            lap[v][w] = -1
    return bareiss_determinant([row[1:] for row in lap[1:]])


# --------------------------------------------------------------------------
# Exact minima
# --------------------------------------------------------------------------

def _leaf_branch(deg: list[int]) -> int:
    return sum(1 for d in deg if d == 1 or d >= 3)


def _minimize(g: Graph, final_value, partial_bound) -> tuple[int, Optional[SpanningTree]]:
    if not is_connected(g):
        raise ValueError("graph is not connected")
    if g.n <= 1:
        return 0, SpanningTree(g, [])
    best = [inf, None]
    floor = 2
    for edges in _grow(g, partial_bound, lambda: best[0]):
        deg = [0] * g.n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        val = final_value(deg)
        if val < best[0]:
            best = [val, edges]
            if val <= floor:
                break
    return int(best[0]), SpanningTree(g, best[1])


def _lb_leaf_branch(deg: list[int], tree) -> int:
    # degrees only grow: current branch vertices stay branch, and every tree has
    # at least 2 + sum(deg(b) - 2) leaves
    excess = sum(d - 2 for d in deg if d >= 3)
    nb = sum(1 for d in deg if d >= 3)
    return 2 + excess + nb


def _lb_leaves(deg: list[int], tree) -> int:
    return 2 + sum(d - 2 for d in deg if d >= 3)


def min_leaf_branch(g: Graph) -> tuple[int, SpanningTree]:
    """Exact minimum of |L(T)| + |B(T)| over spanning trees, with a witness.

    Exhaustive over the grow enumeration, skipping only subtrees whose
    partial lower bound already reaches the best value found.
    """
    return _minimize(g, _leaf_branch, _lb_leaf_branch)


def min_leaves(g: Graph) -> tuple[int, SpanningTree]:
    return _minimize(g, lambda deg: sum(1 for d in deg if d == 1), _lb_leaves)


# --------------------------------------------------------------------------
# Theorem checks
# --------------------------------------------------------------------------

@dataclass
class CheckRecord:
    k: int
    m: int
    hypothesis: bool
    conclusion: bool
    outcome: str
    moves: int
    theorem_ok: bool
    good_tree_ok: bool
    violation_ok: bool
    descent_ok: bool
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.theorem_ok and self.good_tree_ok and self.violation_ok and self.descent_ok


@dataclass
class GraphFacts:
    """Per-graph quantities shared by every (k, m) check."""

    graph: Graph
    min_lb: int
    witness: SpanningTree
    sigma: dict[int, float] = field(default_factory=dict)

    @classmethod
    def of(cls, g: Graph) -> "GraphFacts":
        val, wit = min_leaf_branch(g)
        return cls(g, val, wit)

    def sigma_of(self, p: int):
        if p not in self.sigma:
            self.sigma[p] = sigma_p(self.graph, p)
        return self.sigma[p]


def _verify_descent(g: Graph, out) -> bool:
    """Replay the move list from the initial tree: strict descent, at most n^2 moves."""
    if len(out.moves) > g.n * g.n:
        return False
    if not out.moves:
        return True
    t = initial_tree(g)
    for mv in out.moves:
        before = potential(t)
        t = apply_move(t, mv, check=False)
        if not potential(t) < before:
            return False
    return t == out.tree


def theorem_check(g: Graph, k: int, m: int, facts: Optional[GraphFacts] = None) -> CheckRecord:
    """Hypothesis sigma_{m+2} >= n-k versus exact minimum versus the search outcome."""
    if facts is None:
        if not is_connected(g):
            raise ValueError("graph is not connected")
        if find_induced_star(g, 4) is not None:
            raise ValueError("graph is not K_1,4-free")
        facts = GraphFacts.of(g)
    if m > k + 1:
        raise ValueError("need m <= k + 1")
    n = g.n
    sig = facts.sigma_of(m + 2)
    hypothesis = sig >= n - k
    bound = m + k + 2
    conclusion = facts.min_lb <= bound
    try:
        out = improve(g, k, m, validated=True)
    except EngineError as exc:
        return CheckRecord(k, m, hypothesis, conclusion, "error", -1,
                           not hypothesis or conclusion, False, False, False, str(exc))
    good_ok = viol_ok = True
    t = out.tree
    lb = t.leaf_branch_count()
    if isinstance(out, GoodTree):
        good_ok = (lb <= bound and lb >= facts.min_lb
                   and all(g.has_edge(*e) for e in t.edges) and len(t.edges) == n - 1)
    else:
        S = out.S
        viol_ok = (len(S) == m + 2 and g.is_independent(S)
                   and out.degree_sum == sum(g.degree(s) for s in S)
                   and out.degree_sum <= n - 1 - k and sig <= n - 1 - k)
    return CheckRecord(k, m, hypothesis, conclusion, out.status, len(out.moves),
                       not hypothesis or conclusion, good_ok, viol_ok,
                       _verify_descent(g, out))


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

@dataclass
class SweepReport:
    graphs_scanned: int = 0
    k14free_count: int = 0
    checks_run: int = 0
    hypothesis_true: int = 0
    good_trees: int = 0
    violations: int = 0
    max_moves: int = 0
    max_move_ratio: float = 0.0
    counterexamples: int = 0
    counterexample_records: list = field(default_factory=list)

    def merge(self, other: "SweepReport") -> "SweepReport":
        for name in ("graphs_scanned", "k14free_count", "checks_run", "hypothesis_true",
                     "good_trees", "violations", "counterexamples"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.max_moves = max(self.max_moves, other.max_moves)
        self.max_move_ratio = max(self.max_move_ratio, other.max_move_ratio)
        self.counterexample_records.extend(other.counterexample_records)
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [f"{k}: {v}" for k, v in self.to_dict().items() if k != "counterexample_records"]
        for rec in self.counterexample_records:
            lines.append(f"counterexample: {json.dumps(rec, sort_keys=True)}")
        return "\n".join(lines) + "\n"


def _check_graph(g: Graph, k_max: int, report: SweepReport) -> None:
    report.graphs_scanned += 1
    if not is_connected(g) or find_induced_star(g, 4) is not None:
        return
    report.k14free_count += 1
    facts = GraphFacts.of(g)
    for k in range(k_max + 1):
        for m in range(k + 2):
            rec = theorem_check(g, k, m, facts)
            report.checks_run += 1
            report.hypothesis_true += rec.hypothesis
            report.good_trees += rec.outcome == "good_tree"
            report.violations += rec.outcome == "hypothesis_violation"
            report.max_moves = max(report.max_moves, rec.moves)
            if g.n:
                report.max_move_ratio = max(report.max_move_ratio, rec.moves / (g.n * g.n))
            if not rec.ok:
                report.counterexamples += 1
                report.counterexample_records.append(
                    {"graph": to_edge_list(g), "record": asdict(rec)})


def _labeled_graphs(n: int, masks) -> Iterator[Graph]:
    pairs = list(combinations(range(n), 2))
    for mask in masks:
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def _exhaustive_slice(args) -> SweepReport:
    n, start, stop, k_max = args
    rep = SweepReport()
    for g in _labeled_graphs(n, range(start, stop)):
        _check_graph(g, k_max, rep)
    return rep


def _run(tasks, worker, jobs: int) -> SweepReport:
    total = SweepReport()
    if jobs <= 1:
        for t in tasks:
            total.merge(worker(t))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for rep in pool.map(worker, tasks):
                total.merge(rep)
    return total


def persist_counterexamples(report: SweepReport, directory: Optional[str] = None) -> Optional[Path]:
    """Write each counterexample graph and record; returns the directory, if anything was written."""
    if not report.counterexample_records:
        return None
    path = Path(directory or os.environ.get(COUNTEREXAMPLE_ENV) or DEFAULT_COUNTEREXAMPLE_DIR)
    path.mkdir(parents=True, exist_ok=True)
    for i, rec in enumerate(report.counterexample_records):
        (path / f"counterexample_{i:04d}.txt").write_text(rec["graph"])
        (path / f"counterexample_{i:04d}.json").write_text(json.dumps(rec, indent=2, sort_keys=True))
    return path


def sweep_exhaustive(n_max: int, k_max: int, *, jobs: int = 1, n_min: int = 1,
                     persist_dir: Optional[str] = None, persist: bool = True) -> SweepReport:
    """Every labeled graph on n_min..n_max vertices, all 0 <= k <= k_max, 0 <= m <= k+1."""
    if n_max > MAX_EXHAUSTIVE_N:
        raise ValueError(f"n_max={n_max} exceeds {MAX_EXHAUSTIVE_N}: 2^(n(n-1)/2) graphs")
    tasks = []
    for n in range(n_min, n_max + 1):
        total = 1 << (n * (n - 1) // 2)
        chunk = max(1, total // (8 * max(jobs, 1)))
        tasks += [(n, s, min(s + chunk, total), k_max) for s in range(0, total, chunk)]
    report = _run(tasks, _exhaustive_slice, jobs)
    if persist:
        persist_counterexamples(report, persist_dir)
    return report


def _random_slice(args) -> SweepReport:
    n, seed, indices, k_max, edge_prob = args
    rep = SweepReport()
    for i in indices:
        rng = random.Random(f"{seed}:{i}")
        p = edge_prob if edge_prob is not None else rng.uniform(0.45, 0.9)
        g = random_connected_k14_free(n, p, f"{seed}:{i}:graph", max_tries=10_000)
        _check_graph(g, k_max, rep)
    return rep


def sweep_random(n: int, samples: int, seed, k_max: int, *, edge_prob: Optional[float] = None,
                 jobs: int = 1, persist_dir: Optional[str] = None,
                 persist: bool = True) -> SweepReport:
    """Random connected K_1,4-free graphs on n vertices; reproducible from ``seed``."""
    step = max(1, samples // (8 * max(jobs, 1)))
    tasks = [(n, seed, range(s, min(s + step, samples)), k_max, edge_prob)
             for s in range(0, samples, step)]
    report = _run(tasks, _random_slice, jobs)
    if persist:
        persist_counterexamples(report, persist_dir)
    return report


@dataclass
class OracleReport:
    graph_id: str
    tree_count: int
    min_leaf_plus_branch: int
    min_leaf_plus_branch_witness: list[int]
    min_leaves: int
    min_leaves_witness: list[int]
    table: list[dict]

    def to_dict(self) -> dict:
        return asdict(self)


def oracle_report(g: Graph, k_max: int = 3, graph_id: str = "") -> OracleReport:
    facts = GraphFacts.of(g)
    ml, mlw = min_leaves(g)
    table = []
    if find_induced_star(g, 4) is None:
        for k in range(k_max + 1):
            for m in range(k + 2):
                rec = theorem_check(g, k, m, facts)
                row = asdict(rec)
                row["ok"] = rec.ok
                table.append(row)
    return OracleReport(graph_id, count_spanning_trees(g), facts.min_lb,
                        facts.witness.parent_array(), ml, mlw.parent_array(), table)
