"""Local search over spanning trees of a K_{1,4}-free graph.

The search keeps a spanning tree and lowers the potential
``(#leaves, -|reducible stem|)`` lexicographically.  Six structural
predicates are checked in order; each violation comes with an edge exchange
that strictly lowers the potential.  When all six hold and the tree still has
more than ``m + k + 2`` leaves plus branch vertices, the tree yields an
independent set ``S`` of ``m + 2`` leaves whose degree sum is at most
``n - 1 - k``, so ``sigma_{m+2}(G) < n - k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .graph import Edge, Graph, StarWitness, canon, find_induced_star, is_connected
from .tree import SpanningTree, TreeError, is_oblique_neighbor


class EngineError(RuntimeError):
    """Internal inconsistency; a correct run on valid input never raises this."""


class MoveError(EngineError):
    pass


class NoChordError(EngineError):
    def __init__(self, message: str, witness: Optional[StarWitness] = None):
        self.witness = witness
        if witness is not None:
            message += f" (induced K_1,4 centre {witness.center}, leaves {list(witness.leaves)})"
        super().__init__(message)


class CertificateError(EngineError):
    pass


class NotK14FreeError(ValueError):
    def __init__(self, witness: StarWitness):
        self.witness = witness
        super().__init__(f"graph has an induced K_1,4: centre {witness.center}, "
                         f"leaves {list(witness.leaves)}")


class DisconnectedError(ValueError):
    pass


# --------------------------------------------------------------------------
# Potential, moves, violations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Potential:
    leaf_count: int
    stem_size: int

    @property
    def key(self) -> tuple[int, int]:
        return (self.leaf_count, -self.stem_size)

    def __lt__(self, other: "Potential") -> bool:
        return self.key < other.key

    def __le__(self, other: "Potential") -> bool:
        return self.key <= other.key


def potential(t: SpanningTree) -> Potential:
    # a path never gets compared on the stem component: the search stops first
    stem = len(t.reducible_stem()) if t.branch_vertices() else -t.n
    return Potential(len(t.leaves()), stem)


@dataclass(frozen=True)
class ClaimViolation:
    claim: int
    witness: dict = field(hash=False)

    def __getitem__(self, key: str):
        return self.witness[key]


@dataclass(frozen=True)
class Move:
    claim: int
    removed: tuple[Edge, ...]
    added: tuple[Edge, ...]
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "removed", tuple(canon(*e) for e in self.removed))
        object.__setattr__(self, "added", tuple(canon(*e) for e in self.added))


def _fmt_edges(edges) -> str:
    return ",".join(f"{u}-{v}" for u, v in edges)


def trace_line(mv: Move, t: SpanningTree) -> str:
    """One log line for a move, with the counts of the tree it produced."""
    stem = len(t.reducible_stem()) if t.branch_vertices() else "-"
    return (f"claim={mv.claim} remove={_fmt_edges(mv.removed)} add={_fmt_edges(mv.added)} "
            f"L={len(t.leaves())} B={len(t.branch_vertices())} stem={stem}")


# --------------------------------------------------------------------------
# Initial tree
# --------------------------------------------------------------------------

def initial_tree(g: Graph) -> SpanningTree:
    """Depth-first tree from vertex 0, neighbours taken in ascending order."""
    if g.n == 0:
        raise ValueError("empty graph has no spanning tree")
    if not is_connected(g):
        raise DisconnectedError("graph is not connected")
    seen = {0}
    edges = []
    stack = [(0, iter(sorted(g.adj[0])))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                edges.append((v, w))
                stack.append((w, iter(sorted(g.adj[w]))))
                break
        else:
            stack.pop()
    return SpanningTree(g, edges)


# --------------------------------------------------------------------------
# The six predicates.  Each returns the first violation in ascending scan order.
# Later predicates assume the earlier ones hold; improve() checks in order.
# --------------------------------------------------------------------------

def _on_path_to_neighbor(t: SpanningTree, s: int, b: int, x: int) -> bool:
    """For a tree edge b-x: is b on the tree path from s to x?"""
    return s != x and (s == b or t.step_toward(b, s) != x)


def check_claim1(t: SpanningTree) -> Optional[ClaimViolation]:
    g = t.graph
    leaves = sorted(t.leaves())
    for i, s in enumerate(leaves):
        for u in leaves[i + 1:]:
            if g.has_edge(s, u):
                return ClaimViolation(1, {"s": s, "t": u})
    return None


def check_claim2(t: SpanningTree) -> Optional[ClaimViolation]:
    g = t.graph
    branch = sorted(t.branch_vertices())
    for s in sorted(t.leaves()):
        for b in branch:
            for x in sorted(t.adj[b]):
                if g.has_edge(s, x) and _on_path_to_neighbor(t, s, b, x):
                    return ClaimViolation(2, {"s": s, "b": b, "x": x})
    return None


def check_claim3(t: SpanningTree) -> Optional[ClaimViolation]:
    g = t.graph
    leaves = sorted(t.leaves())
    for b, r in t.branch_pairs():
        p = t.path(b, r)
        for i in range(1, len(p)):
            x, xm = p[i], p[i - 1]
            for s in leaves:
                if g.has_edge(s, x) and g.has_edge(s, xm):
                    return ClaimViolation(3, {"b": b, "r": r, "x": x, "x_minus": xm, "s": s})
    return None


def check_claim4(t: SpanningTree) -> Optional[ClaimViolation]:
    g = t.graph
    leaves = sorted(t.leaves())
    for b, r in t.branch_pairs():
        p = t.path(b, r)
        for x in p[1:-1]:
            hits = [s for s in leaves if g.has_edge(s, x)]
            if len(hits) >= 2:
                s, u = hits[0], hits[1]
                # orient the pair so that b lies between s and x
                if b not in t.path(s, x):
                    b, r = r, b
                return ClaimViolation(4, {"b": b, "r": r, "x": x, "s": s, "t": u})
    return None


def check_claim5(t: SpanningTree) -> Optional[ClaimViolation]:
    leaves = sorted(t.leaves())
    edges = sorted(t.edges)
    for i, s in enumerate(leaves):
        for u in leaves[i + 1:]:
            for e in edges:
                gs, gt = t.far_endpoint(e, s), t.far_endpoint(e, u)
                if not (t.graph.has_edge(s, gs) and t.graph.has_edge(u, gt)):
                    continue
                w = {"s": s, "t": u, "e": e}
                if gs != gt:
                    w["case"] = 1
                else:
                    z = e[0] if e[1] == gs else e[1]
                    others = sorted(t.adj[gs] - {z})
                    w.update(case=2, x=gs, z=z, y=others[0] if others else None)
                return ClaimViolation(5, w)
    return None


def check_claim6(t: SpanningTree) -> Optional[ClaimViolation]:
    leaves = sorted(t.leaves())

    def first_oblique(e: Edge) -> Optional[int]:
        return next((s for s in leaves if is_oblique_neighbor(t, s, e)), None)

    for b, r in t.branch_pairs():
        p = t.path(b, r)
        path_edges = [canon(p[i], p[i + 1]) for i in range(len(p) - 1)]
        if any(first_oblique(e) is None for e in path_edges):
            continue
        w = {"b": b, "r": r}
        if len(p) >= 3:
            x = p[1]
            e, f = canon(b, x), canon(x, p[2])
            w.update(x=x, x_plus=p[2], e=e, f=f, t=first_oblique(e), s=first_oblique(f))
        return ClaimViolation(6, w)
    return None


CHECKS: tuple[Callable[[SpanningTree], Optional[ClaimViolation]], ...] = (
    check_claim1, check_claim2, check_claim3, check_claim4, check_claim5, check_claim6,
)


def first_violation(t: SpanningTree) -> Optional[ClaimViolation]:
    for check in CHECKS:
        v = check(t)
        if v is not None:
            return v
    return None


# --------------------------------------------------------------------------
# Move derivation
# --------------------------------------------------------------------------

def _branch_edge(t: SpanningTree, s: int) -> tuple[int, int]:
    """(b, b_s): nearest branch vertex of leaf s and its tree neighbour toward s."""
    b = t.nearest_branch(s)
    return b, t.step_toward(b, s)


def _star_or_none(g: Graph, center: int, leaves) -> Optional[StarWitness]:
    w = StarWitness(center, tuple(leaves))
    return w if w.verify(g) else None


def derive_move(t: SpanningTree, v: ClaimViolation) -> Move:
    try:
        return _DERIVE[v.claim](t, v)
    except TreeError as exc:
        raise MoveError(f"claim {v.claim}: cannot derive move from {v.witness}: {exc}") from exc


def _move1(t: SpanningTree, v: ClaimViolation) -> Move:
    s, u = v["s"], v["t"]
    b, bs = _branch_edge(t, s)
    return Move(1, ((b, bs),), ((s, u),), f"leaves {s},{u} adjacent")


def _move2(t: SpanningTree, v: ClaimViolation) -> Move:
    s, b, x = v["s"], v["b"], v["x"]
    return Move(2, ((b, x),), ((s, x),), f"leaf {s} sees {x} beyond branch {b}")


def _move3(t: SpanningTree, v: ClaimViolation) -> Move:
    s, x, xm = v["s"], v["x"], v["x_minus"]
    c = t.nearest_branch(s)
    sc = t.step_toward(s, c)
    if sc in (x, xm):
        raise MoveError(f"claim 3 witness {v.witness} is a claim 2 configuration")
    return Move(3, ((x, xm), (s, sc)), ((s, x), (s, xm)), f"leaf {s} sees {xm}-{x}")


def _move4(t: SpanningTree, v: ClaimViolation) -> Move:
    g = t.graph
    b, r, x, s, u = v["b"], v["r"], v["x"], v["s"], v["t"]
    p = t.path(b, r)
    i = p.index(x)
    xm, xp = p[i - 1], p[i + 1]
    if xm == b:
        raise MoveError(f"claim 4 witness {v.witness} is a claim 2 configuration")
    if not g.has_edge(xm, xp):
        raise NoChordError(f"claim 4: {xm}-{xp} missing", _star_or_none(g, x, (s, u, xm, xp)))
    c, cs = _branch_edge(t, s)
    return Move(4, ((x, xm), (x, xp), (c, cs)), ((s, x), (u, x), (xm, xp)),
                f"interior {x} sees leaves {s},{u}")


def _move5(t: SpanningTree, v: ClaimViolation) -> Move:
    g = t.graph
    s, u, e = v["s"], v["t"], v["e"]
    b, bs = _branch_edge(t, s)
    if v["case"] == 1:
        e_t = t.far_endpoint(e, s)
        e_s = t.far_endpoint(e, u)
        return Move(5, (e, (b, bs)), ((s, e_t), (u, e_s)), f"case 1 on {e}")
    x, y, z = v["x"], v["y"], v["z"]
    if y is None:
        raise MoveError(f"claim 5 witness {v.witness}: {x} is a leaf (claim 1 configuration)")
    c, ct = _branch_edge(t, u)
    if g.has_edge(s, z):
        return Move(5, ((b, bs), e), ((s, z), (u, x)), "case 2, sz")
    if g.has_edge(u, z):
        return Move(5, ((c, ct), e), ((u, z), (s, x)), "case 2, tz")
    # the y-chord exchanges cut x-y, not e: cutting e would strand z as a new leaf
    if g.has_edge(s, y):
        return Move(5, ((c, ct), (x, y)), ((s, y), (u, x)), "case 2, sy")
    if g.has_edge(u, y):
        return Move(5, ((b, bs), (x, y)), ((u, y), (s, x)), "case 2, ty")
    if g.has_edge(y, z):
        return Move(5, (e, (x, y), (b, bs)), ((s, x), (u, x), (y, z)), "case 2, yz")
    raise NoChordError(f"claim 5 case 2 at {x}: no chord among s,t,y,z",
                       _star_or_none(g, x, (y, z, s, u)))


def _move6(t: SpanningTree, v: ClaimViolation) -> Move:
    g = t.graph
    b = v["b"]
    if "x" not in v.witness:
        raise MoveError(f"claim 6 on adjacent branch pair {v.witness}: claim 2 configuration")
    x, xp, e, f, s, u = v["x"], v["x_plus"], v["e"], v["f"], v["s"], v["t"]
    if t.far_endpoint(e, u) != b:
        raise MoveError(f"claim 6 witness {v.witness} is a claim 2 configuration")
    if t.far_endpoint(f, s) == x:
        if s == u:
            raise MoveError(f"claim 6 witness {v.witness} is a claim 3 configuration")
        c, cs = _branch_edge(t, s)
        return Move(6, (e, (c, cs)), ((u, b), (s, x)), "leaf sees x")
    bs = t.step_toward(b, s)
    y = min(t.adj[b] - {x, bs})
    if g.has_edge(x, y):
        return Move(6, ((b, x), (b, y)), ((b, u), (x, y)), "chord xy")
    if g.has_edge(x, bs):
        return Move(6, ((b, x), (b, bs)), ((b, u), (x, bs)), "chord x b_s")
    if g.has_edge(y, bs):
        return Move(6, ((b, y), (b, bs), (x, xp)), ((b, u), (s, xp), (y, bs)), "chord y b_s")
    raise NoChordError(f"claim 6 at branch {b}: no chord among x, b_s, y",
                       _star_or_none(g, b, (x, bs, y, u)))


_DERIVE = {1: _move1, 2: _move2, 3: _move3, 4: _move4, 5: _move5, 6: _move6}


def apply_move(t: SpanningTree, mv: Move, *, check: bool = True) -> SpanningTree:
    """Apply an edge exchange; with ``check`` also demand a strict potential drop."""
    g = t.graph
    removed, added = set(mv.removed), set(mv.added)
    if len(removed) != len(mv.removed) or len(added) != len(mv.added):
        raise MoveError(f"repeated edge in move {mv}")
    if len(removed) != len(added):
        raise MoveError(f"unbalanced move {mv}")
    if not removed <= t.edges:
        raise MoveError(f"move removes non-tree edges {sorted(removed - t.edges)}: {mv}")
    for e in added:
        if e in t.edges or not g.has_edge(*e):
            raise MoveError(f"move adds {e}, which is a tree edge or not a graph edge: {mv}")
    try:
        new = SpanningTree(g, (t.edges - removed) | added)
    except TreeError as exc:
        raise MoveError(f"move {mv} does not give a spanning tree: {exc}") from exc
    if check:
        before, after = potential(t), potential(new)
        if not after < before:
            raise MoveError(f"move {mv} does not lower the potential: "
                            f"{before.key} -> {after.key}")
    return new


# --------------------------------------------------------------------------
# Certificate and the main loop
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    S: tuple[int, ...]
    h: int
    degree_sum: int


def uncovered_edges(t: SpanningTree, S) -> list[Edge]:
    """Tree edges with no oblique neighbour in S."""
    return [e for e in sorted(t.edges) if not any(is_oblique_neighbor(t, s, e) for s in S)]


def build_certificate(t: SpanningTree, k: int, m: int) -> Certificate:
    g, n = t.graph, t.n
    L, B = t.leaves(), t.branch_vertices()
    if len(L) + len(B) < m + k + 3:
        raise ValueError(f"tree already has |L|+|B| = {len(L) + len(B)} <= m+k+2 = {m + k + 2}")
    if m > k + 1:
        raise ValueError("need m <= k + 1")
    v = first_violation(t)
    if v is not None:
        raise ValueError(f"claim {v.claim} fails on this tree: {v.witness}")
    if len(L) < m + 2:
        raise CertificateError(f"only {len(L)} leaves, need m+2 = {m + 2}")
    S = tuple(sorted(L)[: m + 2])
    h = len(uncovered_edges(t, S))
    degree_sum = sum(g.degree(s) for s in S)
    state = f"tree={sorted(t.edges)} S={S} h={h} degree_sum={degree_sum}"
    if not g.is_independent(S):
        raise CertificateError(f"S is not independent: {state}")
    if h < k:
        raise CertificateError(f"h = {h} < k = {k}: {state}")
    if degree_sum > n - 1 - h:
        raise CertificateError(f"degree sum exceeds n-1-h: {state}")
    return Certificate(S, h, degree_sum)


@dataclass
class GoodTree:
    tree: SpanningTree
    moves: list[Move]
    trace: list[str]
    status = "good_tree"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "tree": self.tree.parent_array(),
            "leaves": len(self.tree.leaves()),
            "branch_vertices": len(self.tree.branch_vertices()),
            "moves": self.trace,
        }


@dataclass
class HypothesisViolation:
    tree: SpanningTree
    S: tuple[int, ...]
    h: int
    degree_sum: int
    moves: list[Move]
    trace: list[str]
    status = "hypothesis_violation"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "tree": self.tree.parent_array(),
            "leaves": len(self.tree.leaves()),
            "branch_vertices": len(self.tree.branch_vertices()),
            "S": list(self.S),
            "h": self.h,
            "degree_sum": self.degree_sum,
            "moves": self.trace,
        }


Outcome = Union[GoodTree, HypothesisViolation]


def check_input(g: Graph, k: int, m: int) -> None:
    if k < 0 or m < 0:
        raise ValueError("k and m must be non-negative")
    if m > k + 1:
        raise ValueError(f"need m <= k + 1, got k={k}, m={m}")
    if not is_connected(g):
        raise DisconnectedError("graph is not connected")
    star = find_induced_star(g, 4)
    if star is not None:
        raise NotK14FreeError(star)


def improve(g: Graph, k: int, m: int, *, start: Optional[SpanningTree] = None,
            validated: bool = False) -> Outcome:
    """Find a spanning tree with at most m+k+2 leaves plus branch vertices,
    or certify that sigma_{m+2}(g) <= n-1-k."""
    if not validated:
        check_input(g, k, m)
    t = start if start is not None else initial_tree(g)
    moves: list[Move] = []
    trace: list[str] = []
    if g.n <= 2:
        return GoodTree(t, moves, trace)
    bound = m + k + 2
    limit = g.n * g.n
    while t.leaf_branch_count() > bound:
        v = first_violation(t)
        if v is None:
            cert = build_certificate(t, k, m)
            return HypothesisViolation(t, cert.S, cert.h, cert.degree_sum, moves, trace)
        mv = derive_move(t, v)
        t = apply_move(t, mv)
        moves.append(mv)
        trace.append(trace_line(mv, t))
        if len(moves) > limit:
            raise EngineError(f"more than n^2 = {limit} moves")
    return GoodTree(t, moves, trace)
