"""stemforge command line.

    stemforge analyze GRAPH
    stemforge tree GRAPH --k K --m M [--trace]
    stemforge oracle GRAPH [--k-max K]
    stemforge sharpness --k K --p P [--check] [--allow-k0]
    stemforge random --n N --prob P --seed S
    stemforge verify (--exhaustive N_MAX | --random N SAMPLES SEED) [--k-max K] [--jobs J]

GRAPH is a file path or ``-`` for stdin, in edge-list or graph6 format.
Every subcommand takes ``--json``.  Exit codes: 0 success, 2 usage or input
error, 3 a sweep or check found counterexamples.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import isinf

from . import engine
from .generators import GenerationError, random_connected_k14_free, sharpness_family
from .graph import (GraphFormatError, find_induced_star, independence_number, is_connected,
                    parse_graph, sigma_p, to_edge_list)
from .oracle import (COUNTEREXAMPLE_ENV, min_leaf_branch, oracle_report, persist_counterexamples,
                     sweep_exhaustive, sweep_random)

EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3
ORACLE_MAX_N = 10


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return parse_graph(text)


def _sigma_str(value) -> str:
    return "inf" if isinf(value) else str(int(value))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    g = _read_graph(args.graph)
    alpha = independence_number(g)
    free = {r: find_induced_star(g, r) is None for r in (3, 4, 5)}
    sig = {p: sigma_p(g, p) for p in range(1, alpha + 2)}
    payload = {
        "n": g.n, "m": g.num_edges, "connected": is_connected(g),
        "k13_free": free[3], "k14_free": free[4], "k15_free": free[5],
        "alpha": alpha, "sigma": {str(p): _sigma_str(v) for p, v in sig.items()},
    }
    lines = [f"n: {g.n}", f"edges: {g.num_edges}", f"connected: {payload['connected']}",
             f"K_1,3-free: {free[3]}", f"K_1,4-free: {free[4]}", f"K_1,5-free: {free[5]}",
             f"alpha: {alpha}"]
    lines += [f"sigma_{p}: {_sigma_str(v)}" for p, v in sig.items()]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_tree(args) -> int:
    g = _read_graph(args.graph)
    out = engine.improve(g, args.k, args.m)
    payload = out.to_dict()
    t = out.tree
    lines = [f"status: {out.status}", f"tree: {t.to_parent_line()}",
             f"leaves: {len(t.leaves())}", f"branch_vertices: {len(t.branch_vertices())}"]
    if isinstance(out, engine.HypothesisViolation):
        lines += [f"S: {' '.join(map(str, out.S))}", f"h: {out.h}",
                  f"degree_sum: {out.degree_sum}",
                  f"sigma_{args.m + 2} <= {out.degree_sum} <= n-1-k = {g.n - 1 - args.k}"]
    lines.append(f"moves: {len(out.moves)}")
    if args.trace:
        lines += out.trace
    else:
        payload.pop("moves")
        payload["move_count"] = len(out.moves)
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_oracle(args) -> int:
    g = _read_graph(args.graph)
    if g.n > ORACLE_MAX_N:
        print(f"error: oracle is limited to n <= {ORACLE_MAX_N}", file=sys.stderr)
        return EXIT_USAGE
    if not is_connected(g):
        print("error: graph is not connected", file=sys.stderr)
        return EXIT_USAGE
    rep = oracle_report(g, args.k_max, graph_id=args.graph)
    bad = [row for row in rep.table if not row["ok"]]
    lines = [f"tree_count: {rep.tree_count}",
             f"min_leaf_plus_branch: {rep.min_leaf_plus_branch}",
             f"min_leaf_plus_branch_witness: {' '.join(map(str, rep.min_leaf_plus_branch_witness))}",
             f"min_leaves: {rep.min_leaves}",
             f"min_leaves_witness: {' '.join(map(str, rep.min_leaves_witness))}"]
    if not rep.table:
        lines.append("theorem table: skipped (graph is not K_1,4-free)")
    for row in rep.table:
        lines.append(f"k={row['k']} m={row['m']} hypothesis={row['hypothesis']} "
                     f"conclusion={row['conclusion']} outcome={row['outcome']} ok={row['ok']}")
    _emit(args, rep.to_dict(), "\n".join(lines) + "\n")
    return EXIT_COUNTEREXAMPLE if bad else 0


def cmd_sharpness(args) -> int:
    fam = sharpness_family(args.k, args.p, allow_k0=args.allow_k0)
    g, k = fam.graph, args.k
    text = to_edge_list(g)
    notes = []
    if fam.stated_order != g.n:
        notes.append(f"# n={g.n} (k+1+(k+2)p would give {fam.stated_order})")
    if args.allow_k0 and k == 0:
        notes.append("# k=0 extension: no sharpness claim is made")
    failed = False
    payload = {"n": g.n, "k": k, "p": args.p, "edge_list": text}
    if args.check:
        sig = sigma_p(g, k + 3)
        checks = {"connected": is_connected(g), "k14_free": find_induced_star(g, 4) is None,
                  "sigma_eq_n_minus_k_minus_1": sig == g.n - k - 1}
        notes.append(f"# sigma_{k + 3} = {_sigma_str(sig)}, n-k-1 = {g.n - k - 1}")
        if g.n <= ORACLE_MAX_N:
            best, _ = min_leaf_branch(g)
            checks["min_leaf_branch_ge_2k_plus_4"] = best >= 2 * k + 4
            notes.append(f"# min |L|+|B| = {best}, 2k+4 = {2 * k + 4}")
        else:
            notes.append(f"# oracle skipped: n > {ORACLE_MAX_N}")
        notes += [f"# check {name}: {'pass' if ok else 'FAIL'}" for name, ok in checks.items()]
        payload["checks"] = checks
        failed = not all(checks.values())
    _emit(args, payload, text + "".join(line + "\n" for line in notes))
    return EXIT_COUNTEREXAMPLE if failed else 0


def cmd_random(args) -> int:
    g = random_connected_k14_free(args.n, args.prob, args.seed, args.max_tries)
    _emit(args, {"n": g.n, "edge_list": to_edge_list(g)}, to_edge_list(g))
    return 0


def cmd_verify(args) -> int:
    start = time.perf_counter()
    if args.exhaustive is not None:
        rep = sweep_exhaustive(args.exhaustive, args.k_max, jobs=args.jobs, persist=False)
    else:
        n, samples, seed = args.random
        rep = sweep_random(int(n), int(samples), seed, args.k_max, jobs=args.jobs,
                           persist=False)
    where = persist_counterexamples(rep, args.counterexample_dir)
    payload = rep.to_dict()
    text = rep.to_text()
    if where is not None:
        text += f"counterexamples written to: {where}\n"
    if args.timing:
        elapsed = time.perf_counter() - start
        payload["seconds"] = round(elapsed, 3)
        text += f"seconds: {elapsed:.3f}\n"
    _emit(args, payload, text)
    return EXIT_COUNTEREXAMPLE if rep.counterexamples else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stemforge",
        description="Spanning trees with few leaves and branch vertices in K_1,4-free graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = with_json(sub.add_parser("analyze", help="graph invariants"))
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = with_json(sub.add_parser("tree", help="run the local search"))
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="print every move")
    p.set_defaults(func=cmd_tree)

    p = with_json(sub.add_parser("oracle", help="exact minima and theorem table"))
    p.add_argument("graph")
    p.add_argument("--k-max", type=int, default=3)
    p.set_defaults(func=cmd_oracle)

    p = with_json(sub.add_parser("sharpness", help="emit a sharpness-family graph"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--check", action="store_true")
    p.add_argument("--allow-k0", action="store_true")
    p.set_defaults(func=cmd_sharpness)

    p = with_json(sub.add_parser("random", help="emit a random connected K_1,4-free graph"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prob", type=float, required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--max-tries", type=int, default=1000)
    p.set_defaults(func=cmd_random)

    p = with_json(sub.add_parser("verify", help="sweep graphs against the oracle"))
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", type=int, metavar="N_MAX")
    mode.add_argument("--random", nargs=3, metavar=("N", "SAMPLES", "SEED"))
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--counterexample-dir", default=None,
                   help=f"where failures are written (env {COUNTEREXAMPLE_ENV} also works)")
    p.add_argument("--timing", action="store_true", help="report wall time")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.random is not None:
        try:
            int(args.random[0]), int(args.random[1])
        except ValueError:
            parser.error("--random expects integers N and SAMPLES")
    try:
        return args.func(args)
    except (GraphFormatError, OSError, ValueError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
