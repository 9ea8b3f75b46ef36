"""Command-line interface.

Subcommands mirror the library one to one: check, recognize, encode, decode,
match, ws, wgv, gen, report.  Exit codes: 0 success/accepted, 1 rejected or
no solution, 2 usage or format error, 3 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import coding, gadgets, optimize
from .axioms import check_ordering, violations
from .coding import GuardExceeded as CodeGuardExceeded
from .graph import (GraphFormatError, LabeledDigraph, Ordering, parse_graph,
                    parse_ordering, serialize_graph, serialize_ordering)
from .pqtree import GuardExceeded as PQGuardExceeded
from .recognize import GuardExceeded, recognize

_GUARDS = (GuardExceeded, CodeGuardExceeded, PQGuardExceeded)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)


def _parse_pattern(raw: str) -> list[int]:
    if raw == "":
        return []
    if "," in raw:
        return [int(tok) for tok in raw.split(",")]
    if raw.isdigit():
        return [int(c) for c in raw]
    raise GraphFormatError(f"cannot parse pattern {raw!r}")


def cmd_check(args) -> int:
    graph = parse_graph(_read(args.graph))
    pi = parse_ordering(_read(args.ordering), n=graph.n)
    bad = sorted(violations(graph, pi))
    verdict = not bad
    lines = "\n".join(f"{e.tail} {e.head} {e.label}" for e in bad)
    _emit(args, {"verdict": "proper" if verdict else "improper",
                 "violations": [[e.tail, e.head, e.label] for e in bad]},
          "proper" if verdict else lines)
    return 0 if verdict else 1


def cmd_recognize(args) -> int:
    graph = parse_graph(_read(args.graph))
    t0 = time.perf_counter()
    pi = recognize(graph, algo=args.algo)
    ms = (time.perf_counter() - t0) * 1000.0
    if pi is None:
        _emit(args, {"verdict": "not-wheeler", "witness": None, "runtime_ms": ms},
              "not a Wheeler graph")
        return 1
    if args.witness:
        Path(args.witness).write_text(serialize_ordering(pi), encoding="utf-8")
    _emit(args, {"verdict": "wheeler", "witness": list(pi.order), "runtime_ms": ms},
          " ".join(str(v) for v in pi.order))
    return 0


def cmd_encode(args) -> int:
    graph = parse_graph(_read(args.graph))
    pi = parse_ordering(_read(args.ordering), n=graph.n)
    if not check_ordering(graph, pi):
        print("ordering is not proper; nothing to encode", file=sys.stderr)
        return 1
    code = coding.encode(graph, pi)
    Path(args.output).write_text(coding.serialize_code(code), encoding="utf-8")
    return 0


def cmd_decode(args) -> int:
    code = coding.parse_code(_read(args.code))
    try:
        graph, _ = coding.decode(code)
    except coding.CodeError as exc:
        print(f"invalid code: {exc}", file=sys.stderr)
        return 1
    Path(args.output).write_text(serialize_graph(graph), encoding="utf-8")
    return 0


def cmd_match(args) -> int:
    code = coding.parse_code(_read(args.code))
    lo, hi = coding.match_pattern(code, _parse_pattern(args.pattern))
    empty = lo > hi
    _emit(args, {"verdict": "empty" if empty else "match", "lo": lo, "hi": hi},
          "empty" if empty else f"{lo} {hi}")
    return 1 if empty else 0


def cmd_ws(args) -> int:
    graph = parse_graph(_read(args.graph))
    t0 = time.perf_counter()
    if args.exact:
        kept = optimize.ws_exact(graph, guard=args.guard)
        pi = None
        from .recognize import search_proper_ordering
        pi = search_proper_ordering(LabeledDigraph(graph.n, graph.sigma, kept))
    else:
        kept, pi = optimize.ws_approx_with_witness(graph)
    ms = (time.perf_counter() - t0) * 1000.0
    if args.output:
        sub = LabeledDigraph(graph.n, graph.sigma, kept)
        Path(args.output).write_text(serialize_graph(sub), encoding="utf-8")
    if args.ordering_out and pi is not None:
        Path(args.ordering_out).write_text(serialize_ordering(pi), encoding="utf-8")
    _emit(args, {"edges_kept": len(kept), "runtime_ms": ms,
                 "witness": None if pi is None else list(pi.order)},
          f"{len(kept)} edges kept")
    return 0


def cmd_wgv(args) -> int:
    graph = parse_graph(_read(args.graph))
    t0 = time.perf_counter()
    removed = optimize.wgv_exact(graph, budget=args.budget, guard=args.guard)
    ms = (time.perf_counter() - t0) * 1000.0
    if removed is None:
        _emit(args, {"verdict": "no-solution-within-budget", "runtime_ms": ms},
              "no deletion set within budget")
        return 1
    if args.output:
        sub = LabeledDigraph(graph.n, graph.sigma, removed)
        Path(args.output).write_text(serialize_graph(sub), encoding="utf-8")
    lines = "\n".join(f"{e.tail} {e.head} {e.label}" for e in removed)
    _emit(args, {"edges_removed": len(removed), "runtime_ms": ms,
                 "violations": [[e.tail, e.head, e.label] for e in removed]},
          lines if removed else "already a Wheeler graph")
    return 0


def cmd_gen(args) -> int:
    inst = gadgets.parse_instance(_read(args.instance))
    kind_map = {
        "btw": gadgets.BetweennessInstance,
        "fas": gadgets.FasInstance,
        "nae": (gadgets.Naesat4, gadgets.Naesat3Star),
    }
    if not isinstance(inst, kind_map[args.kind]):
        print(f"instance file does not match kind {args.kind!r}", file=sys.stderr)
        return 2
    if isinstance(inst, gadgets.Naesat4):
        inst = gadgets.naesat4_to_naesat3star(inst)

    if isinstance(inst, gadgets.BetweennessInstance):
        graph = gadgets.betweenness_to_graph(inst)
    elif isinstance(inst, gadgets.FasInstance):
        graph = gadgets.fas_to_wgv_graph(inst, subdivided=args.subdivided)
    else:
        graph = gadgets.naesat3star_to_graph(inst)
    Path(args.output).write_text(serialize_graph(graph), encoding="utf-8")

    if args.witness:
        if isinstance(inst, gadgets.BetweennessInstance):
            order = gadgets.solve_betweenness(inst)
            if order is None:
                print("instance is unsatisfiable; no witness ordering", file=sys.stderr)
                return 1
            pi = gadgets.betweenness_ordering_to_wheeler(inst, order)
        elif isinstance(inst, gadgets.FasInstance):
            if args.subdivided:
                print("witness orderings are only defined for parallel heavy edges",
                      file=sys.stderr)
                return 2
            pi = gadgets.fas_ordering(inst, gadgets.fas_best_order(inst))
        else:
            print("witness orderings are not available for NAESAT instances",
                  file=sys.stderr)
            return 2
        Path(args.witness).write_text(serialize_ordering(pi), encoding="utf-8")
    return 0


def cmd_report(args) -> int:
    cases = []
    directory = Path(args.directory)
    for path in sorted(directory.glob("*.wg")):
        cases.append((path.name, parse_graph(path.read_text(encoding="utf-8"))))
    if args.random:
        if args.seed is None:
            print("--random requires --seed", file=sys.stderr)
            return 2
        rng = random.Random(args.seed)
        for idx in range(args.random):
            cases.append((f"random-{idx:03d}", _random_dag(rng)))
    rows = []
    for name, graph in cases:
        rep = optimize.approx_report(graph, guard=args.guard)
        rep["case"] = name
        rows.append(rep)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        print(f"{'case':24} {'n':>4} {'e':>4} {'kept':>5} {'exact':>6} {'ratio':>6}")
        for r in rows:
            exact = "-" if r["exact_edges_kept"] is None else str(r["exact_edges_kept"])
            ratio = "-" if r["ratio"] is None else f"{r['ratio']:.3f}"
            print(f"{r['case']:24} {r['n']:>4} {r['e']:>4} "
                  f"{r['edges_kept']:>5} {exact:>6} {ratio:>6}")
    return 0


def _random_dag(rng: random.Random) -> LabeledDigraph:
    from .graph import Edge

    n = rng.randint(4, 8)
    sigma = rng.choice([1, 2])
    edges = []
    for tail in range(1, n):
        for head in range(tail + 1, n + 1):
            if rng.random() < 0.3:
                edges.append(Edge(tail, head, rng.randint(1, sigma)))
    return LabeledDigraph(n, sigma, edges)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wheeler",
        description="Wheeler graph toolkit: verify, recognize, encode, optimize, generate.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify an ordering against the axioms")
    p.add_argument("graph")
    p.add_argument("ordering")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("recognize", help="decide whether the graph is Wheeler")
    p.add_argument("graph")
    p.add_argument("--algo", default="auto",
                   choices=["exhaustive", "codes", "sigma1", "special", "auto"])
    p.add_argument("--witness", metavar="FILE", help="write the witness ordering here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("encode", help="encode a graph under a proper ordering")
    p.add_argument("graph")
    p.add_argument("ordering")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a code file back to a graph")
    p.add_argument("code")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("match", help="backward-search a pattern on a code")
    p.add_argument("code")
    p.add_argument("pattern")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("ws", help="Wheeler subgraph (max edges kept)")
    p.add_argument("graph")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--approx", action="store_true", default=True)
    group.add_argument("--exact", action="store_true", default=False)
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--ordering-out", metavar="FILE")
    p.add_argument("--guard", type=int, default=optimize.DEFAULT_SUBSET_GUARD)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ws)

    p = sub.add_parser("wgv", help="Wheeler graph violation (min edges removed)")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("-o", "--output", metavar="FILE")
    p.add_argument("--guard", type=int, default=optimize.DEFAULT_SUBSET_GUARD)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_wgv)

    p = sub.add_parser("gen", help="generate a graph from a reduction instance")
    p.add_argument("kind", choices=["btw", "fas", "nae"])
    p.add_argument("instance")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--witness", metavar="FILE")
    p.add_argument("--subdivided", action="store_true",
                   help="subdivide heavy edges through midpoints (fas only)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("report", help="batch approximation report over *.wg files")
    p.add_argument("directory")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="add N seeded random DAG cases")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--guard", type=int, default=optimize.DEFAULT_SUBSET_GUARD)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _GUARDS as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return 3
    except (GraphFormatError, gadgets.OracleBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, GraphFormatError) else 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
