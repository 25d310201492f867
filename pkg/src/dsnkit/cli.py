"""Command-line surface: solve, analyze, reduce, gen, bench.

Exit codes: 0 solved/ok, 1 bench disagreement, 2 infeasible, 3 capacity cap
exceeded, 4 domain/input error.  Every command takes `--json`.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from .dsn import DsnInstance
from .errors import CapacityError, DomainError, DsnkitError, InputError, PreconditionError
from .formats import emit_dsn, parse_dsn, parse_psi
from .generators import gen_grid, gen_ladder, gen_random
from .reduction import decide_psi_via_dsn, generate_hardness_instance, solve_psi_bruteforce
from .solvers import (
    SolveResult,
    solve_bnb,
    solve_dst,
    solve_exhaustive,
    solve_with_certificate,
)

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INFEASIBLE = 2
EXIT_CAPACITY = 3
EXIT_DOMAIN = 4

ENGINES = {"exhaustive": solve_exhaustive, "bnb": solve_bnb, "dst": solve_dst}


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _print_result(result: SolveResult, elapsed: float, as_json: bool) -> None:
    if as_json:
        payload = result.to_json_dict()
        payload["wall_time_s"] = round(elapsed, 6)
        print(json.dumps(payload, indent=2))
    elif not result.feasible:
        print("infeasible")
    else:
        print(f"cost {result.cost} ({result.method}, {result.node_count} nodes)")
        for u, v in sorted(result.optimum.arcs):
            print(f"  arc {u + 1} -> {v + 1}")


def cmd_solve(args) -> int:
    inst, _ = parse_dsn(_read(args.file))
    t0 = time.monotonic()
    result = ENGINES[args.engine](inst)
    _print_result(result, time.monotonic() - t0, args.json)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_analyze(args) -> int:
    inst, meta = parse_dsn(_read(args.file))
    genus = int(meta.get("genus", args.genus))
    t0 = time.monotonic()
    result, cert = solve_with_certificate(inst, declared_genus=genus, engine=args.engine)
    elapsed = time.monotonic() - t0
    if not result.feasible:
        print("infeasible" if not args.json else json.dumps({"feasible": False}))
        return EXIT_INFEASIBLE
    if cert is None:
        print(json.dumps({"feasible": True, "certificate": None}))
        return EXIT_OK
    if args.json:
        payload = {
            "solve": result.to_json_dict(),
            "certificate": cert.to_json_dict(),
            "wall_time_s": round(elapsed, 6),
        }
        print(json.dumps(payload, indent=2))
    else:
        rep = cert.report
        print(f"cost {result.cost}; |V| {rep.vertices_before} -> {rep.vertices_after}")
        print(f"treewidth {cert.tw_solution} -> {cert.tw_reduced}; "
              f"diameter {rep.diameter_after}; max ratio {rep.max_ratio:.2f}")
        for p in rep.paths:
            print(f"  request {p.request[0] + 1}->{p.request[1] + 1}: len {p.length}, "
                  f"{p.num_important} important, {len(p.segments)} segments")
    return EXIT_OK


def cmd_reduce(args) -> int:
    psi, _ = parse_psi(_read(args.file))
    out = generate_hardness_instance(psi)
    meta = {
        "generator": "hardness-reduction",
        "threshold": str(out.threshold),
        "k": str(psi.k),
    }
    text = emit_dsn(out.dsn, meta)
    if args.output:
        _write(args.output, text)
    decision = None
    if args.decide:
        decision = decide_psi_via_dsn(psi)
    if args.json:
        payload = {
            "n": out.dsn.host.n,
            "m": out.dsn.host.m,
            "q": out.dsn.q,
            "requests": out.dsn.p,
            "threshold": out.threshold,
            "decision": decision,
        }
        print(json.dumps(payload, indent=2))
    else:
        if not args.output:
            sys.stdout.write(text)
        print(f"c threshold {out.threshold}", file=sys.stderr)
        if decision is not None:
            print("yes" if decision else "no")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "ladder":
        inst, meta = gen_ladder(args.n, args.identify or ())
    elif args.kind == "grid":
        inst, meta = gen_grid(args.width, args.height, q=args.q, seed=args.seed)
    else:
        inst, meta = gen_random(args.n, args.m, args.q, args.p, args.seed)
    text = emit_dsn(inst, meta)
    _write(args.output, text)
    if args.json and args.output not in (None, "-"):
        print(json.dumps({"n": inst.host.n, "m": inst.host.m, "q": inst.q, "p": inst.p}))
    return EXIT_OK


def _bench_corpus():
    rows = []
    for seed in range(6):
        inst, meta = gen_random(7, 14, 3, 2, seed)
        rows.append((f"random-s{seed}", inst))
    inst, _ = gen_ladder(6)
    rows.append(("ladder-6", inst))
    inst, _ = gen_grid(3, 3, q=3, seed=1)
    rows.append(("grid-3x3", inst))
    return sorted(rows)


def cmd_bench(args) -> int:
    from .graphs import UndirectedGraph
    from .reduction import PsiInstance

    disagreements = 0
    table = []
    for name, inst in _bench_corpus():
        t0 = time.monotonic()
        oracle = solve_exhaustive(inst)
        got = solve_bnb(inst)
        elapsed = time.monotonic() - t0
        agree = oracle.feasible == got.feasible and oracle.cost == got.cost
        if not agree:
            disagreements += 1
        table.append(
            {
                "instance": name,
                "cost": str(got.cost) if got.feasible else "infeasible",
                "oracle_cost": str(oracle.cost) if oracle.feasible else "infeasible",
                "agree": agree,
                "time_s": round(elapsed, 3),
            }
        )
    k4 = UndirectedGraph(range(4), [(i, j) for i in range(4) for j in range(i + 1, 4)])
    c4 = UndirectedGraph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    for name, host in (("psi-k4", k4), ("psi-c4", c4)):
        psi = PsiInstance(host, k4, {i: i for i in range(4)})
        t0 = time.monotonic()
        via_dsn = decide_psi_via_dsn(psi)
        direct = solve_psi_bruteforce(psi) is not None
        elapsed = time.monotonic() - t0
        agree = via_dsn == direct
        if not agree:
            disagreements += 1
        table.append(
            {
                "instance": name,
                "cost": "yes" if via_dsn else "no",
                "oracle_cost": "yes" if direct else "no",
                "agree": agree,
                "time_s": round(elapsed, 3),
            }
        )
    if args.json:
        print(json.dumps({"rows": table, "disagreements": disagreements}, indent=2))
    else:
        width = max(len(r["instance"]) for r in table)
        for r in table:
            mark = "ok" if r["agree"] else "MISMATCH"
            print(f"{r['instance']:<{width}}  {r['cost']:>12} {r['oracle_cost']:>12} "
                  f"{mark:>8} {r['time_s']:>7.3f}s")
    return EXIT_OK if disagreements == 0 else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsnkit",
        description="Directed Steiner network toolkit: exact solving, "
        "structural analysis, hardness-instance generation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a DSN instance file")
    p.add_argument("file")
    p.add_argument("--engine", choices=sorted(ENGINES), default="bnb")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="solve, then certify solution structure")
    p.add_argument("file")
    p.add_argument("--engine", default="auto",
                   choices=["auto"] + sorted(ENGINES))
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="turn a PSI file into a DSN hardness instance")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--decide", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate instance files")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("ladder")
    g.add_argument("n", type=int)
    g.add_argument("--identify", type=int, nargs="*")
    g = gsub.add_parser("grid")
    g.add_argument("width", type=int)
    g.add_argument("height", type=int)
    g.add_argument("--q", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    g = gsub.add_parser("random")
    g.add_argument("n", type=int)
    g.add_argument("m", type=int)
    g.add_argument("q", type=int)
    g.add_argument("p", type=int)
    g.add_argument("--seed", type=int, default=0)
    for kind_parser in gsub.choices.values():
        kind_parser.add_argument("-o", "--output")
        kind_parser.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run the built-in corpus and cross-check solvers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DsnkitError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
