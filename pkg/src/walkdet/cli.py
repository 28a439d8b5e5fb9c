"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 a verified identity failed
(formula mismatch or certification failure), 3 ``preserver`` on a rooted
graph that fails the conditions.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import random
import sys
from typing import Iterable, Optional, TextIO

from .graphs import (
    Graph,
    Graph6Error,
    MatrixKind,
    RootedGraph,
    parse_graph6,
    read_graph6,
)
from .search import (
    CSV_COLUMNS,
    SearchConfig,
    SearchSummary,
    build_dgs_family,
    conjecture_sweep,
    default_workers,
    find_f_members,
    random_graph,
    search_preservers,
)
from .walk import CertificationError, PreconditionError, preserver_check, theorem_main_verify

EXIT_OK, EXIT_USAGE, EXIT_FALSIFIED, EXIT_NOT_PRESERVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_graph(arg: str) -> Graph:
    """A graph6 string, or a path whose first non-blank line is one."""
    if arg == "-" or os.path.isfile(arg):
        stream = sys.stdin if arg == "-" else open(arg, encoding="ascii")
        try:
            for g in read_graph6(stream):
                return g
        finally:
            if stream is not sys.stdin:
                stream.close()
        raise UsageError(f"no graph found in {arg}")
    return parse_graph6(arg)


def _load_rooted(arg: str) -> RootedGraph:
    src, sep, root = arg.rpartition(":")
    if not sep:
        raise UsageError(f"expected GRAPH6-or-PATH:ROOT, got {arg!r}")
    return _rooted(_load_graph(src), root)


def _rooted(g: Graph, root) -> RootedGraph:
    try:
        r = int(root)
    except ValueError:
        raise UsageError(f"root must be an integer, got {root!r}") from None
    if not 1 <= r <= g.n:
        raise UsageError(f"root {r} out of range 1..{g.n}")
    return RootedGraph(g, r - 1)


def _graph_stream(path: Optional[str]) -> Optional[Iterable[Graph]]:
    if path is None:
        return None
    if path == "-":
        return read_graph6(sys.stdin)
    return read_graph6(open(path, encoding="ascii"))


def _poly(p, var="λ") -> str:
    return p.format(var)


def _emit_rows(rows: list[dict], columns, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, sort_keys=False) + "\n")
    else:
        w = csv.DictWriter(out, fieldnames=list(columns), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


# -- subcommands -------------------------------------------------------------

def cmd_verify(args, out: TextIO) -> int:
    g = _load_graph(args.G)
    h = _rooted(_load_graph(args.H), args.root)
    kind = MatrixKind.parse(args.kind)
    rep = theorem_main_verify(g, h, kind)
    if args.format == "json":
        out.write(json.dumps(rep.to_dict()) + "\n")
    elif args.format == "csv":
        d = rep.to_dict()
        d["h"] = " ".join(d["h"])
        _emit_rows([d], d.keys(), "csv", out)
    else:
        out.write(f"G = {g.to_graph6()} (n = {rep.n}), H = {h} (m = {rep.m}), kind {kind}\n")
        if rep.scale != 1:
            out.write(f"integer matrices are scaled by {rep.scale}\n")
        out.write(f"det W(G∘H)                = {rep.lhs}\n")
        if rep.scale != 1:
            out.write(f"det W(G∘H), unscaled      = {rep.lhs_exact}\n")
        out.write(f"Res(φ(M(H)), φ(M^(v)(H))) = {rep.res_factor}\n")
        out.write(f"h(λ) = {_poly(rep.h)}\n")
        out.write(f"det h(M(G))               = {rep.det_h_of_MG}\n")
        out.write(f"det W(G)                  = {rep.det_W_of_G}\n")
        out.write(
            f"|Res|^{rep.n * (rep.n - 1) // 2} · |det h(M(G))| · |det W(G)|^{rep.m} = {rep.rhs_abs}\n"
        )
        out.write(f"verdict: {'equal up to sign' if rep.verdict else 'MISMATCH'}")
        out.write(f" (observed sign {rep.sign:+d})\n" if rep.sign else "\n")
    if not rep.verdict:
        print("formula mismatch: this contradicts the walk-determinant theorem", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_preserver(args, out: TextIO) -> int:
    h = _rooted(_load_graph(args.H), args.root)
    rep = preserver_check(h)
    if args.format == "json":
        out.write(json.dumps({"graph6": h.graph.to_graph6(), "root": h.root + 1, **rep.to_dict()}) + "\n")
    elif args.format == "csv":
        row = {
            "graph6": h.graph.to_graph6(),
            "root": h.root + 1,
            "m": rep.m,
            "res": rep.res,
            "k": "" if rep.k is None else rep.k,
            "detA_H": rep.det_A_H,
            "detA_Hv": rep.det_A_Hv,
            "is_preserver": rep.is_preserver,
            "conjecture_ok": "" if rep.conjecture_ok is None else rep.conjecture_ok,
        }
        _emit_rows([row], CSV_COLUMNS, "csv", out)
    else:
        out.write(f"H = {h} (m = {rep.m})\n")
        out.write(f"det A(H) = {rep.det_A_H}, det A^(v)(H) = {rep.det_A_Hv}: "
                  f"{'ok' if rep.cond_dets else 'fails'}\n")
        out.write(f"Res(φ(A(H)), φ(A^(v)(H))) = {rep.res}: {'ok' if rep.cond_res else 'fails'}\n")
        out.write(f"h(λ) = {_poly(rep.h)}: "
                  f"{'±λ^%d' % rep.k if rep.k is not None else 'not ±λ^k'}\n")
        if rep.is_preserver:
            out.write(f"F-preserver, k = {rep.k}; floor(m/2) = {rep.m // 2}: "
                      f"{'consistent' if rep.conjecture_ok else 'CONJECTURE COUNTEREXAMPLE'}\n")
        else:
            out.write("not certified as an F-preserver\n")
    return EXIT_OK if rep.is_preserver else EXIT_NOT_PRESERVER


def cmd_search(args, out: TextIO) -> int:
    lo = args.order if args.order is not None else args.min_order
    hi = args.order if args.order is not None else args.max_order
    cfg = SearchConfig(
        min_order=lo,
        max_order=hi,
        roots=args.roots,
        graphs=_graph_stream(args.input),
        workers=args.workers or default_workers(),
        include_rejects=args.include_rejects,
        verify_sample=not args.no_verify,
        seed=args.rng_seed,
    )
    summary = SearchSummary()
    if args.format == "csv":
        w = csv.DictWriter(out, fieldnames=list(CSV_COLUMNS), lineterminator="\n")
        w.writeheader()
    for res in search_preservers(cfg, summary):
        row = res.row()
        if args.format == "csv":
            w.writerow(row)
        elif args.format == "json":
            out.write(json.dumps(row) + "\n")
        else:
            tag = "" if res.report.conjecture_ok is not False else "  <-- k != floor(m/2)"
            status = f"k = {row['k']}" if res.report.is_preserver else "rejected"
            out.write(f"{row['graph6']}:{row['root']}  m = {row['m']}  {status}{tag}\n")
    for line in summary.lines():
        print(line, file=sys.stderr)
    return EXIT_OK


def cmd_members(args, out: TextIO) -> int:
    if args.n % 2:
        print(f"F_{args.n} is empty: det A(G) is even for every graph of odd order", file=sys.stderr)
    graphs = _graph_stream(args.input)
    if graphs is None and args.n > 7:
        raise UsageError("built-in enumeration stops at order 7; pass --input with a graph6 stream")
    count = 0
    if args.format == "csv":
        out.write("graph6,n\n")
    for g in find_f_members(args.n, graphs):
        count += 1
        if args.format == "json":
            out.write(json.dumps({"graph6": g.to_graph6(), "n": g.n}) + "\n")
        elif args.format == "csv":
            out.write(f"{g.to_graph6()},{g.n}\n")
        else:
            out.write(g.to_graph6() + "\n")
    print(f"{count} members of F_{args.n}", file=sys.stderr)
    return EXIT_OK


def cmd_family(args, out: TextIO) -> int:
    seed = _load_graph(args.seed)
    preservers = [_load_rooted(p) for p in args.preserver]
    rep = build_dgs_family(seed, preservers, args.steps)
    rows = [
        {
            "stage": i,
            "n": s.graph.n,
            "detA": s.det_A,
            "detW": str(s.det_W),
            "certified": s.certified,
            "graph6": s.graph.to_graph6(),
        }
        for i, s in enumerate(rep.stages)
    ]
    if args.format == "human":
        for r in rows:
            out.write(f"stage {r['stage']}: n = {r['n']}, det A = {r['detA']}, det W_A = {r['detW']}, "
                      f"{'in F' if r['certified'] else 'NOT in F'}\n  {r['graph6']}\n")
    else:
        _emit_rows(rows, rows[0].keys(), args.format, out)
    if not rep.ok:
        print(f"CERTIFICATION FAILURE: {rep.diagnostic}", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_sweep(args, out: TextIO) -> int:
    h = _load_rooted(args.preserver)
    if args.samples:
        samples = list(_graph_stream(args.samples))
    else:
        rng = random.Random(args.rng_seed)
        samples = [random_graph(rng.randint(1, args.max_n), rng) for _ in range(args.random)]
    rep = conjecture_sweep(h, samples)
    rows = [
        {"graph6": r.graph6, "lhs_abs": str(r.lhs_abs), "rhs_abs": str(r.rhs_abs), "match": r.match}
        for r in rep.rows
    ]
    if args.format == "human":
        out.write(f"H = {rep.preserver}, m = {rep.m}, k = {rep.k}, exponent floor(m/2) = {rep.m // 2}\n")
        for r in rows:
            out.write(f"{r['graph6']}: |det W_A(G∘H)| = {r['lhs_abs']}, "
                      f"|det A(G)|^{rep.m // 2}·|det W_A(G)|^{rep.m} = {r['rhs_abs']}  "
                      f"{'ok' if r['match'] else 'MISMATCH'}\n")
    elif rows:
        _emit_rows(rows, rows[0].keys(), args.format, out)
    if not rep.ok:
        print("conjectured closed form fails on at least one sample", file=sys.stderr)
        return EXIT_FALSIFIED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="walkdet", description="Walk-matrix determinants of rooted product graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fmt = dict(choices=("human", "csv", "json"), default="human")

    s = sub.add_parser("verify", help="check the walk-determinant formula for G o H^(v)")
    s.add_argument("G", help="graph6 string or file")
    s.add_argument("H", help="graph6 string or file")
    s.add_argument("--root", required=True, help="root of H, 1-based")
    s.add_argument("--kind", default="a", help="a, q or aalpha=p/q (default a)")
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("preserver", help="test the F-preserver conditions for H^(v)")
    s.add_argument("H", help="graph6 string or file")
    s.add_argument("--root", required=True, help="root of H, 1-based")
    s.add_argument("--format", **fmt)
    s.set_defaults(func=cmd_preserver)

    s = sub.add_parser("search", help="exhaustive F-preserver search")
    s.add_argument("--order", type=int, help="search a single order")
    s.add_argument("--min-order", type=int, default=2)
    s.add_argument("--max-order", type=int, default=6)
    s.add_argument("--input", help="graph6 file, or - for stdin (default: built-in enumeration)")
    s.add_argument("--roots", choices=("all", "orbits"), default="all")
    s.add_argument("--workers", type=int, help="worker processes (default $WALKDET_WORKERS or 1)")
    s.add_argument("--include-rejects", action="store_true")
    s.add_argument("--no-verify", action="store_true", help="skip the sampled G o H re-certification")
    s.add_argument("--rng-seed", type=int, default=0)
    s.add_argument("--format", choices=("human", "csv", "json"), default="csv")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("members", help="list members of F_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--input", help="graph6 file, or - for stdin")
    s.add_argument("--format", choices=("human", "csv", "json"), default="csv")
    s.set_defaults(func=cmd_members)

    s = sub.add_parser("family", help="build and certify a DGS family chain")
    s.add_argument("--seed", required=True, help="seed graph in F (graph6 string or file)")
    s.add_argument("--preserver", action="append", required=True, metavar="GRAPH6:ROOT",
                   help="rooted preserver; repeat to alternate")
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--format", choices=("human", "csv", "json"), default="csv")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("sweep", help="compare det W_A(G o H) with the conjectured closed form")
    s.add_argument("--preserver", required=True, metavar="GRAPH6:ROOT")
    s.add_argument("--samples", help="graph6 file of sample graphs, or -")
    s.add_argument("--random", type=int, default=20, help="number of random samples (default 20)")
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--rng-seed", type=int, default=0)
    s.add_argument("--format", choices=("human", "csv", "json"), default="csv")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out: Optional[TextIO] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except Graph6Error as exc:
        print(f"walkdet: graph6 parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, PreconditionError, ValueError, OSError) as exc:
        print(f"walkdet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"walkdet: CERTIFICATION FAILURE: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED


if __name__ == "__main__":
    sys.exit(main())
