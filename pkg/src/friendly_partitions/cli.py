"""Command-line interface: ``friendly <command> ...``.

Exit status: 0 success, 1 verified negative answer, 2 usage or input error,
3 budget exhausted (indeterminate).
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import cayley, cohesion, engine, generators
from .certificate import KINDS, Certificate
from .graph import (
    ContractError,
    GraphFormatError,
    format_vertex_line,
    k_core,
    load_partition,
    parse_vertex_line,
    read_graph,
    save_graph,
    save_partition,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CLASSIFY_COLUMNS = ("order", "group", "S", "verdict", "method", "verified")
PALEY_COLUMNS = ("q", "prime", "verdict", "method", "verified")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def _offset(args) -> int:
    return 1 if args.one_indexed else 0


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


# -- gen ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "circulant":
        g = generators.gen_circulant(args.n, args.gens)
    elif kind == "cayley":
        spec = generators.CayleySpec(
            tuple(args.factors),
            tuple(generators.parse_element(x, args.factors) for x in args.conn.split(",")),
        )
        g = generators.gen_abelian_cayley(spec)
    elif kind == "paley":
        g = generators.gen_paley(args.q)
    elif kind == "standard":
        g = generators.gen_standard(args.standard_kind, args.size)
    elif kind == "hard":
        g, p = generators.gen_switching_hard(args.valency, args.half)
        if args.partition_out:
            _emit(save_partition(p, _offset(args)), args.partition_out)
    else:
        g = generators.gen_random_regular(args.n, args.d, args.seed, max_attempts=args.max_attempts)
    _emit(save_graph(g), args.output)
    return EXIT_OK


# -- check -------------------------------------------------------------------------

def _read_witness(path: str):
    text = Path(path).read_text()
    first = text.split("\n", 1)[0].strip()
    return text, first in KINDS


def cmd_check(args) -> int:
    g = read_graph(args.graph)
    off = _offset(args)
    text, is_cert = _read_witness(args.witness)
    if is_cert:
        cert = Certificate.from_text(text, off)
        if cert.graph_hash != g.digest():
            print("certificate digest does not match the graph", file=sys.stderr)
            return EXIT_NEGATIVE
        if args.what == "internal" and cert.kind != "internal-partition":
            raise UsageError(f"expected an internal-partition certificate, got {cert.kind}")
        if args.what == "cohesive" and cert.kind != "cohesive-pair":
            raise UsageError(f"expected a cohesive-pair certificate, got {cert.kind}")
        ok = cert.verify(g)
        print("valid" if ok else "invalid")
        return EXIT_OK if ok else EXIT_NEGATIVE
    if args.what == "internal":
        p = load_partition(text, g.n, off)
        verdict = engine.verify_internal(g, p)
        for v, own, other in verdict.violations:
            print(f"bad vertex {v + off}: own={own} other={other}")
    else:
        lines = [ln for ln in text.rstrip("\n").split("\n") if ln.strip()]
        if not lines:
            raise GraphFormatError("empty witness", 1)
        verdict = None
        for i, ln in enumerate(lines, 1):
            s = parse_vertex_line(ln, i, off)
            verdict = engine.verify_cohesive(g, s, args.k)
            for v, inside, outside in verdict.violations:
                print(f"set {i}: vertex {v + off} has {inside} < {args.k} neighbours inside")
            if not verdict.valid:
                break
    print("valid" if verdict.valid else "invalid")
    return EXIT_OK if verdict.valid else EXIT_NEGATIVE


# -- search, cohesive, bisect ------------------------------------------------------

def cmd_search(args) -> int:
    g = read_graph(args.graph)
    cert = engine.search_internal(g, method=args.method, seed=args.seed,
                                  restarts=args.restarts, node_cap=args.node_cap)
    _emit(cert.to_text(_offset(args)), args.output)
    if cert.kind == "nonexistence":
        print(f"no internal partition ({cert.nodes} nodes)", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_cohesive(args) -> int:
    g = read_graph(args.graph)
    if args.ban_linial:
        s = engine.ban_linial_cohesive(g, seed=args.seed, restarts=args.restarts)
    else:
        if args.k is None:
            raise UsageError("--k is required unless --ban-linial is given")
        s = k_core(g, args.k)
    if not s:
        print(f"the {args.k}-core is empty", file=sys.stderr)
        return EXIT_NEGATIVE
    _emit(format_vertex_line(s, _offset(args)), args.output)
    return EXIT_OK


def cmd_bisect(args) -> int:
    g = read_graph(args.graph)
    p, cut = engine.km_bisection(g, seed=args.seed, rounds=args.rounds)
    _emit(save_partition(p, _offset(args)), args.output)
    print(f"cut={cut}", file=sys.stderr)
    return EXIT_OK


# -- pipeline ----------------------------------------------------------------------

def cmd_pipeline(args) -> int:
    g = read_graph(args.graph)
    try:
        rep = cohesion.min_intersection_pair(g, seed=args.seed, restarts=args.restarts, rounds=args.rounds)
    except cohesion.StageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    row = rep.CSV_HEADER + "\n" + rep.csv_row() + "\n"
    if args.output:
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.csv").write_text(row)
        cert = Certificate.cohesive_pair(g, rep.set1, rep.set2, 3)
        (out / "pair.cert").write_text(cert.to_text(_offset(args)))
    sys.stdout.write(row)
    return EXIT_OK


# -- classification and scans ------------------------------------------------------

def _classify_one(spec):
    return cayley.abelian_internal_partition(spec)


def cmd_classify(args) -> int:
    if args.family == "cyclic":
        return cmd_cyclic(args)
    specs = list(cayley.enumerate_abelian_cayley(args.max_order))
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(args.jobs) as ex:
            outcomes = list(ex.map(_classify_one, specs, chunksize=64))
    else:
        outcomes = [_classify_one(s) for s in specs]
    rows = []
    out = Path(args.output) if args.output else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for i, (spec, o) in enumerate(zip(specs, outcomes)):
        group = "x".join(f"Z{d}" for d in spec.invariant_factors)
        conn = " ".join(generators.format_element(x) for x in spec.connection_set)
        verdict = "partition" if o.has_partition else f"exceptional:{o.name}"
        rows.append((spec.order, group, conn, verdict, o.method, int(o.verified)))
        if out and o.certificate is not None:
            (out / f"{i:06d}.cert").write_text(o.certificate.to_text(_offset(args)))
    text = _csv(CLASSIFY_COLUMNS, rows)
    if out:
        (out / "summary.csv").write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(o.verified for o in outcomes) else EXIT_BUDGET


def cmd_cyclic(args) -> int:
    n, gens = args.n, args.gens
    if len(gens) != 3 or gens[2] != n // 2:
        raise UsageError("--gens must be r,t,k with k = n/2")
    o = cayley.cyclic5_internal(cayley.CyclicSpec5(n, gens[0], gens[1]))
    _emit(o.certificate.to_text(_offset(args)), args.output)
    print(f"{'partition' if o.has_partition else 'exceptional:' + str(o.name)} method={o.method}",
          file=sys.stderr)
    return EXIT_OK if o.has_partition else EXIT_NEGATIVE


def cmd_scan(args) -> int:
    rows = cayley.paley_scan(args.max_q, seed=args.seed, jobs=args.jobs)
    out = Path(args.output) if args.output else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    table = []
    for r in rows:
        table.append((r.q, int(r.prime), "partition" if r.complete else "incomplete", r.method, int(r.verified)))
        if out and r.certificate is not None:
            (out / f"paley_{r.q}.cert").write_text(r.certificate.to_text(_offset(args)))
    text = _csv(PALEY_COLUMNS, table)
    if out:
        (out / "summary.csv").write_text(text)
    else:
        sys.stdout.write(text)
    missing = [r.q for r in rows if not r.complete]
    if missing:
        print(f"budget exhausted for q in {missing}", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_near_complete(args) -> int:
    g = read_graph(args.graph)
    res = cayley.classify_near_complete(g)
    print(f"odd_cycles={res.odd_cycle_count}", file=sys.stderr)
    if not res.has_partition:
        return EXIT_NEGATIVE
    _emit(Certificate.internal(g, res.partition).to_text(_offset(args)), args.output)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--one-indexed", action="store_true", help="read and write vertices as 1..n")
    common.add_argument("-o", "--output", help="output file (or directory for reports)")

    p = _Parser(prog="friendly", description="Internal partitions and cohesive sets of graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph")
    gsub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    g = gsub.add_parser("circulant", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--gens", type=_ints, required=True)
    g = gsub.add_parser("cayley", parents=[common])
    g.add_argument("--factors", type=_ints, required=True, help="invariant factors, e.g. 2,4")
    g.add_argument("--conn", required=True, help="connection set, e.g. 0:1,0:3,1:0")
    g = gsub.add_parser("paley", parents=[common])
    g.add_argument("--q", type=int, required=True)
    g = gsub.add_parser("standard", parents=[common])
    g.add_argument("--kind", dest="standard_kind", choices=("complete", "complete_bipartite"), required=True)
    g.add_argument("--size", type=int, required=True)
    g = gsub.add_parser("hard", parents=[common])
    g.add_argument("--valency", type=int, required=True)
    g.add_argument("--half", type=int, required=True)
    g.add_argument("--partition-out", help="write the built-in bisection here")
    g = gsub.add_parser("random", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-attempts", type=int, default=1000)
    gen.set_defaults(func=cmd_gen)

    chk = sub.add_parser("check", help="verify a witness")
    chk.add_argument("what", choices=("internal", "cohesive"))
    chk.add_argument("graph")
    chk.add_argument("witness")
    chk.add_argument("--k", type=int, default=3)
    chk.add_argument("--one-indexed", action="store_true")
    chk.set_defaults(func=cmd_check)

    s = sub.add_parser("search", parents=[common], help="search for an internal partition")
    s.add_argument("what", choices=("internal",))
    s.add_argument("graph")
    s.add_argument("--method", choices=("switch", "exhaustive", "hybrid"), default="hybrid")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=64)
    s.add_argument("--node-cap", type=int, default=10_000_000)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("cohesive", parents=[common], help="k-core or small cohesive set")
    c.add_argument("graph")
    c.add_argument("--k", type=int)
    c.add_argument("--ban-linial", action="store_true")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--restarts", type=int, default=32)
    c.set_defaults(func=cmd_cohesive)

    b = sub.add_parser("bisect", parents=[common], help="small-cut bisection")
    b.add_argument("graph")
    b.add_argument("--method", choices=("km",), default="km")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--rounds", type=int, default=64)
    b.set_defaults(func=cmd_bisect)

    pl = sub.add_parser("pipeline", parents=[common], help="two 3-cohesive sets with small intersection")
    pl.add_argument("graph")
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--restarts", type=int, default=32)
    pl.add_argument("--rounds", type=int, default=8)
    pl.set_defaults(func=cmd_pipeline)

    cl = sub.add_parser("classify", help="Cayley graph classification")
    csub = cl.add_subparsers(dest="family", required=True, parser_class=_Parser)
    ca = csub.add_parser("abelian", parents=[common])
    ca.add_argument("--max-order", type=int, default=16)
    ca.add_argument("--jobs", type=int, default=1)
    cc = csub.add_parser("cyclic", parents=[common])
    cc.add_argument("--n", type=int, required=True)
    cc.add_argument("--gens", type=_ints, required=True)
    cl.set_defaults(func=cmd_classify)

    cy = sub.add_parser("cyclic", parents=[common], help="classify one cyclic 5-regular graph")
    cy.add_argument("--n", type=int, required=True)
    cy.add_argument("--gens", type=_ints, required=True)
    cy.set_defaults(func=cmd_cyclic)

    sc = sub.add_parser("scan", help="scans")
    ssub = sc.add_subparsers(dest="family", required=True, parser_class=_Parser)
    sp_ = ssub.add_parser("paley", parents=[common])
    sp_.add_argument("--max-q", type=int, default=200)
    sp_.add_argument("--seed", type=int, default=0)
    sp_.add_argument("--jobs", type=int, default=1)
    sc.set_defaults(func=cmd_scan)

    nc = sub.add_parser("near-complete", parents=[common], help="classify an (n-3)-regular graph")
    nc.add_argument("graph")
    nc.set_defaults(func=cmd_near_complete)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except engine.BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except generators.RetryExhaustedError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphFormatError, ContractError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
