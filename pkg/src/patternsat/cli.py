"""Command line front end.

Exit codes: 0 success (and SAT for ``build``), 1 runtime error, 2 UNSAT from
``build``, 3 usage error. Structured results go to stdout as JSON or CSV.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from patternsat import analysis, circuits, oracle
from patternsat.cnf import ClauseSet, normalize, parse_dimacs, serialize_dimacs
from patternsat.fbdd import (
    PER_NODE,
    UPFRONT,
    Canonical,
    Explicit,
    RandomOrder,
    build_pr,
    build_pr_prime,
    export,
    is_sat,
)
from patternsat.slo import cra_plus, slo_check

EXIT_UNSAT = 2
EXIT_USAGE = 3
VERIFY_LIMIT = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_cnf(path: str) -> ClauseSet:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return normalize(parse_dimacs(text))


def _write(path, text: str):
    if path is None:
        print(text)
    else:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")


def parse_order(spec: str):
    if spec == "canonical":
        return Canonical()
    if spec.startswith("random:"):
        try:
            return RandomOrder(int(spec.split(":", 1)[1]))
        except ValueError:
            raise UsageError(f"bad random seed in {spec!r}") from None
    try:
        return Explicit(tuple(int(x) for x in spec.split(",")))
    except ValueError:
        raise UsageError(f"order must be canonical, random:SEED or a comma list, got {spec!r}") from None


def _build(s: ClauseSet, args):
    """Returns ``(graph, stats)`` for the procedure selected on the command line."""
    if args.proc == "pr":
        return build_pr(s, parse_order(args.order))
    g, stats, _ = build_pr_prime(s, args.mode)
    return g, stats


def _add_proc_args(p):
    p.add_argument("--proc", choices=["pr", "pr-prime"], default="pr-prime")
    p.add_argument("--mode", choices=[UPFRONT, PER_NODE], default=PER_NODE)
    p.add_argument("--order", default="canonical", help="canonical | random:SEED | comma list (pr only)")


def cmd_gen(args) -> int:
    if args.kind == "mult":
        if args.ibits is None:
            raise UsageError("gen mult requires --ibits")
        if args.target is not None:
            inst = circuits.gen_factorization(args.ibits, args.target)
            if args.drop_units:
                inst = circuits.drop_units(inst)
        else:
            inst = circuits.gen_multiplier(args.ibits)
        print(serialize_dimacs(inst.clause_set, inst.dimacs_comments()))
    else:
        missing = [f for f in ("vars", "clauses", "k", "seed") if getattr(args, f) is None]
        if missing:
            raise UsageError("gen random requires " + ", ".join("--" + m for m in missing))
        s = circuits.gen_random_kcnf(args.vars, args.clauses, args.k, args.seed)
        print(serialize_dimacs(s, [f"random {args.k}-CNF seed {args.seed}"]))
    return 0


def cmd_rename(args) -> int:
    s = _read_cnf(args.input)
    out, mapping, iterations = cra_plus(s)
    comments = [f"cra+ iterations {iterations}"]
    if args.map:
        _write(args.map, mapping.to_json())
    else:
        comments.append("renaming " + mapping.to_json())
    _write(args.out, serialize_dimacs(out, comments))
    return 0


def cmd_check_slo(args) -> int:
    report = slo_check(_read_cnf(args.input))
    print(json.dumps(report.to_dict()))
    return 0 if report.holds else 1


def cmd_build(args) -> int:
    s = _read_cnf(args.input)
    g, stats = _build(s, args)
    sat = is_sat(g)
    if args.dot:
        _write(args.dot, export(g, "dot"))
    if args.json:
        _write(args.json, export(g, "json"))
    print(json.dumps({
        "nodes": stats.unique_nonterminal_nodes,
        "store_hits": stats.store_hits,
        "calls": stats.recursive_calls,
        "cra_plus_invocations": stats.cra_plus_invocations,
        "sat": sat,
    }))
    return 0 if sat else EXIT_UNSAT


def cmd_count(args) -> int:
    s = _read_cnf(args.input)
    g, _ = _build(s, args)
    count = analysis.model_count(g, s.num_vars)
    print(count)
    if args.verify:
        if s.num_vars > VERIFY_LIMIT:
            print(f"verify skipped: N={s.num_vars} > {VERIFY_LIMIT}", file=sys.stderr)
        else:
            expected = oracle.brute_count(s)
            print(f"oracle {expected} {'ok' if expected == count else 'MISMATCH'}", file=sys.stderr)
            if expected != count:
                return 1
    return 0


def cmd_analyze(args) -> int:
    if args.what == "tree":
        if args.m is None:
            raise UsageError("analyze tree requires --m")
        s = _read_cnf(args.input)
        g, _ = _build(s, args)
        report = analysis.tree_report(g)
        doc = report.to_dict()
        doc["m"] = args.m
        doc["nodes"] = len(g)
        if isinstance(report.exact_depth, int):
            doc["complete_tree"] = report.exact_depth >= args.m
        else:
            doc["complete_tree"] = None if report.dp_depth_bound >= args.m else False
        print(json.dumps(doc))
    else:
        records = analysis.read_records_csv(Path(args.input).read_text())
        sys.stdout.write(analysis.growth_csv(analysis.growth_table(records)))
    return 0


def cmd_oracle(args) -> int:
    s = _read_cnf(args.input)
    if args.pd:
        print(oracle.pattern_domain(s))
    elif args.plr:
        info = oracle.plr(s)
        print(json.dumps({"var": info.var, "period_length": info.period_length, "repetitions": info.repetitions}))
    else:
        print(oracle.brute_count(s))
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="patternsat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate instances as DIMACS")
    g.add_argument("kind", choices=["mult", "random"])
    g.add_argument("--ibits", type=int)
    g.add_argument("--target", type=int)
    g.add_argument("--drop-units", action="store_true")
    g.add_argument("--vars", type=int)
    g.add_argument("--clauses", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("rename", help="CRA+ renaming to s.l.o. form")
    r.add_argument("input")
    r.add_argument("--out")
    r.add_argument("--map")
    r.set_defaults(func=cmd_rename)

    c = sub.add_parser("check-slo", help="report s.l.o. violations")
    c.add_argument("input")
    c.set_defaults(func=cmd_check_slo)

    b = sub.add_parser("build", help="build a diagram and print stats")
    b.add_argument("input")
    _add_proc_args(b)
    b.add_argument("--dot")
    b.add_argument("--json")
    b.set_defaults(func=cmd_build)

    n = sub.add_parser("count", help="model count from the built diagram")
    n.add_argument("input")
    _add_proc_args(n)
    n.add_argument("--verify", action="store_true")
    n.set_defaults(func=cmd_count)

    a = sub.add_parser("analyze", help="tree diagnostics or growth table")
    a.add_argument("what", choices=["tree", "growth"])
    a.add_argument("input")
    _add_proc_args(a)
    a.add_argument("--m", type=int)
    a.set_defaults(func=cmd_analyze)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    o.add_argument("input")
    mx = o.add_mutually_exclusive_group()
    mx.add_argument("--pd", action="store_true")
    mx.add_argument("--count", action="store_true")
    mx.add_argument("--plr", action="store_true")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"patternsat: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, RuntimeError) as e:
        print(f"patternsat: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
