"""Command-line interface: ``rtgweight {weigh,prune,enumerate,sat}``.

Exit status is 0 on success, 1 for unreadable or invalid input, 2 when a
configured resource cap is exceeded and 3 for an internal solver failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import AlgebraError, make_algebra
from .grammar import GrammarError, print_grammar, read_grammar
from .kbest import DEFAULT_FRONTIER_CAP, ResourceLimitError, enumerate_terms
from .partial import (DEFAULT_ANTICHAIN_CAP, AntichainLimitError, cnf_to_grammar,
                      decide_sat, format_family, parse_dimacs)
from .solver import ALGORITHMS, SolverError, dump_trace, extract_witnesses, prune_empty, solve
from .solver.results import encode_weight


class InputError(Exception):
    pass


def _load(args):
    try:
        g = read_grammar(args.grammar)
    except GrammarError as e:
        raise InputError("\n".join(f"{args.grammar}: {d}" for d in e.diagnostics)) from None
    except OSError as e:
        raise InputError(f"{args.grammar}: {e.strerror}") from None
    algebra_spec = getattr(args, "algebra", "size")
    try:
        alg = make_algebra(algebra_spec, g.signature)
    except OSError as e:
        raise InputError(f"{algebra_spec}: {e.strerror}") from None
    return g, alg


def cmd_weigh(args, out, err) -> int:
    g, alg = _load(args)
    started = time.perf_counter()
    result = solve(g, alg, args.algorithm, trace=args.trace is not None)
    elapsed = time.perf_counter() - started
    witnesses = None
    if args.witness:
        lazy = result if result.done_cycle is not None else None
        witnesses = extract_witnesses(g, alg, lazy)
    if args.format == "structured":
        doc = {"weights": {n: encode_weight(alg, w) for n, w in result.weights.items()}}
        if witnesses is not None:
            doc["witnesses"] = {n: str(t) if t is not None else "empty"
                                for n, t in witnesses.items()}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        width = max((len(n) for n in result.weights), default=0)
        for n, w in result.weights.items():
            line = f"{n:<{width}} = {alg.render(w)}"
            if witnesses is not None:
                t = witnesses[n]
                line += "\t" + (str(t) if t is not None else "empty")
            out.write(line + "\n")
    if args.trace is not None:
        with open(args.trace, "w", encoding="utf-8") as f:
            dump_trace(result, f)
    if args.stats:
        st = result.stats.as_dict()
        st["seconds"] = round(elapsed, 6)
        err.write(json.dumps(st) + "\n")
    return 0


def cmd_prune(args, out, err) -> int:
    g, alg = _load(args)
    pruned = prune_empty(g, solve(g, alg, "lazy", trace=False))
    text = print_grammar(pruned)
    if args.out == "-":
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    return 0


def cmd_enumerate(args, out, err) -> int:
    g, alg = _load(args)
    if args.nonterminal not in g.rules:
        raise InputError(f"unknown nonterminal {args.nonterminal}")
    for t, w in enumerate_terms(g, alg, args.nonterminal, args.count,
                                frontier_cap=args.frontier_cap):
        out.write(f"{alg.render(w)}\t{t}\n")
    return 0


def cmd_sat(args, out, err) -> int:
    try:
        with open(args.cnf, encoding="utf-8") as f:
            cnf = parse_dimacs(f.read())
    except OSError as e:
        raise InputError(f"{args.cnf}: {e.strerror}") from None
    except ValueError as e:
        raise InputError(f"{args.cnf}: {e}") from None
    if args.emit_grammar:
        with open(args.emit_grammar, "w", encoding="utf-8") as f:
            f.write(print_grammar(cnf_to_grammar(cnf)))
    verdict = decide_sat(cnf, cap=args.antichain_cap)
    if verdict.satisfiable:
        out.write("SATISFIABLE\n")
        lits = [str(j if v else -j) for j, v in enumerate(verdict.assignment, 1)]
        out.write("v " + " ".join(lits + ["0"]) + "\n")
    else:
        out.write("UNSATISFIABLE\n")
    if args.varsets:
        out.write(format_family(verdict.weights) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rtgweight", description="Minimal term weights for regular tree grammars.")
    sub = p.add_subparsers(dest="command", required=True)

    def grammar_opts(sp, algebra=True):
        sp.add_argument("--grammar", required=True, help=".rtg grammar file")
        if algebra:
            sp.add_argument("--algebra", default="size",
                            help="size, height, minterm or affine:PATH (default size)")

    w = sub.add_parser("weigh", help="minimal weight of every nonterminal")
    grammar_opts(w)
    w.add_argument("--algorithm", choices=ALGORITHMS, default="lazy")
    w.add_argument("--trace", metavar="PATH", help="write the per-cycle trace as JSON")
    w.add_argument("--witness", action="store_true", help="print a minimal term per nonterminal")
    w.add_argument("--stats", action="store_true", help="print run statistics to stderr")
    w.add_argument("--format", choices=("table", "structured"), default="table")
    w.set_defaults(func=cmd_weigh)

    pr = sub.add_parser("prune", help="remove nonterminals with an empty language")
    grammar_opts(pr, algebra=False)
    pr.add_argument("--out", required=True, help="output .rtg path, or - for stdout")
    pr.set_defaults(func=cmd_prune)

    e = sub.add_parser("enumerate", help="lightest terms of one nonterminal")
    grammar_opts(e)
    e.add_argument("--nonterminal", required=True)
    e.add_argument("--count", type=int, required=True)
    e.add_argument("--frontier-cap", type=int, default=DEFAULT_FRONTIER_CAP)
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("sat", help="decide a DIMACS CNF through variable-set weights")
    s.add_argument("--cnf", required=True)
    s.add_argument("--emit-grammar", metavar="PATH", help="write the reduction grammar")
    s.add_argument("--varsets", action="store_true", help="also print the antichain of C'")
    s.add_argument("--antichain-cap", type=int, default=DEFAULT_ANTICHAIN_CAP)
    s.set_defaults(func=cmd_sat)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "count", 1) < 1:
        err.write("error: --count must be at least 1\n")
        return 1
    try:
        return args.func(args, out, err)
    except InputError as e:
        err.write(f"error: {e}\n")
        return 1
    except (GrammarError, AlgebraError) as e:
        err.write(f"error: {e}\n")
        return 1
    except (ResourceLimitError, AntichainLimitError) as e:
        err.write(f"resource limit: {e}\n")
        return 2
    except SolverError as e:
        err.write(f"internal error: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
