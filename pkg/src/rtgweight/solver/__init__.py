"""Minimal-weight computation for every nonterminal of a regular tree grammar.

Three fixpoint solvers compute the same weight map:

``solve_naive``
    recompute every alternative from the previous cycle's values.
``solve_liquid``
    recompute only alternatives with an argument that just decreased.
``solve_lazy``
    propagate a value only once it is the smallest pending one, so every
    alternative is evaluated at most once; the pending set is a heap.

Numeric algebras run on a compiled kernel when it is available; everything
else (and ``backend="python"``) uses the pure-Python reference.
"""

from __future__ import annotations

import importlib
import os

from ..algebra import INF, AlgebraError, WeightAlgebra, is_inf
from ..grammar import Grammar, Signature, check
from ..terms import Term
from . import _reference
from ._index import IndexedGrammar
from .results import SolveResult, SolverStats, Trace, dump_trace, trace_document

_kernels = None
if os.environ.get("RTGWEIGHT_BACKEND", "auto") != "python":
    try:
        _kernels = importlib.import_module(f"{__name__}._kernels")
    except ImportError:  # pragma: no cover - only without a build
        _kernels = None

__all__ = [
    "SolveResult", "SolverStats", "Trace", "SolverError", "compiled_available",
    "solve", "solve_naive", "solve_liquid", "solve_lazy", "extract_witnesses",
    "prune_empty", "trace_document", "dump_trace", "ALGORITHMS",
]

ALGORITHMS = ("naive", "liquid", "lazy")
_INT64_MAX = 2**63 - 1


class SolverError(RuntimeError):
    pass


def compiled_available() -> bool:
    return _kernels is not None


def _prepare(g: Grammar, alg: WeightAlgebra, backend: str):
    check(g)
    problems = alg.missing(g.signature)
    if problems:
        raise AlgebraError("; ".join(problems))
    ix = IndexedGrammar(g)
    if backend not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {backend!r}")
    program = None
    if backend != "python":
        program = alg.kernel_program(g.signature)
        if backend == "compiled":
            if _kernels is None:
                raise SolverError("compiled kernels are not built")
            if program is None:
                raise SolverError(f"algebra {alg.name} has no compiled form")
        elif _kernels is None:
            program = None
    return ix, program


def _from_int(v):
    return INF if v == _INT64_MAX else v


def _finish(algorithm, backend, ix, alg, raw, record) -> SolveResult:
    names = ix.names
    conv = _from_int if backend == "compiled" else (lambda v: v)
    weights = {names[i]: conv(w) for i, w in enumerate(raw.weights)}
    trace = None
    if record:
        deltas = [[(names[i], conv(v)) for i, v in d] for d in raw.deltas]
        minimals = None
        if raw.minimals is not None:
            minimals = [[names[i] for i in m] for m in raw.minimals]
        trace = Trace(algorithm, names, deltas, minimals)
    stats = SolverStats(algorithm, backend, raw.cycles, raw.evaluations,
                        {names[i]: c for i, c in enumerate(raw.changes)},
                        raw.heap_operations)
    done = None
    if raw.done_cycle is not None:
        done = {names[i]: c for i, c in enumerate(raw.done_cycle)}
    return SolveResult(weights, stats, alg, trace, done)


def solve_naive(g: Grammar, alg: WeightAlgebra, stop: str = "early", *,
                trace: bool = True, backend: str = "auto") -> SolveResult:
    """Synchronous fixpoint iteration from all-INF.

    ``stop="early"`` halts on the first cycle without change; ``stop="fixed"``
    runs exactly ``nt`` cycles. Both give the same weights.
    """
    if stop not in ("early", "fixed"):
        raise ValueError(f"stop must be 'early' or 'fixed', not {stop!r}")
    ix, program = _prepare(g, alg, backend)
    early = stop == "early"
    if program is not None:
        w, cycles, ev, ch, deltas = _kernels.naive(ix.flat(program), ix.nt, early, trace)
        raw = _reference.RawRun(w, cycles, ev, ch, deltas)
        return _finish("naive", "compiled", ix, alg, raw, trace)
    raw = _reference.naive(ix, alg, early, trace)
    return _finish("naive", "python", ix, alg, raw, trace)


def solve_liquid(g: Grammar, alg: WeightAlgebra, *, trace: bool = True,
                 backend: str = "auto") -> SolveResult:
    """Liquid-flow iteration: only alternatives touching the water front are
    re-evaluated, located through the occurrence index."""
    ix, program = _prepare(g, alg, backend)
    if program is not None:
        w, cycles, ev, ch, deltas = _kernels.liquid(ix.flat(program), ix.nt, trace)
        raw = _reference.RawRun(w, cycles, ev, ch, deltas)
        return _finish("liquid", "compiled", ix, alg, raw, trace)
    raw = _reference.liquid(ix, alg, trace)
    return _finish("liquid", "python", ix, alg, raw, trace)


def solve_lazy(g: Grammar, alg: WeightAlgebra, *, trace: bool = True,
               backend: str = "auto") -> SolveResult:
    """Lazy propagation with a heap-ordered water front and per-alternative
    counters of done arguments."""
    ix, program = _prepare(g, alg, backend)
    if program is not None:
        w, cycles, ev, ch, deltas, mins, done, hops = _kernels.lazy(
            ix.flat(program), ix.nt, trace)
        raw = _reference.RawRun(w, cycles, ev, ch, deltas, mins, done, hops)
        return _finish("lazy", "compiled", ix, alg, raw, trace)
    raw = _reference.lazy(ix, alg, trace)
    return _finish("lazy", "python", ix, alg, raw, trace)


def solve(g: Grammar, alg: WeightAlgebra, algorithm: str = "lazy", **kw) -> SolveResult:
    if algorithm == "naive":
        return solve_naive(g, alg, **kw)
    if algorithm == "liquid":
        return solve_liquid(g, alg, **kw)
    if algorithm == "lazy":
        return solve_lazy(g, alg, **kw)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def extract_witnesses(g: Grammar, alg: WeightAlgebra,
                      solved: SolveResult | None = None) -> dict[str, Term | None]:
    """A minimal term for every nonterminal with a nonempty language.

    Nonterminals are visited in the order they became done. For each, the
    first alternative (in rule order) is chosen whose arguments were all done
    strictly earlier and whose value equals the final weight, so every
    subterm of a witness is itself minimal for its nonterminal.
    """
    if solved is None or solved.done_cycle is None:
        solved = solve_lazy(g, alg, trace=False)
    weights, done = solved.weights, solved.done_cycle
    ix = IndexedGrammar(g)
    order = sorted((c, i) for i, c in enumerate(done[n] for n in ix.names) if c is not None)
    built: list[Term | None] = [None] * ix.nt
    for cycle, n in order:
        name = ix.names[n]
        target = weights[name]
        for a in ix.rule_alts[n]:
            args = ix.alt_args[a]
            if any(done[ix.names[b]] is None or done[ix.names[b]] >= cycle for b in args):
                continue
            value = alg.apply(ix.alt_symbol[a], [weights[ix.names[b]] for b in args])
            if alg.equal(value, target):
                built[n] = Term(ix.alt_symbol[a], tuple(built[b] for b in args))
                break
        else:
            raise SolverError(f"no alternative of {name} reproduces weight "
                              f"{alg.render(target)} from earlier-done arguments")
    return {ix.names[i]: t for i, t in enumerate(built)}


def prune_empty(g: Grammar, solved: SolveResult | dict) -> Grammar:
    """Drop nonterminals with an empty language and alternatives using them."""
    weights = solved.weights if isinstance(solved, SolveResult) else solved
    keep = {n for n in g.rules if not is_inf(weights[n])}
    rules = {n: tuple(a for a in alts if all(x in keep for x in a.args))
             for n, alts in g.rules.items() if n in keep}
    used = {a.symbol for alts in rules.values() for a in alts}
    symbols = {f: n for f, n in g.signature.symbols.items() if f in used}
    variables = frozenset(v for v in g.signature.variables if v in used)
    return Grammar(Signature(symbols, variables), rules)
