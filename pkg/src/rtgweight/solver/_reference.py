"""Pure-Python solver kernels, generic over any weight algebra.

Each kernel returns a :class:`RawRun`; ``deltas[k-1]`` holds the
``(nonterminal, value)`` pairs that changed in cycle ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra import INF
from .heap import IndexedMinHeap


@dataclass
class RawRun:
    weights: list
    cycles: int
    evaluations: int
    changes: list[int]
    deltas: list | None = None
    minimals: list | None = None
    done_cycle: list | None = None
    heap_operations: int = 0


def _evaluate(ix, alg, a, y):
    return alg.apply(ix.alt_symbol[a], [y[b] for b in ix.alt_args[a]])


def naive(ix, alg, early_stop: bool = True, record: bool = True) -> RawRun:
    nt = ix.nt
    lt = alg.lt
    x = [INF] * nt
    changes = [0] * nt
    deltas = [] if record else None
    evaluations = 0
    cycles = 0
    while early_stop or cycles < nt:
        cycles += 1
        new = []
        for n in range(nt):
            best = INF
            for a in ix.rule_alts[n]:
                v = _evaluate(ix, alg, a, x)
                if lt(v, best):
                    best = v
            evaluations += len(ix.rule_alts[n])
            new.append(best)
        changed = [(n, new[n]) for n in range(nt) if lt(new[n], x[n]) or lt(x[n], new[n])]
        for n, _ in changed:
            changes[n] += 1
        if record:
            deltas.append(changed)
        x = new
        if early_stop and not changed:
            break
    return RawRun(x, cycles, evaluations, changes, deltas)


def liquid(ix, alg, record: bool = True) -> RawRun:
    nt = ix.nt
    lt = alg.lt
    y = [INF] * nt
    changes = [0] * nt
    deltas = [] if record else None
    stamp = [0] * ix.al
    evaluations = 0

    def commit(candidates):
        pending: dict[int, object] = {}
        for a in candidates:
            v = _evaluate(ix, alg, a, y)
            o = ix.alt_owner[a]
            if lt(v, pending.get(o, y[o])):
                pending[o] = v
        for o, v in pending.items():
            y[o] = v
            changes[o] += 1
        front = sorted(pending)
        if record:
            deltas.append([(o, pending[o]) for o in front])
        return front

    front = commit(ix.nullary)
    evaluations += len(ix.nullary)
    cycles = 1
    while front:
        cycles += 1
        candidates = []
        for n in front:
            for a in ix.occurrences[n]:
                if stamp[a] != cycles:
                    stamp[a] = cycles
                    candidates.append(a)
        evaluations += len(candidates)
        front = commit(candidates)
    return RawRun(y, cycles, evaluations, changes, deltas)


def lazy(ix, alg, record: bool = True) -> RawRun:
    nt = ix.nt
    lt = alg.lt
    y = [INF] * nt
    done = [False] * nt
    done_cycle = [None] * nt
    changes = [0] * nt
    counter = [0] * ix.al
    arity = [len(args) for args in ix.alt_args]
    heap = IndexedMinHeap(nt, lt)
    deltas = [] if record else None
    minimals_log = [] if record else None
    evaluations = 0
    changed: dict[int, object] = {}

    def evaluate(a):
        nonlocal evaluations
        evaluations += 1
        o = ix.alt_owner[a]
        v = _evaluate(ix, alg, a, y)
        # a done value is final; for a law-abiding algebra v cannot beat it
        if done[o]:
            return
        if lt(v, y[o]):
            if o in heap:
                heap.decrease(o, v)
            else:
                heap.push(o, v)
            y[o] = v
            changed[o] = v

    # cycle 1: constants are the only alternatives whose (empty) argument
    # list is entirely done
    for a in ix.nullary:
        evaluate(a)
    cycle = 1
    while True:
        for o in changed:
            changes[o] += 1
        if record:
            deltas.append(sorted(changed.items()))
        changed = {}
        if not len(heap):
            if record:
                minimals_log.append([])
            break
        first, key = heap.pop()
        minimals = [first]
        while len(heap) and not lt(key, heap.peek()[1]):
            minimals.append(heap.pop()[0])
        for n in minimals:
            done[n] = True
            done_cycle[n] = cycle
        if record:
            minimals_log.append(minimals)
        cycle += 1
        for n in minimals:
            for a in ix.occurrences[n]:
                counter[a] += 1
                if counter[a] == arity[a]:
                    evaluate(a)
    return RawRun(y, cycle, evaluations, changes, deltas, minimals_log, done_cycle,
                  heap.operations)
