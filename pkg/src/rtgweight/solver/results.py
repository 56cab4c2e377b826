"""Solver outputs: weight maps, per-cycle traces and run statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

from ..algebra import WeightAlgebra, is_inf


@dataclass
class SolverStats:
    algorithm: str
    backend: str
    cycles: int
    alternative_evaluations: int
    value_changes: dict[str, int]
    heap_operations: int = 0

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "backend": self.backend,
            "cycles": self.cycles,
            "alternative_evaluations": self.alternative_evaluations,
            "heap_operations": self.heap_operations,
            "value_changes": dict(self.value_changes),
        }


@dataclass
class CycleState:
    cycle: int
    changes: dict[str, object]
    front: list[str]
    minimals: list[str] | None = None
    done: list[str] | None = None


@dataclass
class Trace:
    """Per-cycle deltas. Cycle 0 (everything at INF) is implicit.

    For the naive and liquid-flow solvers the water front of cycle k is the
    set of nonterminals that changed in cycle k. For the lazy solver the
    front is carried over between cycles and ``minimals`` records which
    nonterminals were moved to the done set.
    """

    algorithm: str
    names: list[str]
    deltas: list[list[tuple[str, object]]]
    minimals: list[list[str]] | None = None

    def __len__(self) -> int:
        return len(self.deltas)

    def changes(self, k: int) -> dict[str, object]:
        return dict(self.deltas[k - 1])

    def states(self) -> Iterator[CycleState]:
        front: set[str] = set()
        done: set[str] = set()
        order = {n: i for i, n in enumerate(self.names)}
        for k, delta in enumerate(self.deltas, 1):
            changed = dict(delta)
            if self.minimals is None:
                yield CycleState(k, changed, sorted(changed, key=order.get))
                continue
            # F(k) = (F(k-1) | changed) - M(k-1); M(k-1) was already removed
            front |= set(changed)
            mins = self.minimals[k - 1]
            state = CycleState(k, changed, sorted(front, key=order.get),
                               sorted(mins, key=order.get))
            done |= set(mins)
            front -= set(mins)
            state.done = sorted(done, key=order.get)
            yield state

    def value_table(self) -> list[dict[str, object]]:
        """Full value maps for cycles 0..len; only for small grammars."""
        from ..algebra import INF

        current = {n: INF for n in self.names}
        rows = [dict(current)]
        for delta in self.deltas:
            current.update(delta)
            rows.append(dict(current))
        return rows


@dataclass
class SolveResult:
    weights: dict[str, object]
    stats: SolverStats
    algebra: WeightAlgebra
    trace: Trace | None = None
    done_cycle: dict[str, int | None] | None = None

    def __getitem__(self, name: str):
        return self.weights[name]

    def finite(self) -> list[str]:
        return [n for n, w in self.weights.items() if not is_inf(w)]


def encode_weight(alg: WeightAlgebra, w):
    if is_inf(w):
        return "INF"
    if isinstance(w, int):
        return w
    return alg.render(w)


def trace_document(result: SolveResult) -> dict:
    """Structured form of a run; see README for the schema."""
    alg = result.algebra
    cycles = []
    if result.trace is not None:
        for st in result.trace.states():
            entry = {
                "cycle": st.cycle,
                "changed": {n: encode_weight(alg, w) for n, w in st.changes.items()},
                "front": st.front,
            }
            if st.minimals is not None:
                entry["minimals"] = st.minimals
                entry["done"] = st.done
            cycles.append(entry)
    return {
        "algorithm": result.stats.algorithm,
        "algebra": alg.name,
        "cycles": cycles,
        "weights": {n: encode_weight(alg, w) for n, w in result.weights.items()},
        "stats": result.stats.as_dict(),
    }


def dump_trace(result: SolveResult, fp) -> None:
    """Write the trace document as JSON with one line per cycle."""
    doc = trace_document(result)
    fp.write("{\n")
    fp.write(f' "algorithm": {json.dumps(doc["algorithm"])},\n')
    fp.write(f' "algebra": {json.dumps(doc["algebra"])},\n')
    fp.write(' "cycles": [')
    for i, entry in enumerate(doc["cycles"]):
        fp.write(("," if i else "") + "\n  " + json.dumps(entry))
    fp.write("\n ],\n")
    fp.write(f' "weights": {json.dumps(doc["weights"])},\n')
    fp.write(f' "stats": {json.dumps(doc["stats"])}\n')
    fp.write("}\n")
