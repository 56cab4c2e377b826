"""Enumerate the lightest terms of a nonterminal's language in weight order.

Search items are partial derivations: terms whose unexpanded leaves are
nonterminals. An item's priority is its weight with every open leaf ``M``
valued at WG(M) (admissible, since weight functions are monotonic and
increasing), followed by the symbols of its preorder sequence up to the
first open leaf. The leftmost open leaf is expanded first, so a completed
term's sequence always extends that prefix; popping in priority order thus
yields terms sorted by weight, ties broken lexicographically on the preorder
sequence under the signature's declaration order.
"""

from __future__ import annotations

import heapq
import itertools

from .algebra import WeightAlgebra, is_inf
from .grammar import Grammar, check
from .solver import solve_lazy
from .terms import Term

DEFAULT_FRONTIER_CAP = 1_000_000


class ResourceLimitError(RuntimeError):
    pass


class _Hole:
    __slots__ = ("nonterminal",)

    def __init__(self, nonterminal: str):
        self.nonterminal = nonterminal


# partial terms are nested tuples (symbol, child, ...) with _Hole leaves


def _fill_leftmost(node, replacement):
    """Return ``node`` with its leftmost hole replaced, or None if it has none."""
    if isinstance(node, _Hole):
        return replacement
    for i in range(1, len(node)):
        new = _fill_leftmost(node[i], replacement)
        if new is not None:
            return node[:i] + (new,) + node[i + 1:]
    return None


def _first_hole(node):
    if isinstance(node, _Hole):
        return node
    for child in node[1:]:
        h = _first_hole(child)
        if h is not None:
            return h
    return None


def _prefix(node, rank, out):
    """Append symbol ranks in preorder until the first hole; True if complete."""
    if isinstance(node, _Hole):
        return False
    out.append(rank[node[0]])
    return all(_prefix(c, rank, out) for c in node[1:])


def _estimate(node, alg, lower):
    if isinstance(node, _Hole):
        return lower[node.nonterminal]
    return alg.apply(node[0], [_estimate(c, alg, lower) for c in node[1:]])


def _to_term(node) -> Term:
    return Term(node[0], tuple(_to_term(c) for c in node[1:]))


class _Key:
    """Heap priority: (weight under the algebra order, preorder prefix)."""

    __slots__ = ("weight", "prefix", "alg")

    def __init__(self, weight, prefix, alg):
        self.weight, self.prefix, self.alg = weight, prefix, alg

    def __lt__(self, other: _Key) -> bool:
        if self.alg.lt(self.weight, other.weight):
            return True
        if self.alg.lt(other.weight, self.weight):
            return False
        return self.prefix < other.prefix


def enumerate_terms(g: Grammar, alg: WeightAlgebra, n: str, k: int, *,
                    frontier_cap: int = DEFAULT_FRONTIER_CAP,
                    lower_bounds: dict | None = None) -> list[tuple[Term, object]]:
    """Up to ``k`` distinct terms of L(n) with their weights, lightest first.

    Raises :class:`ResourceLimitError` when the search frontier exceeds
    ``frontier_cap`` items.
    """
    check(g)
    if n not in g.rules:
        raise KeyError(f"unknown nonterminal {n}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if lower_bounds is None:
        lower_bounds = solve_lazy(g, alg, trace=False).weights
    if is_inf(lower_bounds[n]):
        return []
    rank = {s: i for i, s in enumerate(g.signature.symbols)}
    tie = itertools.count()
    heap: list = []

    def push(node):
        weight = _estimate(node, alg, lower_bounds)
        if is_inf(weight):
            return
        prefix: list[int] = []
        _prefix(node, rank, prefix)
        heapq.heappush(heap, (_Key(weight, tuple(prefix), alg), next(tie), node))
        if len(heap) > frontier_cap:
            raise ResourceLimitError(
                f"enumeration frontier exceeded {frontier_cap} items")

    push(_Hole(n))
    out: list[tuple[Term, object]] = []
    seen: set[Term] = set()
    while heap and len(out) < k:
        key, _, node = heapq.heappop(heap)
        hole = _first_hole(node)
        if hole is None:
            t = _to_term(node)
            if t not in seen:
                seen.add(t)
                out.append((t, key.weight))
            continue
        for alt in g.rules[hole.nonterminal]:
            if any(is_inf(lower_bounds[a]) for a in alt.args):
                continue
            replacement = (alt.symbol,) + tuple(_Hole(a) for a in alt.args)
            push(_fill_leftmost(node, replacement))
    return out
