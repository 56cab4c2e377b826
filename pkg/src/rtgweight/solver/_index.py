"""Integer-indexed view of a grammar shared by both solver backends."""

from __future__ import annotations

from array import array

from ..grammar import Grammar


class IndexedGrammar:
    """Nonterminals and alternatives numbered in rule order.

    ``occurrences[n]`` lists, for every occurrence of nonterminal ``n`` on a
    right-hand side, the alternative it occurs in (an alternative using ``n``
    twice is listed twice).
    """

    def __init__(self, g: Grammar):
        self.grammar = g
        self.names = list(g.rules)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.alt_owner: list[int] = []
        self.alt_symbol: list[str] = []
        self.alt_args: list[tuple[int, ...]] = []
        self.alt_local: list[int] = []
        self.rule_alts: list[list[int]] = [[] for _ in self.names]
        self.occurrences: list[list[int]] = [[] for _ in self.names]
        for owner, local, alt in g.alternatives():
            a = len(self.alt_owner)
            o = self.index[owner]
            self.alt_owner.append(o)
            self.alt_symbol.append(alt.symbol)
            args = tuple(self.index[x] for x in alt.args)
            self.alt_args.append(args)
            self.alt_local.append(local)
            self.rule_alts[o].append(a)
            for b in args:
                self.occurrences[b].append(a)
        self.nullary = [a for a, args in enumerate(self.alt_args) if not args]

    @property
    def nt(self) -> int:
        return len(self.names)

    @property
    def al(self) -> int:
        return len(self.alt_owner)

    def flat(self, program):
        """Flatten for the compiled kernel given a numeric ``program``."""
        al = self.al
        start = array("q", bytes(8 * (al + 1)))
        mode = array("q", bytes(8 * al))
        const = array("q", bytes(8 * al))
        owner = array("q", self.alt_owner)
        args, coef = [], []
        for a in range(al):
            m, c, coeffs = program[self.alt_symbol[a]]
            mode[a], const[a] = m, c
            args.extend(self.alt_args[a])
            coef.extend(coeffs)
            start[a + 1] = len(args)
        occ_start = array("q", bytes(8 * (self.nt + 1)))
        occ = []
        for n in range(self.nt):
            occ.extend(self.occurrences[n])
            occ_start[n + 1] = len(occ)
        rule_start = array("q", bytes(8 * (self.nt + 1)))
        rule = []
        for n in range(self.nt):
            rule.extend(self.rule_alts[n])
            rule_start[n + 1] = len(rule)
        return dict(owner=owner, start=start, args=array("q", args), mode=mode,
                    const=const, coef=array("q", coef), occ_start=occ_start,
                    occ=array("q", occ), rule_start=rule_start, rule=array("q", rule))
