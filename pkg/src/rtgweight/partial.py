"""Variable-set weights under the subset order, and the CNF-SAT reduction.

Here the weight of a term is the set of variables occurring in it. Subset
inclusion is only a partial order, so the weight of a language is the
family of its subset-minimal variable sets (an antichain), and nonterminal
weights are computed by a fixpoint over antichains. Deciding the smallest
such set is NP-hard; :func:`cnf_to_grammar` is the reduction and
:func:`decide_sat` runs it end to end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .grammar import Grammar, check, make_grammar

VarSet = frozenset
Family = frozenset  # frozenset[frozenset[str]]

DEFAULT_ANTICHAIN_CAP = 2**20


class AntichainLimitError(RuntimeError):
    pass


def canonical(family: Iterable[frozenset[str]]) -> list[frozenset[str]]:
    """Members ordered by cardinality, then by their sorted names."""
    return sorted(family, key=lambda s: (len(s), sorted(s)))


def format_family(family: Iterable[frozenset[str]]) -> str:
    return "\n".join("{" + ",".join(sorted(s)) + "}" for s in canonical(family))


def pointwise_union(families: Sequence[Iterable[frozenset[str]]]) -> set[frozenset[str]]:
    """``{s_1 | ... | s_m : s_i in S_i}``; duplicates collapse, no minimisation."""
    result = {frozenset()}
    for fam in families:
        fam = list(fam)
        result = {acc | s for acc in result for s in fam}
        if not result:
            break
    return result


def minimize(family: Iterable[frozenset[str]]) -> frozenset[frozenset[str]]:
    """Keep the subset-minimal members."""
    kept: list[frozenset[str]] = []
    # a set can only be dominated by a strictly smaller one
    for s in sorted(set(family), key=len):
        if not any(k < s for k in kept):
            kept.append(s)
    return frozenset(kept)


def is_antichain(family: Iterable[frozenset[str]]) -> bool:
    fam = list(family)
    return not any(a < b for a in fam for b in fam)


def solve_varsets(g: Grammar, cap: int = DEFAULT_ANTICHAIN_CAP
                  ) -> dict[str, frozenset[frozenset[str]]]:
    """Least fixpoint of the antichain equations, one family per nonterminal.

    Iteration is synchronous: cycle k+1 reads only cycle k families. An empty
    family means the language is empty.
    """
    check(g)
    variables = g.signature.variables
    leaf = {f: frozenset({frozenset({f}) if f in variables else frozenset()})
            for f, n in g.signature.symbols.items() if n == 0}
    current = {n: frozenset() for n in g.rules}
    while True:
        nxt = {}
        for n, alts in g.rules.items():
            contrib = set(current[n])
            for alt in alts:
                if not alt.args:
                    contrib |= leaf[alt.symbol]
                    continue
                fams = [current[a] for a in alt.args]
                if any(not f for f in fams):
                    continue
                contrib |= _union_minimized(fams, cap)
            fam = minimize(contrib)
            if len(fam) > cap:
                raise AntichainLimitError(f"antichain for {n} exceeds {cap} members")
            nxt[n] = fam
        if nxt == current:
            return current
        current = nxt


def _union_minimized(fams, cap):
    """minimize(pointwise_union(fams)), minimizing after every step.

    Dropping a dominated partial union never loses a minimal result, since
    u' <= u implies u' | s <= u | s.
    """
    acc = frozenset({frozenset()})
    for f in fams:
        if len(acc) * len(f) > cap:
            raise AntichainLimitError(f"pointwise union would exceed {cap} members")
        acc = minimize(pointwise_union([acc, f]))
    return acc


# ---------------------------------------------------------------------- CNF

@dataclass(frozen=True)
class CnfFormula:
    """``clauses`` hold DIMACS-style literals: ``j`` for x_j, ``-j`` for not x_j."""

    variables: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.clauses:
            raise ValueError("formula has no clauses")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.variables:
                    raise ValueError(f"literal {lit} out of range 1..{self.variables}")

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[j-1]`` is the value of x_j."""
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    literals: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ValueError(f"line {lineno}: bad problem line {line!r}") from None
            continue
        if header is None:
            raise ValueError(f"line {lineno}: clause before 'p cnf' header")
        try:
            literals.extend(int(x) for x in line.split())
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer literal in {line!r}") from None
    if header is None:
        raise ValueError("missing 'p cnf' header")
    if literals and literals[-1] != 0:
        raise ValueError("last clause is not terminated by 0")
    clauses = []
    current: list[int] = []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(lit)
    n, m = header
    if len(clauses) != m:
        raise ValueError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def format_dimacs(c: CnfFormula) -> str:
    lines = [f"p cnf {c.variables} {len(c.clauses)}"]
    lines += [" ".join(str(l) for l in clause) + " 0" for clause in c.clauses]
    return "\n".join(lines) + "\n"


def cnf_to_grammar(c: CnfFormula) -> Grammar:
    """The reduction grammar.

    ``C' ::= c(D'1, ..., D'm)``; one alternative ``d(F1, .., Pj, .., Fn)``
    (or ``Nj`` for a negative literal) per literal of clause i in ``D'i``;
    ``Pj ::= yj``, ``Nj ::= zj``, ``Fj ::= yj | zj`` with all yj, zj variables.
    """
    n, m = c.variables, len(c.clauses)
    F = [f"F{j}" for j in range(1, n + 1)]
    rules: list[tuple[str, list]] = [("C'", [("c", [f"D'{i}" for i in range(1, m + 1)])])]
    for i, clause in enumerate(c.clauses, 1):
        alts = []
        for lit in clause:
            j = abs(lit)
            args = list(F)
            args[j - 1] = f"P{j}" if lit > 0 else f"N{j}"
            alts.append(("d", args))
        rules.append((f"D'{i}", alts))
    for j in range(1, n + 1):
        rules.append((f"P{j}", [f"y{j}"]))
        rules.append((f"N{j}", [f"z{j}"]))
        rules.append((f"F{j}", [f"y{j}", f"z{j}"]))
    symbols = {"c": m, "d": n}
    for j in range(1, n + 1):
        symbols[f"y{j}"] = 0
        symbols[f"z{j}"] = 0
    variables = [s for s in symbols if s[0] in "yz"]
    return check(make_grammar(rules, variables, symbols))


@dataclass
class SatVerdict:
    satisfiable: bool
    assignment: tuple[bool, ...] | None
    min_cardinality: int
    weights: frozenset[frozenset[str]]


def decide_sat(c: CnfFormula, cap: int = DEFAULT_ANTICHAIN_CAP) -> SatVerdict:
    """Satisfiable iff the smallest member of WG(C') has exactly n variables.

    The assignment is read off that member: x_j is true iff y_j is in it.
    """
    weights = solve_varsets(cnf_to_grammar(c), cap)["C'"]
    smallest = canonical(weights)[0]
    n = c.variables
    if len(smallest) != n:
        return SatVerdict(False, None, len(smallest), weights)
    assignment = tuple(f"y{j}" in smallest for j in range(1, n + 1))
    return SatVerdict(True, assignment, len(smallest), weights)


def truth_table_sat(c: CnfFormula) -> bool:
    return any(c.satisfied_by(bits)
               for bits in itertools.product((False, True), repeat=c.variables))
