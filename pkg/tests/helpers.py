"""Independent oracles and random instance generators for the test-suite.

Nothing here calls the solvers: languages are enumerated bottom-up by
height, emptiness is decided by a separate productivity marking, and term
measures are recomputed by direct recursion.
"""

from __future__ import annotations

import itertools
import random

from rtgweight.algebra import AffineAlgebra, HeightAlgebra, SizeAlgebra
from rtgweight.grammar import Grammar, check, make_grammar
from rtgweight.terms import Term


def random_grammar(rng: random.Random, max_nt=4, max_al=8, max_ar=2,
                   n_symbols=None, min_nt=1) -> Grammar:
    nt = rng.randint(min_nt, max_nt)
    names = [f"N{i}" for i in range(nt)]
    n_symbols = n_symbols or rng.randint(2, 5)
    # at least one constant so some languages can be nonempty
    arities = [0] + [rng.randint(0, max_ar) for _ in range(n_symbols - 1)]
    symbols = {f"f{i}": a for i, a in enumerate(arities)}
    rules: dict[str, list] = {n: [] for n in names}
    for _ in range(rng.randint(1, max_al)):
        owner = rng.choice(names)
        f = rng.choice(list(symbols))
        rules[owner].append((f, [rng.choice(names) for _ in range(symbols[f])]))
    used = {f for alts in rules.values() for f, _ in alts}
    symbols = {f: a for f, a in symbols.items() if f in used}
    return check(make_grammar(rules.items(), symbols=symbols))


def random_affine(rng: random.Random, g: Grammar) -> AffineAlgebra:
    return AffineAlgebra({f: (rng.randint(0, 5), tuple(rng.randint(1, 3) for _ in range(n)))
                          for f, n in g.signature.symbols.items()})


def algebras_for(rng, g):
    return {"size": SizeAlgebra(), "height": HeightAlgebra(), "affine": random_affine(rng, g)}


def terms_by_height(g: Grammar, max_height: int, limit: int = 200_000) -> dict[str, set[Term]]:
    """All terms of L(N) with height <= max_height, for every N."""
    lang: dict[str, set[Term]] = {n: set() for n in g.rules}
    for _ in range(max_height):
        new = {n: set(ts) for n, ts in lang.items()}
        for n, alts in g.rules.items():
            for alt in alts:
                pools = [lang[a] for a in alt.args]
                for kids in itertools.product(*pools):
                    new[n].add(Term(alt.symbol, kids))
                if len(new[n]) > limit:
                    raise OverflowError("enumeration too large")
        lang = new
    return lang


def productive(g: Grammar) -> set[str]:
    """Nonterminals with a nonempty language (classic marking algorithm)."""
    marked: set[str] = set()
    changed = True
    while changed:
        changed = False
        for n, alts in g.rules.items():
            if n not in marked and any(all(a in marked for a in alt.args) for alt in alts):
                marked.add(n)
                changed = True
    return marked


def node_count(t: Term) -> int:
    return 1 + sum(node_count(c) for c in t.children)


def longest_path(t: Term) -> int:
    if not t.children:
        return 1
    return 1 + max(longest_path(c) for c in t.children)


def random_term(rng: random.Random, symbols: dict[str, int], height: int) -> Term:
    constants = [f for f, n in symbols.items() if n == 0]
    if height <= 1:
        return Term(rng.choice(constants))
    f = rng.choice(list(symbols))
    return Term(f, tuple(random_term(rng, symbols, rng.randint(1, height - 1))
                         for _ in range(symbols[f])))


BINARY3_TEXT = """
Q0 ::= a ;
Q1 ::= q(P1) | j(Q0) ;
P1 ::= p(Q0) ;
Q2 ::= q(P2) | j(Q1) ;
P2 ::= p(Q1) ;
Q3 ::= q(P3) | j(Q2) ;
P3 ::= p(Q2) ;
"""

BINARY_COSTS = """
a = 0
q(x) = x
p(x) = 2*x
j(x) = 2*x + 1
"""


def word_term(word: str) -> Term:
    """Unary shorthand: ``"qpja"`` is q(p(j(a)))."""
    t = Term(word[-1])
    for ch in reversed(word[:-1]):
        t = Term(ch, (t,))
    return t
