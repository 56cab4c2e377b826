"""Regular tree grammars: data model, ``.rtg`` reader/writer, validation.

A grammar file is a sequence of rules ``N ::= alt | alt ;``. Identifiers that
appear as a left-hand side are nonterminals, every other identifier is a
function symbol whose arity is fixed by its first use. ``N ::= ;`` declares a
nonterminal with the empty language. ``#`` starts a comment, except that a
comment line of the form ``#! variables: x y`` marks nullary symbols as
variables (only the variable-set weights look at that flag).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

from .terms import Term


class GrammarError(ValueError):
    """Raised for unparsable or invalid grammars.

    ``diagnostics`` carries every problem found, not just the first.
    """

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or [message]


@dataclass(frozen=True)
class Signature:
    symbols: Mapping[str, int]
    variables: frozenset[str] = frozenset()

    def arity(self, name: str) -> int:
        return self.symbols[name]

    @property
    def max_arity(self) -> int:
        return max(self.symbols.values(), default=0)

    def __contains__(self, name: str) -> bool:
        return name in self.symbols


@dataclass(frozen=True)
class Alternative:
    symbol: str
    args: tuple[str, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(self.args)})"


@dataclass(frozen=True)
class Occurrence:
    owner: str
    alternative: int
    position: int


@dataclass(frozen=True)
class Grammar:
    signature: Signature
    rules: Mapping[str, tuple[Alternative, ...]]

    @property
    def nonterminals(self) -> list[str]:
        return list(self.rules)

    def alternatives(self):
        """Yield ``(owner, index, alternative)`` in rule order."""
        for owner, alts in self.rules.items():
            for i, alt in enumerate(alts):
                yield owner, i, alt

    def __str__(self) -> str:
        return print_grammar(self)


def make_grammar(rules: Iterable[tuple[str, Iterable]], variables: Iterable[str] = (),
                 symbols: Mapping[str, int] | None = None) -> Grammar:
    """Build a grammar from ``(lhs, [(symbol, args), ...])`` pairs.

    Arities are inferred from first use unless ``symbols`` is given. The
    result is not validated; call :func:`validate` or :func:`check`.
    """
    rule_map: dict[str, tuple[Alternative, ...]] = {}
    inferred: dict[str, int] = dict(symbols or {})
    for lhs, alts in rules:
        built = []
        for alt in alts:
            if isinstance(alt, Alternative):
                a = alt
            elif isinstance(alt, str):
                a = Alternative(alt)
            else:
                sym, args = alt
                a = Alternative(sym, tuple(args))
            inferred.setdefault(a.symbol, a.arity)
            built.append(a)
        rule_map[lhs] = tuple(built)
    return Grammar(Signature(inferred, frozenset(variables)), rule_map)


def validate(g: Grammar) -> list[str]:
    """Return a list of human-readable diagnostics; empty means valid."""
    diags = []
    sig = g.signature
    for name in g.rules:
        if name in sig.symbols:
            diags.append(f"name {name} used both as nonterminal and symbol")
    for v in sorted(sig.variables):
        if v not in sig.symbols:
            diags.append(f"variable {v} is not a symbol of the signature")
        elif sig.symbols[v] != 0:
            diags.append(f"variable {v} has arity {sig.symbols[v]}, expected 0")
    seen_undefined = set()
    for owner, i, alt in g.alternatives():
        where = f"{owner}, alternative {i + 1}"
        if alt.symbol in g.rules:
            diags.append(f"{where}: nonterminal {alt.symbol} used as a function symbol")
        elif alt.symbol not in sig.symbols:
            diags.append(f"{where}: symbol {alt.symbol} not in signature")
        elif sig.symbols[alt.symbol] != alt.arity:
            diags.append(f"{where}: arity conflict for {alt.symbol}: used with "
                         f"{alt.arity} arguments, declared {sig.symbols[alt.symbol]}")
        for arg in alt.args:
            if arg not in g.rules and arg not in seen_undefined:
                seen_undefined.add(arg)
                diags.append(f"undefined nonterminal {arg} (first used in {where})")
    return diags


def check(g: Grammar) -> Grammar:
    diags = validate(g)
    if diags:
        raise GrammarError(diags[0], diags)
    return g


def stats(g: Grammar) -> tuple[int, int, int]:
    """``(nt, al, ar)``: nonterminals, alternatives, and the largest arity used."""
    al = sum(len(alts) for alts in g.rules.values())
    ar = max((alt.arity for _, _, alt in g.alternatives()), default=0)
    return len(g.rules), al, ar


def build_occurrence_index(g: Grammar) -> dict[str, list[Occurrence]]:
    index: dict[str, list[Occurrence]] = {n: [] for n in g.rules}
    for owner, i, alt in g.alternatives():
        for pos, arg in enumerate(alt.args):
            index[arg].append(Occurrence(owner, i, pos))
    return index


def deriving_nonterminals(g: Grammar, t: Term) -> frozenset[str]:
    """The set of nonterminals ``N`` with ``t`` in ``L(N)``, computed bottom-up."""
    sig = g.signature
    by_symbol: dict[str, list[tuple[str, Alternative]]] = {}
    for owner, _, alt in g.alternatives():
        by_symbol.setdefault(alt.symbol, []).append((owner, alt))
    memo: dict[Term, frozenset[str]] = {}
    # postorder without recursion
    stack = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node in memo:
            continue
        if node.root not in sig.symbols:
            raise GrammarError(f"term uses symbol {node.root} not in the signature")
        if sig.symbols[node.root] != len(node.children):
            raise GrammarError(f"term uses {node.root} with {len(node.children)} "
                               f"arguments, signature arity is {sig.symbols[node.root]}")
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
            continue
        kid_sets = [memo[c] for c in node.children]
        memo[node] = frozenset(
            owner for owner, alt in by_symbol.get(node.root, ())
            if all(a in s for a, s in zip(alt.args, kid_sets)))
    return memo[t]


def membership_check(g: Grammar, n: str, t: Term) -> bool:
    return n in deriving_nonterminals(g, t)


# ---------------------------------------------------------------- text format

_LEX = re.compile(r"""
    (?P<ws>\s+)
  | (?P<pragma>\#![^\n]*)
  | (?P<comment>\#[^\n]*)
  | (?P<derives>::=)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[|;(),])
  | (?P<bad>.)
""", re.VERBOSE)

_PRAGMA = re.compile(r"#!\s*variables\s*:(.*)")


def _tokenize(text: str):
    line, col_base = 1, 0
    for m in _LEX.finditer(text):
        kind = m.lastgroup
        pos = (line, m.start() - col_base + 1)
        value = m.group()
        if "\n" in value:
            line += value.count("\n")
            col_base = m.start() + value.rindex("\n") + 1
        if kind in ("ws", "comment"):
            continue
        if kind == "bad":
            raise GrammarError(f"syntax error at {pos[0]}:{pos[1]}: unexpected {value!r}")
        yield kind, value, pos
    yield "eof", "", (line, len(text) - col_base + 1)


def parse_grammar(text: str) -> Grammar:
    """Parse ``.rtg`` text into a validated :class:`Grammar`."""
    tokens = list(_tokenize(text))
    variables: list[str] = []
    raw_rules: list[tuple[str, list[tuple[str, list[str], tuple]], tuple]] = []
    i = 0

    def expect(kind, value=None):
        nonlocal i
        k, v, pos = tokens[i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            got = v or "end of input"
            raise GrammarError(f"syntax error at {pos[0]}:{pos[1]}: expected {want}, got {got!r}")
        i += 1
        return v, pos

    while tokens[i][0] != "eof":
        if tokens[i][0] == "pragma":
            m = _PRAGMA.match(tokens[i][1])
            if m:
                variables.extend(m.group(1).split())
            i += 1
            continue
        lhs, lhs_pos = expect("ident")
        expect("derives")
        alts = []
        if not (tokens[i][0] == "punct" and tokens[i][1] == ";"):
            while True:
                sym, sym_pos = expect("ident")
                args = []
                if tokens[i][0] == "punct" and tokens[i][1] == "(":
                    i += 1
                    args.append(expect("ident")[0])
                    while tokens[i][0] == "punct" and tokens[i][1] == ",":
                        i += 1
                        args.append(expect("ident")[0])
                    expect("punct", ")")
                alts.append((sym, args, sym_pos))
                if tokens[i][0] == "punct" and tokens[i][1] == "|":
                    i += 1
                    continue
                break
        expect("punct", ";")
        raw_rules.append((lhs, alts, lhs_pos))

    diags = []
    rules: dict[str, tuple[Alternative, ...]] = {}
    for lhs, alts, pos in raw_rules:
        if lhs in rules:
            diags.append(f"duplicate rule for nonterminal {lhs} at {pos[0]}:{pos[1]}")
            continue
        rules[lhs] = ()
    arities: dict[str, int] = {}
    seen_lhs = set()
    for lhs, alts, _ in raw_rules:
        if lhs in seen_lhs:
            continue
        seen_lhs.add(lhs)
        built = []
        for sym, args, pos in alts:
            if sym in rules:
                diags.append(f"name {sym} used both as nonterminal and symbol "
                             f"at {pos[0]}:{pos[1]}")
                continue
            if sym in arities and arities[sym] != len(args):
                diags.append(f"arity conflict for {sym} at {pos[0]}:{pos[1]}: used "
                             f"with {len(args)} arguments, first use had {arities[sym]}")
                continue
            arities.setdefault(sym, len(args))
            built.append(Alternative(sym, tuple(args)))
        rules[lhs] = tuple(built)
    for v in variables:
        if v in rules:
            diags.append(f"name {v} used both as nonterminal and symbol")
        else:
            arities.setdefault(v, 0)
    if diags:
        raise GrammarError(diags[0], diags)
    g = Grammar(Signature(arities, frozenset(variables)), rules)
    return check(g)


def print_grammar(g: Grammar) -> str:
    lines = []
    if g.signature.variables:
        # keep declaration order stable
        ordered = [s for s in g.signature.symbols if s in g.signature.variables]
        lines.append("#! variables: " + " ".join(ordered))
    for lhs, alts in g.rules.items():
        body = " | ".join(str(a) for a in alts)
        lines.append(f"{lhs} ::= {body} ;" if body else f"{lhs} ::= ;")
    return "\n".join(lines) + "\n"


def read_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as f:
        return parse_grammar(f.read())


# ------------------------------------------------------------- example family

def binary_numbers_grammar(n_max: int) -> Grammar:
    """The reversed-binary-numbers family: ``Q0 ::= a``,
    ``Qn ::= q(Pn) | j(Qn-1)``, ``Pn ::= p(Qn-1)``.

    Nonterminals are listed Q0, P1, Q1, P2, Q2, ... which is also the order
    the weights settle in.
    """
    rules: list[tuple[str, list]] = [("Q0", ["a"])]
    for n in range(1, n_max + 1):
        rules.append((f"P{n}", [("p", [f"Q{n - 1}"])]))
        rules.append((f"Q{n}", [("q", [f"P{n}"]), ("j", [f"Q{n - 1}"])]))
    return check(make_grammar(rules, symbols={"a": 0, "q": 1, "p": 1, "j": 1}))
