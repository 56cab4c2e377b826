import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import BINARY3_TEXT, random_grammar, terms_by_height, word_term
from rtgweight.grammar import (GrammarError, binary_numbers_grammar, build_occurrence_index,
                               make_grammar, membership_check, parse_grammar, print_grammar,
                               stats, validate)
from rtgweight.partial import CnfFormula, cnf_to_grammar
from rtgweight.terms import Term, parse_term


def test_single_constant_rule():
    g = parse_grammar("Q0 ::= a ;")
    assert g.nonterminals == ["Q0"]
    assert g.signature.symbols == {"a": 0}
    assert stats(g) == (1, 1, 0)


def test_empty_rule_is_empty_language():
    g = parse_grammar("N ::= ;")
    assert g.rules["N"] == ()
    assert stats(g) == (1, 0, 0)


def test_binary_numbers_text():
    g = parse_grammar(BINARY3_TEXT)
    # 2*n_max + 1 rules, 3*n_max + 1 alternatives, unary symbols only
    assert stats(g) == (7, 10, 1)
    assert validate(g) == []
    assert g.signature.symbols == {"a": 0, "q": 1, "j": 1, "p": 1}


def test_generated_family_matches_text():
    a = binary_numbers_grammar(3)
    b = parse_grammar(BINARY3_TEXT)
    assert dict(a.rules) == dict(b.rules)


def test_empty_grammar_stats():
    assert stats(parse_grammar("")) == (0, 0, 0)
    assert stats(parse_grammar("# only a comment\n")) == (0, 0, 0)


def test_reduction_grammar_stats():
    g = cnf_to_grammar(CnfFormula(3, ((1, -3), (-2, 3))))
    nt, al, ar = stats(g)
    assert (nt, al) == (1 + 2 + 3 * 3, 1 + 4 + 4 * 3) == (12, 17)
    assert ar == 3


def test_comments_and_whitespace():
    g = parse_grammar("""
        # comment
        S ::= f( A ,B)   # trailing
            | c ;
        A ::= c; B ::= ;
    """)
    assert [str(a) for a in g.rules["S"]] == ["f(A, B)", "c"]


@pytest.mark.parametrize("text, fragment", [
    ("S ::= a", "expected ;"),
    ("S := a ;", "syntax error at 1:3"),
    ("S ::= f(A ;", "expected )"),
    ("S ::= f() ;", "expected ident"),
    ("S ::= a ;\nS ::= b ;", "duplicate rule for nonterminal S at 2:1"),
    ("S ::= q(A) | q(A, A) ; A ::= a ;", "arity conflict for q"),
    ("S ::= A ; A ::= a ;", "used both as nonterminal and symbol"),
    ("S ::= f(X) ;", "undefined nonterminal X"),
    ("S ::= a $ ;", "unexpected '$'"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(GrammarError) as info:
        parse_grammar(text)
    assert any(fragment in d for d in info.value.diagnostics), info.value.diagnostics


def test_syntax_error_position_on_later_line():
    with pytest.raises(GrammarError, match="3:7"):
        parse_grammar("A ::= a ;\nB ::= b ;\nC ::= ( ;")


def test_validate_undefined_nonterminal():
    g = make_grammar([("S", [("f", ["X"])])])
    assert validate(g) == ["undefined nonterminal X (first used in S, alternative 1)"]


def test_validate_arity_conflict():
    g = make_grammar([("S", [("q", ["S"]), ("q", ["S", "S"]), "a"])])
    diags = validate(g)
    assert len(diags) == 1 and "arity conflict for q" in diags[0]


def test_validate_variable_arity():
    g = make_grammar([("S", [("x", ["S"]), "a"])], variables=["x"])
    assert any("variable x has arity 1" in d for d in validate(g))


def test_occurrence_index_binary_numbers():
    idx = build_occurrence_index(parse_grammar(BINARY3_TEXT))
    q0 = [(o.owner, o.alternative, o.position) for o in idx["Q0"]]
    assert q0 == [("Q1", 1, 0), ("P1", 0, 0)]
    assert idx["Q3"] == []


def test_occurrence_index_counts_random():
    rng = random.Random(7)
    for _ in range(50):
        g = random_grammar(rng, max_nt=6, max_al=15, max_ar=3)
        idx = build_occurrence_index(g)
        recount = {n: 0 for n in g.rules}
        for _, _, alt in g.alternatives():
            for a in alt.args:
                recount[a] += 1
        assert {n: len(v) for n, v in idx.items()} == recount
        assert sum(map(len, idx.values())) == sum(a.arity for _, _, a in g.alternatives())


def test_membership_examples():
    g = parse_grammar(BINARY3_TEXT)
    assert membership_check(g, "Q1", word_term("qpa"))
    assert membership_check(g, "Q0", word_term("a"))
    assert not membership_check(g, "Q1", word_term("a"))
    assert membership_check(g, "Q3", word_term("qpjja"))
    assert not membership_check(g, "Q2", word_term("qpjja"))


def test_membership_unknown_symbol():
    with pytest.raises(GrammarError, match="not in the signature"):
        membership_check(parse_grammar(BINARY3_TEXT), "Q0", Term("zz"))


def test_membership_agrees_with_enumeration():
    rng = random.Random(11)
    for _ in range(40):
        g = random_grammar(rng, max_nt=4, max_al=8, max_ar=2)
        lang = terms_by_height(g, 3)
        everything = set().union(*lang.values())
        for t in everything:
            for n in g.rules:
                assert membership_check(g, n, t) == (t in lang[n])


def test_print_round_trip_binary():
    g = parse_grammar(BINARY3_TEXT)
    assert parse_grammar(print_grammar(g)) == g


def test_print_round_trip_keeps_variables():
    g = cnf_to_grammar(CnfFormula(2, ((1, -2),)))
    h = parse_grammar(print_grammar(g))
    assert h.signature.variables == g.signature.variables
    assert dict(h.rules) == dict(g.rules)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_print_round_trip_random(seed):
    g = random_grammar(random.Random(seed), max_nt=6, max_al=12, max_ar=3)
    h = parse_grammar(print_grammar(g))
    assert dict(h.rules) == dict(g.rules)
    # symbols not used by any alternative are not printed
    assert h.signature.symbols == g.signature.symbols


def test_parse_term_round_trip():
    for s in ["a", "q(p(a))", "f(a,g(b,c))"]:
        assert str(parse_term(s)) == s
    assert parse_term(" f( a , b ) ") == Term("f", (Term("a"), Term("b")))


@pytest.mark.parametrize("bad", ["", "f(", "f(a,)", "a b", "(a)", "f(a))"])
def test_parse_term_errors(bad):
    with pytest.raises(ValueError):
        parse_term(bad)


def test_deep_terms_do_not_recurse():
    t = Term("a")
    for _ in range(20000):
        t = Term("q", (t,))
    assert t.height == 20001 and t.size == 20001
    assert len(str(t)) == 3 * 20000 + 1
    assert t == Term("q", (t.children[0],))
    assert hash(t) == hash(Term("q", (t.children[0],)))
