import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import terms_by_height
from rtgweight.grammar import make_grammar, print_grammar, stats
from rtgweight.partial import (AntichainLimitError, CnfFormula, canonical, cnf_to_grammar,
                               decide_sat, format_dimacs, format_family, is_antichain,
                               minimize, parse_dimacs, pointwise_union, solve_varsets)


def fs(*members):
    return {frozenset(m.split(",")) if m else frozenset() for m in members}


EXAMPLE = CnfFormula(3, ((1, -3), (-2, 3)))


def test_pointwise_union_example():
    s1 = fs("a,b,c", "a,d,e")
    s2 = fs("b,c,d", "d,e")
    assert pointwise_union([s1, s2]) == fs("a,b,c,d", "a,b,c,d,e", "a,d,e")


def test_pointwise_union_edge_cases():
    s = fs("a", "b,c")
    assert pointwise_union([s]) == s
    assert pointwise_union([]) == {frozenset()}
    assert pointwise_union([s, set()]) == set()


def test_minimize_examples():
    assert minimize(fs("a", "a,b")) == fs("a")
    anti = fs("a,b", "b,c", "d")
    assert minimize(anti) == anti
    assert minimize(set()) == frozenset()


def _family(draw_sets):
    return {frozenset(s) for s in draw_sets}


families = st.lists(st.frozensets(st.sampled_from("abcdef"), max_size=4), max_size=6).map(set)


@settings(max_examples=300, deadline=None)
@given(families)
def test_minimize_matches_quadratic_filter(fam):
    expect = {s for s in fam if not any(t < s for t in fam)}
    got = minimize(fam)
    assert got == expect
    assert is_antichain(got)
    assert minimize(got) == got


@settings(max_examples=300, deadline=None)
@given(st.lists(families, min_size=1, max_size=4), st.frozensets(st.sampled_from("abcdef")))
def test_union_properties(fams, s):
    union = pointwise_union(fams)
    # member of every family implies member of the union
    if all(s in f for f in fams):
        assert s in union
    # every union member dominates some member of each family
    for u in union:
        assert all(any(x <= u for x in f) for f in fams)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32))
def test_union_exact_for_equal_cardinality(n, m, seed):
    rng = random.Random(seed)
    universe = [frozenset(f"{'yz'[b]}{j}" for j, b in enumerate(bits, 1))
                for bits in itertools.product((0, 1), repeat=n)]
    fams = [set(rng.sample(universe, rng.randint(1, len(universe)))) for _ in range(m)]
    union = pointwise_union(fams)
    for s in universe:
        assert (s in union) == all(s in f for f in fams)


def test_varsets_two_leaves():
    g = make_grammar([("F1", ["y1", "z1"])], variables=["y1", "z1"])
    assert solve_varsets(g) == {"F1": fs("y1", "z1")}


def test_varsets_constant_contributes_empty_set():
    g = make_grammar([("S", [("f", ["A", "B"])]), ("A", ["a"]), ("B", ["x", "b"])],
                     variables=["x"])
    out = solve_varsets(g)
    assert out["A"] == {frozenset()}
    assert out["B"] == {frozenset()}
    assert out["S"] == {frozenset()}


def test_varsets_empty_language():
    g = make_grammar([("S", [("f", ["S"])]), ("T", ["x"])], variables=["x"])
    assert solve_varsets(g) == {"S": frozenset(), "T": fs("x")}


def test_reduction_grammar_shape():
    g = cnf_to_grammar(EXAMPLE)
    text = print_grammar(g)
    assert "C' ::= c(D'1, D'2) ;" in text
    assert "D'1 ::= d(P1, F2, F3) | d(F1, F2, N3) ;" in text
    assert "D'2 ::= d(F1, N2, F3) | d(F1, F2, P3) ;" in text
    assert "F2 ::= y2 | z2 ;" in text and "N3 ::= z3 ;" in text
    assert stats(g)[:2] == (12, 17)
    assert g.signature.variables == {"y1", "y2", "y3", "z1", "z2", "z3"}


def test_single_clause_grammar():
    g = cnf_to_grammar(CnfFormula(1, ((1,),)))
    assert [str(a) for a in g.rules["D'1"]] == ["d(P1)"]
    assert set(g.rules) == {"C'", "D'1", "P1", "N1", "F1"}


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_reduction_sizes_closed_form(seed):
    rng = random.Random(seed)
    n, m = rng.randint(3, 8), rng.randint(1, 10)
    clauses = tuple(tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(3))
                    for _ in range(m))
    nt, al, ar = stats(cnf_to_grammar(CnfFormula(n, clauses)))
    assert nt == 1 + m + 3 * n
    assert al == 1 + sum(len(c) for c in clauses) + 4 * n
    assert ar == max(m, n)


def test_example_atom_and_disjunct_sets():
    # a one-clause formula whose only literal is not x3 isolates psi(not x3)
    atom = solve_varsets(cnf_to_grammar(CnfFormula(3, ((-3,),))))["D'1"]
    assert atom == fs("y1,y2,z3", "y1,z2,z3", "z1,y2,z3", "z1,z2,z3")
    out = solve_varsets(cnf_to_grammar(EXAMPLE))
    assert out["D'1"] == fs("y1,y2,y3", "y1,y2,z3", "y1,z2,y3", "y1,z2,z3",
                            "z1,y2,z3", "z1,z2,z3")
    assert out["D'2"] == fs("y1,y2,y3", "y1,z2,y3", "y1,z2,z3", "z1,y2,y3",
                            "z1,z2,y3", "z1,z2,z3")
    assert out["C'"] == fs("y1,y2,y3", "y1,z2,y3", "y1,z2,z3", "z1,z2,z3", "z1,y2,y3,z3")
    assert frozenset({"y1", "z1", "y2", "y3"}) not in out["C'"]


def test_example_decision():
    v = decide_sat(EXAMPLE)
    assert v.satisfiable and v.min_cardinality == 3
    assert EXAMPLE.satisfied_by(v.assignment)
    # the canonical smallest member is {y1,y2,y3}
    assert v.assignment == (True, True, True)


def test_contradiction_is_unsatisfiable():
    v = decide_sat(CnfFormula(1, ((1,), (-1,))))
    assert not v.satisfiable and v.assignment is None
    assert v.min_cardinality == 2
    assert v.weights == fs("y1,z1")


def _truth_table(n, clauses):
    for bits in itertools.product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32))
def test_decide_sat_matches_truth_table(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 6), rng.randint(1, 10)
    clauses = tuple(tuple(rng.choice((1, -1)) * rng.randint(1, n)
                          for _ in range(rng.randint(1, 3))) for _ in range(m))
    c = CnfFormula(n, clauses)
    v = decide_sat(c)
    assert v.satisfiable == _truth_table(n, clauses)
    if v.satisfiable:
        assert all(any(v.assignment[abs(l) - 1] == (l > 0) for l in cl) for cl in clauses)
    assert is_antichain(v.weights)


def _brute_varsets(g, height):
    lang = terms_by_height(g, height)
    out = {}
    for n, ts in lang.items():
        out[n] = minimize(frozenset(s for s in t.preorder() if s in g.signature.variables)
                          for t in ts)
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_varsets_match_brute_force_on_acyclic_grammars(seed):
    rng = random.Random(seed)
    nt = rng.randint(1, 5)
    names = [f"N{i}" for i in range(nt)]
    leaves = ["x", "y", "z", "c"]
    symbols = {"x": 0, "y": 0, "z": 0, "c": 0, "f": 1, "g": 2}
    rules = []
    for i, name in enumerate(names):
        alts = []
        for _ in range(rng.randint(0, 3)):
            lower = names[i + 1:]
            kind = rng.random()
            if not lower or kind < 0.4:
                alts.append(rng.choice(leaves))
            elif kind < 0.7:
                alts.append(("f", [rng.choice(lower)]))
            else:
                alts.append(("g", [rng.choice(lower), rng.choice(lower)]))
        rules.append((name, alts))
    g = make_grammar(rules, variables=["x", "y", "z"], symbols=symbols)
    got = solve_varsets(g)
    # nonrecursive: every term has height <= nt
    assert got == _brute_varsets(g, nt)
    assert all(is_antichain(f) for f in got.values())


def test_antichain_cap():
    c = CnfFormula(6, tuple((j,) for j in range(1, 7)))
    with pytest.raises(AntichainLimitError):
        decide_sat(c, cap=8)


def test_dimacs_round_trip():
    text = "c example\np cnf 3 2\n1 -3 0\n-2 3 0\n"
    c = parse_dimacs(text)
    assert c == EXAMPLE
    assert parse_dimacs(format_dimacs(c)) == c
    # clauses may span lines
    assert parse_dimacs("p cnf 3 2\n1\n-3 0 -2 3\n0\n") == EXAMPLE


@pytest.mark.parametrize("text, fragment", [
    ("1 2 0\n", "before 'p cnf'"),
    ("p cnf 2 1\n1 3 0\n", "out of range"),
    ("p cnf 2 2\n1 0\n", "announces 2 clauses"),
    ("p cnf 2 1\n1 2\n", "not terminated"),
    ("p cnf 2 1\n1 x 0\n", "non-integer"),
    ("p dnf 2 1\n1 0\n", "bad problem line"),
    ("p cnf 2 0\n", "no clauses"),
    ("p cnf 2 2\n1 0\n0\n", "empty clause"),
    ("", "missing"),
])
def test_dimacs_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_dimacs(text)


def test_family_format_is_canonical():
    fam = fs("z1,y2", "a", "b,a")
    assert format_family(fam) == "{a}\n{a,b}\n{y2,z1}"
    assert canonical(fam)[0] == frozenset({"a"})
