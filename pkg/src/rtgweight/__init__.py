"""Minimal term weights for regular tree grammars."""

from .algebra import (INF, AffineAlgebra, HeightAlgebra, MinTermAlgebra, SizeAlgebra,
                      WeightAlgebra, check_algebra_laws, parse_costs)
from .grammar import Grammar, GrammarError, membership_check, parse_grammar, print_grammar, stats
from .kbest import enumerate_terms
from .solver import (extract_witnesses, prune_empty, solve, solve_lazy, solve_liquid,
                     solve_naive)
from .terms import Term, parse_term

__version__ = "0.1.0"

__all__ = [
    "INF", "AffineAlgebra", "HeightAlgebra", "MinTermAlgebra", "SizeAlgebra", "WeightAlgebra",
    "check_algebra_laws", "parse_costs", "Grammar", "GrammarError", "membership_check",
    "parse_grammar", "print_grammar", "stats", "enumerate_terms", "extract_witnesses",
    "prune_empty", "solve", "solve_lazy", "solve_liquid", "solve_naive", "Term", "parse_term",
]
