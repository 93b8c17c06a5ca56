"""Exact infinite permutations: construction, factors, complexity and periodicity."""
from .errors import (
    BudgetExceeded, ConstructionError, InvalidPairError, MalformedAutomaton, NonInjectiveError,
    PermlabError, RationalDependenceError, SpecError, UnresolvedComparison, UnsupportedFieldError,
)
from .numerics import QuadraticSurd, compare, floor_surd, format_exact, parse_exact, sqrt
from .words import (
    InfiniteWord, Morphism, fibonacci_word, mechanical_word, morphic_word, parse_word,
    period_doubling, symbol_at, thue_morse,
)
from .patterns import Pattern, PermutationView, Relation, Window, factor, gamma_of, is_t_periodic, pattern_of
from .genperm import (
    parse_perm, periodic_family, sturmian_permutation, tm_morphic_permutation,
    tm_morphic_representative, word_permutation,
)

__version__ = "0.1.0"
