"""Exact tools for MDS codes over finite abelian alphabets: weight
enumerators, upper bounds on the maximal length M_q(k), reference
constructions and an exhaustive existence search."""

from .alphabet import Alphabet, AlphabetSpec, parse_alphabet_spec
from .bounds import BoundResult, TheoremId, aggregate_bound, bound_table, theorem_bound
from .code import (Code, Equivalence, Partition, apply_equivalence, count_fixed,
                   hamming_distance, max_agreement, max_common_support_family,
                   min_distance, normalize_contains_zero, support, co_support,
                   verify_mds, weight_profile)
from .codefile import read_code, write_code
from .constructions import ConstructionSpec, build, fixture_suite, spec_for
from .enumerator import (empirical_pwe, empirical_weight_distribution,
                         mds_weight_distribution, pwe_formula, restricted_count_value)
from .search import SearchProblem, exists_mds, max_length

__version__ = "0.1.0"
