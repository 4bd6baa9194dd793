"""EDT0L systems with finite-automaton control and the solution-language
constructions built on them."""

from .assemble import assemble_group_solution_language, transversal_hom
from .closure import (FiniteAutomaton, block_filter, closure_combine, concat, fix_terminals,
                      hash_letters, hom_image, intersect_regular, separate_hashes, star, union)
from .construct import (MultiTapeAutomaton, StateBounds, bound_reordering, build_solution_system,
                        build_tuple_automaton, compute_bounds, coordinate_letters, element_word,
                        group_tuple_automaton, partial_sums_within, solution_word, tuple_word,
                        vector_solution_word, vector_word)
from .core import (IDENTITY, Control, Edt0lError, Edt0lSystem, Endomorphism, Enumeration,
                   TripleSplit, empty_system, enumerate_language, format_word, lower_bounds, to_dot)
