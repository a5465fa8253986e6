"""Strongly connected synchronizing automata for finitely generated ideal languages."""

from .analysis import (SearchResult, SynReport, is_synchronizing,
                       min_strongly_connected_search, reset_complexity_search,
                       shortest_reset_word, syn_language, verify_construction)
from .automaton import (Alphabet, Dfa, StateSet, Word, apply, are_isomorphic,
                        image, is_strongly_connected)
from .constructions import (FactorizationClass, build_b_u, build_c_s,
                            build_d_uv, build_de_bruijn, canonical_factorization,
                            lift_generators, overlap)
from .errors import (IdealSyncError, InputError, InvariantError, ParseError,
                     ResourceLimitError)
from .fileformat import export_dot, parse_automaton, render_automaton
from .languages import (GeneratorSet, Recognizer, anti_factorial_reduce,
                        build_ideal_recognizer, build_word_automaton,
                        equivalent, is_factor, member, minimize)

__version__ = "0.1.0"
