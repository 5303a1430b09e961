"""Context-free grammars and finite automata over free categories and free operads.

Grammars are maps from a species into spliced arrows of a graph; automata
are graph homomorphisms with chosen initial and accepting states.  The
submodules cover parsing, regular intersection, tree automata, contour
words and their Dyck encodings.
"""
from .automaton import (ClassicalNfa, Nfa, accepts, bracket_embed, classical_to_nfa,
                        enumerate_regular, intersect_nfa, runs, singleton_nfa, total_nfa)
from .contour import (Corner, CsDecomposition, CsReport, Oriented, chromatic_factorization,
                      coloring_automaton, contour_graph, contour_of_tree, cs_decompose, cs_verify,
                      q_functor, universal_grammar)
from .dyck import (Bracket, dyck_k_grammar, index_automaton, inverse_translate, is_balanced,
                   s_translate, sdyck_grammar)
from .errors import SpliceError, TypingError, UnknownIdError, ValidationError
from .grammar import (Cfg, analyze, bilinearize, classical_cfg, enumerate_language, image,
                      member_bruteforce, trim, union, validate_cfg, yield_of, yield_path)
from .graph import Graph, GraphHom, PathArrow, PathFunctor, apply_functor, bouquet, lift_runs
from .intersection import intersect_cfg_regular, pullback_grammar
from .parsing import AmbiguityCount, parse_count, parse_trees, recognize
from .species import Leaf, Node, SNode, Species, SpeciesMap, enumerate_trees
from .spliced import GapType, SplicedArrow, splice_at, splice_full
from .tree_automaton import (GCfgFree, TreeNfa, accepts_tree, count_tree_runs,
                             enumerate_gcfg, intersect_gcfg_regular)

__all__ = [
    "ClassicalNfa", "Nfa", "accepts", "bracket_embed", "classical_to_nfa", "enumerate_regular",
    "intersect_nfa", "runs", "singleton_nfa", "total_nfa", "Corner", "CsDecomposition",
    "CsReport", "Oriented", "chromatic_factorization", "coloring_automaton", "contour_graph",
    "contour_of_tree", "cs_decompose", "cs_verify", "q_functor", "universal_grammar", "Bracket",
    "dyck_k_grammar", "index_automaton", "inverse_translate", "is_balanced", "s_translate",
    "sdyck_grammar", "SpliceError", "TypingError", "UnknownIdError", "ValidationError", "Cfg",
    "analyze", "bilinearize", "classical_cfg", "enumerate_language", "image",
    "member_bruteforce", "trim", "union", "validate_cfg", "yield_of", "yield_path", "Graph",
    "GraphHom", "PathArrow", "PathFunctor", "apply_functor", "bouquet", "lift_runs",
    "intersect_cfg_regular", "pullback_grammar", "AmbiguityCount", "parse_count", "parse_trees",
    "recognize", "Leaf", "Node", "SNode", "Species", "SpeciesMap", "enumerate_trees", "GapType",
    "SplicedArrow", "splice_at", "splice_full", "GCfgFree", "TreeNfa", "accepts_tree",
    "count_tree_runs", "enumerate_gcfg", "intersect_gcfg_regular",
]

__version__ = "0.1.0"
