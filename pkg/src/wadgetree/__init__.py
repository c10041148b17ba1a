"""Wadge analysis of deterministic parity tree automata."""
from .automaton import (AutomatonError, DetTreeAutomaton, ParseError, export_dot,
                        extend_alphabet, extend_alphabet_many, from_table, parse_automaton,
                        serialize_automaton)
from .builder import ComposeOp, build, build_flower, build_weak_flower, compose_automata
from .canonical import (CanonicalizationError, ClassificationReport, TopologicalClass,
                        borel_membership, canonical_names_by_state, canonicalize, classify,
                        det_index, wadge_compare, weak_det_index)
from .names import (C1, C2, C3, D1, D2, D3, E1, E2, F01, F02, F12, TOP0, TOP1, TOP2, C, D, E,
                    CanonicalName, NameError_, and_name, arrow_name, krep_name, name_leq,
                    name_parse, name_print, name_validate, oplus_name, or_name)
from .ordinals import Index, Order, Ordinal, ord_parse, ord_print
from .productivity import nonempty_states, normalize, productive_states
from .structure import (SATURATED, admits_oracle, detect_top_patterns, find_split, lift_ranks,
                        max_flower, max_weak_flower, pattern_report)

__all__ = [
    "C", "C1", "C2", "C3", "D", "D1", "D2", "D3", "E", "E1", "E2", "F01", "F02", "F12",
    "TOP0", "TOP1", "TOP2",
    "AutomatonError", "CanonicalName", "CanonicalizationError", "ClassificationReport",
    "ComposeOp", "DetTreeAutomaton", "Index", "NameError_", "Order", "Ordinal", "ParseError",
    "SATURATED", "TopologicalClass", "admits_oracle", "and_name", "arrow_name",
    "borel_membership", "build", "build_flower", "build_weak_flower", "canonical_names_by_state",
    "canonicalize", "classify", "compose_automata", "det_index", "detect_top_patterns",
    "export_dot", "extend_alphabet", "extend_alphabet_many", "find_split", "from_table",
    "krep_name", "lift_ranks", "max_flower", "max_weak_flower", "name_leq", "name_parse",
    "name_print", "name_validate", "nonempty_states", "normalize", "oplus_name", "or_name",
    "ord_parse", "ord_print", "parse_automaton", "pattern_report", "productive_states",
    "serialize_automaton", "wadge_compare", "weak_det_index",
]
