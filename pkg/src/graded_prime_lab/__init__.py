"""Primeness of group-graded rings, decided and certified on finite examples."""
from .errors import (CapExceeded, CorrespondenceViolation, InputError, LabError, TheoremViolation)
from .groups import FiniteGroup, IntegerLattice, SymbolicGroup, cyclic, parse_group_expr
from .modring import FiniteRing, direct_sum, is_prime, matrix_ring, zero_ring_on, zmod
from .graded import GradedRing, classify_grading, is_G_prime, make_graded_ring
from .primality import decide_prime, main_theorem_harness, search_np_datum, verify_np_datum
from .constructions import (build_group_ring, build_matrix_graded, build_partial_crossed_product,
                            build_partial_skew_group_ring, build_skew_group_ring, connell_decision)
from .lpa import DirectedGraph, build_lpa_acyclic, lpa_prime_decision, satisfies_mt3

__version__ = "0.1.0"
