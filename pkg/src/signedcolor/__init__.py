"""Balanced (p,q)-colorings of signed graphs."""

from .coloring import (Coloring, Verdict, absolute_set, apply_signed_permutation, lift_32_to_53,
                       proper_subset_pair, restrict, switch_coloring, verify, verify_class_balance,
                       verify_edge_local)
from .cycles import TransferRelation, color_cycle, cycle_order, color_negative_cycle_kk1, transfer_relation
from .errors import (BadBlock, CapExceeded, EdgeNotPositive, InternalError, NegativeDigon, ParseError,
                     SignedGraphError)
from .exact import (BalancedSetFamily, Certificate, ChiResult, beta, chi_fb_exact, cover_coloring_exists,
                    enumerate_maximal_balanced_sets, realize_pq, search_coloring)
from .graph import (BalancedWitness, BlockDecomposition, Sign, SignedGraph, balance_check,
                    block_decompose, canonical_signature, contract_positive_edge, generate,
                    is_balanced_subset, switch_at, switching_equivalent)

from .construct import (NO_COLORING, Configuration, NoColoring, color_53, color_theorem5, detect_bad_blocks,
                        extend_by_template, extend_pendant, find_configuration, find_configurations,
                        small_case_table)

__version__ = "0.1.0"
