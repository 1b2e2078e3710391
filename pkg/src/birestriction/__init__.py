"""Free F-birestriction monoids: term evaluation, word problems, and Munn and Cayley models."""

from .automata import InverseAutomaton, accepts, canonical_serialize, fold, glue, iso_check, linear_graph, rooted_morphism
from .ffbr import FFBRElement, VarietyContext, check_identity, decide_equal, evaluate, leq, max_element, sigma_related
from .munn import FBRElement, MunnTree, d_term, fbr_equal, fbr_eval, munn_of_word, psi_fi
from .perfect import CayleyPerfectElement, Discrepancy, TwinGraph, crosscheck, decide_equal_p, eval_p
from .stephen import BudgetExhausted, ClosureBudget, close, decide_equal_inv, is_idempotent
from .terms import Alphabet, Barred, Plain, ParseError, Variety, format_term, parse_term, parse_word

__version__ = "0.1.0"
