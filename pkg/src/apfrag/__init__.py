"""Decision support for the array property fragment and the non-closure example."""
from .candidates import enumerate_candidates
from .errors import (ApfError, InsufficientBoundError, NoClashError, NotInFragmentError,
                     ParityViolationError, ParseError, ShadowingError, SortError,
                     UnassignedSymbolError, VerificationError)
from .evaluate import brute_force_eval, decide_property, eval_formula, eval_term, instantiation_set
from .fragment import FragmentVerdict, Reason, is_in_fragment, is_index_guard, is_value_constraint
from .interp import (CandidateVerdict, InterpolationProblem, Outcome, alternating_interpolants,
                     check_alternating_interpolants, check_candidate, example_problem,
                     verify_example_unsat)
from .kernel import BACKEND
from .models import FinArray, Model, diff_index, paper_model
from .smtlib import Script, format_formula, format_script, format_term, parse_formula, parse_script
from .stabilize import (Property, StabilizationReport, stab_index_formula, stab_index_property,
                        stab_index_term, verify_stabilization)

__version__ = "0.1.0"
