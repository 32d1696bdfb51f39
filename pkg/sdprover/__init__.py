"""
Termination proofs for higher-order rewrite systems with static dependency pairs.
"""

from .accessibility import accessible_set, is_pfp, safe_subterms
from .certificate import ProofCertificate, emit_certificate, load_certificate
from .dependency_pairs import (
    dependency_graph,
    emit_graph,
    recursion_components,
    static_dependency_pairs,
)
from .errors import (
    BudgetExceeded,
    HrsTypeError,
    PositionError,
    ProblemError,
    ProblemSyntaxError,
    ProofTimeout,
    ProverError,
    UnsupportedRuleError,
)
from .filtering import ArgumentFiltering, apply_filtering, compare_filtered, enumerate_filterings
from .parser import load_problem, parse_problem, read_problem
from .path_order import BaseOrder, find_precedence, path_ge, path_greater
from .prover import ProverOptions, prove
from .replay import replay_certificate
from .rewriting import Rule, RewriteSystem, match_pattern, step_all
from .subterm_criterion import Projection, check_subterm_criterion, find_projection
from .terms import alpha_eq, free_vars, normalize, positions, subterm_at, subterms, substitute
from .usable_rules import ce_rules, usable_rules

__all__ = [
    "ArgumentFiltering",
    "BaseOrder",
    "BudgetExceeded",
    "HrsTypeError",
    "PositionError",
    "ProblemError",
    "ProblemSyntaxError",
    "Projection",
    "ProofCertificate",
    "ProofTimeout",
    "ProverError",
    "ProverOptions",
    "RewriteSystem",
    "Rule",
    "UnsupportedRuleError",
    "accessible_set",
    "alpha_eq",
    "apply_filtering",
    "ce_rules",
    "check_subterm_criterion",
    "compare_filtered",
    "dependency_graph",
    "emit_certificate",
    "emit_graph",
    "enumerate_filterings",
    "find_precedence",
    "find_projection",
    "free_vars",
    "is_pfp",
    "load_certificate",
    "load_problem",
    "match_pattern",
    "normalize",
    "parse_problem",
    "path_ge",
    "path_greater",
    "positions",
    "prove",
    "read_problem",
    "recursion_components",
    "replay_certificate",
    "safe_subterms",
    "static_dependency_pairs",
    "step_all",
    "subterm_at",
    "subterms",
    "substitute",
    "usable_rules",
]
