#!/usr/bin/env python3
"""
Higher-order rewrite rules and the rewrite relation they induce.

Matching is restricted to higher-order patterns: a free variable on a
left-hand side may only be applied to eta-long forms of distinct bound
variables.  Pattern matching is decidable with at most one solution, so the
rewrite relation stays finitely branching.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import BudgetExceeded, HrsTypeError, ProblemError, UnsupportedRuleError
from .terms import (
    SymbolKind,
    Term,
    base_types_of,
    check_term,
    function_symbols_of,
    is_base,
    lam,
    refresh,
    render,
    substitute,
)

logger = logging.getLogger(__name__)


def eta_variable(term):
    """Return x if term is the eta-long form of the variable x, else None."""
    if not term.head.is_variable or term.head in term.binders:
        return None
    if len(term.args) != len(term.binders):
        return None
    for binder, arg in zip(term.binders, term.args):
        if eta_variable(arg) != binder:
            return None
    return term.head


def pattern_violation(term, bound=frozenset()):
    """The first subterm X(t1..tn) (X free) whose arguments are not distinct bound variables."""
    if term.binders:
        bound = bound | set(term.binders)
    if term.head.kind is SymbolKind.FREE and term.args:
        variables = [eta_variable(arg) for arg in term.args]
        if (any(v is None or v not in bound for v in variables)
                or len(set(variables)) != len(variables)):
            return term
    for arg in term.args:
        found = pattern_violation(arg, bound)
        if found is not None:
            return found
    return None


def is_pattern(term):
    return pattern_violation(term) is None


@dataclass(frozen=True)
class Rule:
    lhs: Term
    rhs: Term
    label: str

    def __post_init__(self):
        if not self.lhs.head.is_function or self.lhs.binders:
            raise ProblemError("the left-hand side must be headed by a function symbol", label=self.label)
        check_term(self.lhs)
        check_term(self.rhs)
        if self.lhs.type != self.rhs.type:
            raise HrsTypeError(
                f"rule {self.label}: sides have types {self.lhs.type} and {self.rhs.type}")
        if not is_base(self.lhs.type):
            raise HrsTypeError(f"rule {self.label}: rules must have basic type, not {self.lhs.type}")
        extra = self.rhs.free_vars - self.lhs.free_vars
        if extra:
            names = ", ".join(sorted(v.label for v in extra))
            raise ProblemError(f"variables {names} occur on the right but not on the left",
                               label=self.label)

    @property
    def root(self):
        return self.lhs.head

    @cached_property
    def is_pattern(self):
        return is_pattern(self.lhs)

    def __str__(self):
        return f"{render(self.lhs)} -> {render(self.rhs)}"


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple = ()
    signature: frozenset = field(default=frozenset())
    base_types: frozenset = field(default=frozenset())

    def __post_init__(self):
        labels = [rule.label for rule in self.rules]
        duplicates = {label for label in labels if labels.count(label) > 1}
        if duplicates:
            raise ProblemError(f"duplicate rule labels: {', '.join(sorted(duplicates))}")
        symbols = set(self.signature)
        for rule in self.rules:
            symbols |= function_symbols_of(rule.lhs) | function_symbols_of(rule.rhs)
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "signature", frozenset(symbols))
        bases = set(self.base_types)
        for symbol in symbols:
            bases |= base_types_of(symbol.type)
        object.__setattr__(self, "base_types", frozenset(bases))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    @cached_property
    def defined(self):
        return frozenset(rule.root for rule in self.rules)

    @cached_property
    def rules_by_root(self):
        grouped = {}
        for rule in self.rules:
            grouped.setdefault(rule.root, []).append(rule)
        return {root: tuple(rules) for root, rules in grouped.items()}

    @cached_property
    def labels(self):
        return tuple(rule.label for rule in self.rules)

    def rule(self, label):
        for rule in self.rules:
            if rule.label == label:
                return rule
        raise KeyError(f"no rule labelled {label!r}")

    def restrict(self, labels):
        """The subsystem made of the given rule labels, in system order."""
        wanted = set(labels)
        return RewriteSystem(tuple(r for r in self.rules if r.label in wanted),
                             self.signature, self.base_types)

    def extend(self, rules, symbols=()):
        return RewriteSystem(self.rules + tuple(rules), self.signature | set(symbols), self.base_types)

    def symbol(self, name, marked=False):
        for symbol in self.signature:
            if symbol.name == name and symbol.marked == marked:
                return symbol
        raise KeyError(f"no symbol named {name!r}")


def defined_symbols(system):
    """D_R: the root symbols of left-hand sides."""
    return system.defined


# ---------------------------------------------------------------------------
# Pattern matching
# ---------------------------------------------------------------------------

def match_pattern(lhs, term, label=None):
    """The substitution theta with lhs theta = term (modulo alpha), or None."""
    violation = pattern_violation(lhs)
    if violation is not None:
        raise UnsupportedRuleError(f"{render(violation)} is not a higher-order pattern", label)
    return _match_root(lhs, term)


def _match_root(lhs, term):
    if lhs.type != term.type:
        return None
    sigma = {}
    return sigma if _match(lhs, term, {}, sigma) else None


def _match(pattern, term, bound, sigma):
    if len(pattern.binders) != len(term.binders):
        return False
    if pattern.binders:
        if any(p.type != t.type for p, t in zip(pattern.binders, term.binders)):
            return False
        bound = {**bound, **dict(zip(pattern.binders, term.binders))}
    head = pattern.head
    if head.kind is SymbolKind.FREE:
        targets = tuple(bound[eta_variable(arg)] for arg in pattern.args)
        body = term.body
        local = set(bound.values())
        if not (body.free_vars & local) <= set(targets):
            return False
        value = refresh(Term(targets, body.head, body.args))
        if head in sigma:
            return sigma[head] == value
        sigma[head] = value
        return True
    if head in bound:
        if term.head != bound[head]:
            return False
    elif term.head != head:
        return False
    if len(pattern.args) != len(term.args):
        return False
    return all(_match(p, t, bound, sigma) for p, t in zip(pattern.args, term.args))


# ---------------------------------------------------------------------------
# Rewriting
# ---------------------------------------------------------------------------

def check_patterns(system):
    """Raise UnsupportedRuleError for the first rule whose lhs is not a pattern."""
    for rule in system.rules:
        violation = pattern_violation(rule.lhs)
        if violation is not None:
            raise UnsupportedRuleError(f"{render(violation)} is not a higher-order pattern", rule.label)


def root_reducts(term, system):
    """Reducts obtained by rewriting at the root of a term of basic type."""
    for rule in system.rules_by_root.get(term.head, ()):
        theta = _match_root(rule.lhs, term)
        if theta is not None:
            yield rule, substitute(rule.rhs, theta)


def _reducts(term, system):
    if term.binders:
        for reduct in _reducts(term.body, system):
            yield lam(term.binders, reduct)
        return
    for _, reduct in root_reducts(term, system):
        yield reduct
    for i, arg in enumerate(term.args):
        for reduct in _reducts(arg, system):
            yield Term((), term.head, term.args[:i] + (reduct,) + term.args[i + 1:])


def step_all(term, system):
    """All one-step reducts of a term, deduplicated modulo alpha, in position order."""
    check_patterns(system)
    return tuple(dict.fromkeys(_reducts(term, system)))


def reachable_within(source, target, system, depth, max_nodes=None):
    """Whether target is reachable from source in at most depth rewrite steps.

    Raises BudgetExceeded when more than max_nodes distinct terms were visited
    before an answer was found.
    """
    if source == target:
        return True
    check_patterns(system)
    seen = {source}
    frontier = deque([(source, 0)])
    while frontier:
        term, steps = frontier.popleft()
        if steps == depth:
            continue
        for reduct in dict.fromkeys(_reducts(term, system)):
            if reduct == target:
                return True
            if reduct in seen:
                continue
            seen.add(reduct)
            if max_nodes is not None and len(seen) > max_nodes:
                raise BudgetExceeded(f"reachability search visited more than {max_nodes} terms")
            frontier.append((reduct, steps + 1))
    return False


def reachable_set(source, system, depth, max_nodes=None):
    """All terms reachable from source in at most depth steps, with their distance."""
    check_patterns(system)
    distances = {source: 0}
    frontier = deque([source])
    while frontier:
        term = frontier.popleft()
        if distances[term] == depth:
            continue
        for reduct in _reducts(term, system):
            if reduct in distances:
                continue
            distances[reduct] = distances[term] + 1
            if max_nodes is not None and len(distances) > max_nodes:
                raise BudgetExceeded(f"reduction search visited more than {max_nodes} terms")
            frontier.append(reduct)
    return distances


def is_normal_form(term, system):
    return next(iter(_reducts(term, system)), None) is None
