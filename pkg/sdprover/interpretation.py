#!/usr/bin/env python3
"""
The interpretation I used to justify usable rules, as an executable oracle.

I keeps a term as it is except at symbols of Delta (roots of the rules
that are not usable), where it also records every one-step R-reduct with
the projection symbols c_a and bot_a.  Only the test-suite uses it; the
prover never calls it.
"""

import logging

from .errors import BudgetExceeded
from .rewriting import step_all
from .terms import Term, app, const, lam, sorted_terms
from .usable_rules import ce_rules, usable_rules

logger = logging.getLogger(__name__)


class Interpretation:
    def __init__(self, system, component, budget=10000):
        report = usable_rules(component, system)
        usable = set(report.usable)
        self.system = system
        self.usable = system.restrict(usable)
        self.unusable = system.restrict(set(system.labels) - usable)
        self.delta = self.unusable.defined
        self.ce = ce_rules(system.base_types, system.signature)
        self.budget = budget
        self._memo = {}
        self._active = set()

    def red(self, ty, terms):
        """Red_a(T): bot_a for an empty set, else c_a(least(T), Red_a(T - least(T)))."""
        result = const(self.ce.bottom[ty])
        for term in reversed(sorted_terms(set(terms))):
            result = app(self.ce.choice[ty], term, result)
        return result

    def __call__(self, term):
        if term in self._memo:
            return self._memo[term]
        if term in self._active:
            raise BudgetExceeded(f"{term} does not terminate")
        if len(self._memo) >= self.budget:
            raise BudgetExceeded(f"interpretation needed more than {self.budget} terms")
        self._active.add(term)
        try:
            result = self._interpret(term)
        finally:
            self._active.discard(term)
        self._memo[term] = result
        return result

    def _interpret(self, term):
        if term.binders:
            return lam(term.binders, self(term.body))
        image = Term((), term.head, tuple(self(arg) for arg in term.args))
        if term.head not in self.delta:
            return image
        reducts = [self(reduct) for reduct in step_all(term, self.system)]
        return app(self.ce.choice[term.type], image, self.red(term.type, reducts))

    def substitution(self, theta):
        """theta^I(x) = I(theta(x))"""
        return {variable: self(value) for variable, value in theta.items()}

    def oracle_system(self):
        """U(C) together with C_e, extended by the fresh projection symbols."""
        return self.usable.extend(self.ce.rules, self.ce.symbols())


def interpret(term, system, component, budget=10000):
    """I(t) with Delta the roots of the rules of R outside U(C)."""
    return Interpretation(system, component, budget)(term)
