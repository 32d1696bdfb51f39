#!/usr/bin/env python3
"""
Usable rules of a recursion component and the projection rules C_e.
"""

import logging
from dataclasses import dataclass

import networkx as nx

from .rewriting import Rule, eta_variable
from .terms import app, arrow, const, free_variable, function_symbol, function_symbols_of, render

logger = logging.getLogger(__name__)


def defined_dependency(system):
    """The digraph of f >_def g: g is defined and occurs in the right side of a rule of f."""
    graph = nx.DiGraph()
    defined = system.defined
    graph.add_nodes_from(sorted(defined, key=lambda s: s.ident))
    for rule in system.rules:
        for symbol in function_symbols_of(rule.rhs):
            if symbol in defined:
                graph.add_edge(rule.root, symbol)
    return graph


def def_closure(graph, symbols):
    """{g | f >_def* g for some f in symbols}"""
    found = set()
    for symbol in symbols:
        if symbol in graph:
            found.add(symbol)
            found |= nx.descendants(graph, symbol)
    return found


@dataclass(frozen=True)
class UsableReport:
    usable: tuple  # rule labels, in system order
    pattern_ok: bool = True
    witness: object = None  # the subterm failing the pattern condition
    component: int = None

    @property
    def reason(self):
        return "full" if self.pattern_ok else "pattern-condition-failed"

    def describe(self):
        text = "{" + ", ".join(self.usable) + "}"
        if not self.pattern_ok:
            text += f" (all rules: {render(self.witness)} is not applied to distinct bound variables)"
        return text


def pattern_condition_violation(term, bound=frozenset()):
    """A subterm X(t1..tn), X free in term, whose arguments are not distinct variables bound in term."""
    if term.binders:
        bound = bound | set(term.binders)
    if term.head.is_variable and term.head not in bound and term.args:
        variables = [eta_variable(arg) for arg in term.args]
        if (any(v is None or v not in bound for v in variables)
                or len(set(variables)) != len(variables)):
            return term
    for arg in term.args:
        found = pattern_condition_violation(arg, bound)
        if found is not None:
            return found
    return None


def usable_rules_of_term(term, system, graph=None):
    violation = pattern_condition_violation(term)
    if violation is not None:
        return UsableReport(system.labels, False, violation)
    graph = defined_dependency(system) if graph is None else graph
    reachable = def_closure(graph, function_symbols_of(term) & system.defined)
    return UsableReport(tuple(r.label for r in system.rules if r.root in reachable))


def usable_rules(component, system, component_id=None):
    """U(C): the union of U(v#) over the pairs u# -> v# of the component."""
    graph = defined_dependency(system)
    labels = set()
    for pair in component:
        report = usable_rules_of_term(pair.rhs, system, graph)
        if not report.pattern_ok:
            logger.info("[usable] pair %d: pattern condition fails at %s", pair.id, render(report.witness))
            return UsableReport(system.labels, False, report.witness, component_id)
        labels |= set(report.usable)
    usable = tuple(label for label in system.labels if label in labels)
    logger.debug("[usable] %d of %d rules usable", len(usable), len(system))
    return UsableReport(usable, True, None, component_id)


@dataclass(frozen=True)
class CeRules:
    """Per basic type a: bot_a : a, c_a : a -> a -> a, and c_a(x1, x2) -> xi for i = 1, 2."""

    choice: dict  # BaseType -> c symbol
    bottom: dict  # BaseType -> bot symbol
    rules: tuple

    def symbols(self):
        return list(self.choice.values()) + list(self.bottom.values())


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def ce_rules(base_types, signature=()):
    taken = {symbol.name for symbol in signature}
    choice, bottom, rules = {}, {}, []
    for ty in sorted(base_types, key=lambda b: b.name):
        c = function_symbol(_fresh_name(f"c_{ty.name}", taken), arrow(ty, ty, ty))
        bot = function_symbol(_fresh_name(f"bot_{ty.name}", taken), ty)
        choice[ty], bottom[ty] = c, bot
        x1, x2 = free_variable("X1", ty), free_variable("X2", ty)
        lhs = app(c, const(x1), const(x2))
        rules.append(Rule(lhs, const(x1), f"ce_{ty.name}_1"))
        rules.append(Rule(lhs, const(x2), f"ce_{ty.name}_2"))
    return CeRules(choice, bottom, tuple(rules))
