#!/usr/bin/env python3
"""
A precedence-based recursive path order on (filtered) terms.

The order is conservative: a comparison in which either side is
headed by an applied free variable, or in which the heads are distinct bound
variables, is never strict.  Terms of basic type are compared
whatever their basic types are; terms of arrow type only with terms of the
same type.

The recursion is written once over a small boolean algebra.  With a concrete
precedence it evaluates to Python booleans; with a symbolic precedence (z3
integer levels per symbol) it builds the constraint that find_precedence
hands to the solver.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import z3

from .errors import HrsTypeError, ProofTimeout
from .terms import eta_expand, is_base, substitute

logger = logging.getLogger(__name__)


class Status(str, Enum):
    LEX = "lex"
    MUL = "mul"


def ident_label(ident):
    name, marked = ident
    return f"{name}#" if marked else name


@dataclass(frozen=True)
class Precedence:
    """A strict partial order on symbol idents, stored transitively closed."""

    pairs: frozenset = frozenset()

    @classmethod
    def of(cls, pairs):
        graph = nx.DiGraph()
        graph.add_edges_from(pairs)
        if not nx.is_directed_acyclic_graph(graph):
            raise ValueError("precedence must be acyclic")
        closure = nx.transitive_closure_dag(graph)
        return cls(frozenset(closure.edges()))

    def greater(self, f, g):
        return (f, g) in self.pairs

    def generators(self):
        """The transitive reduction: the pairs written out in certificates."""
        graph = nx.DiGraph()
        graph.add_edges_from(self.pairs)
        return sorted(nx.transitive_reduction(graph).edges()) if self.pairs else []

    def __str__(self):
        return ", ".join(f"{ident_label(f)} > {ident_label(g)}" for f, g in self.generators())


@dataclass(frozen=True)
class BaseOrder:
    precedence: Precedence = field(default_factory=Precedence)
    status: tuple = ()  # sorted (ident, Status) items; absent symbols are lexicographic

    def status_of(self, ident):
        for key, value in self.status:
            if key == ident:
                return value
        return Status.LEX

    @classmethod
    def of(cls, precedence_pairs=(), status=None):
        items = tuple(sorted((status or {}).items()))
        return cls(Precedence.of(precedence_pairs), items)


# ---------------------------------------------------------------------------
# Boolean algebra shared by the concrete and the symbolic comparison
# ---------------------------------------------------------------------------

def _conj(items):
    rest = []
    for item in items:
        if item is False:
            return False
        if item is not True:
            rest.append(item)
    if not rest:
        return True
    return rest[0] if len(rest) == 1 else z3.And(*rest)


def _disj(items):
    rest = []
    for item in items:
        if item is True:
            return True
        if item is not False:
            rest.append(item)
    if not rest:
        return False
    return rest[0] if len(rest) == 1 else z3.Or(*rest)


class _PathComparison:
    def __init__(self, precedence, status_of):
        self.precedence = precedence
        self.status_of = status_of
        self._cache = {}

    def ge(self, s, t):
        if s == t:
            return True
        return self.gt(s, t)

    def gt(self, s, t):
        key = (s.key, t.key)
        if key not in self._cache:
            self._cache[key] = self._gt(s, t)
        return self._cache[key]

    def _gt(self, s, t):
        if not comparable_types(s.type, t.type):
            return False
        if s.binders or t.binders:
            if len(s.binders) != len(t.binders):
                return False
            if any(a.type != b.type for a, b in zip(s.binders, t.binders)):
                return False
            rename = {b: eta_expand(a) for a, b in zip(s.binders, t.binders)}
            return self.gt(s.body, substitute(t.body, rename).body)
        if not s.head.is_function:
            return False
        subterm = _disj(self.ge(arg, t) for arg in s.args)
        if subterm is True or not t.head.is_function:
            return subterm
        f, g = s.head.ident, t.head.ident
        if f == g:
            if self.status_of(f) is Status.MUL:
                extension = self._multiset(s.args, t.args)
            else:
                extension = self._lex(s.args, t.args)
            head_case = _conj([extension, self._dominates(s, t.args)])
        else:
            head_case = _conj([self.precedence(f, g), self._dominates(s, t.args)])
        return _disj([subterm, head_case])

    def _dominates(self, s, targets):
        """s is bigger than every target, or some argument of s covers it."""
        return _conj(
            _disj([self.gt(s, target)] + [self.ge(arg, target) for arg in s.args])
            for target in targets)

    def _lex(self, left, right):
        for a, b in zip(left, right):
            if a != b:
                return self.gt(a, b)
        return False

    def _multiset(self, left, right):
        left, right = list(left), list(right)
        for item in list(right):
            if item in left:
                left.remove(item)
                right.remove(item)
        if not left:
            return False
        return _conj(_disj(self.gt(a, b) for a in left) for b in right)


def comparable_types(a, b):
    """Basic types are all compared with each other; arrow types only with themselves."""
    return a == b or (is_base(a) and is_base(b))


def _concrete(order):
    return _PathComparison(order.precedence.greater, order.status_of)


def _check_types(s, t):
    if not comparable_types(s.type, t.type):
        raise HrsTypeError(f"cannot compare terms of types {s.type} and {t.type}")


def path_greater(order, s, t):
    """s > t in the path order induced by the precedence and status of order."""
    _check_types(s, t)
    return bool(_concrete(order).gt(s, t))


def path_ge(order, s, t):
    _check_types(s, t)
    return bool(_concrete(order).ge(s, t))


def orients(order, strict, weak, some_strict=()):
    """strict pairs by >, weak pairs by >=, and one of some_strict by > when it is given."""
    comparison = _concrete(order)
    if not (all(comparison.gt(s, t) is True for s, t in strict)
            and all(comparison.ge(s, t) is True for s, t in weak)):
        return False
    some_strict = list(some_strict)
    return not some_strict or any(comparison.gt(s, t) is True for s, t in some_strict)


# ---------------------------------------------------------------------------
# Precedence search
# ---------------------------------------------------------------------------

def _function_idents(term, found):
    if term.head.is_function:
        found.setdefault(term.head.ident, len(term.args))
    for arg in term.args:
        _function_idents(arg, found)


def _equal_head_symbols(constraints):
    """Symbols of arity >= 2 heading subterms on both sides of some constraint."""
    found = set()
    for s, t in constraints:
        left, right = {}, {}
        _function_idents(s, left)
        _function_idents(t, right)
        found |= {f for f in left.keys() & right.keys() if left[f] >= 2}
    return sorted(found)


def status_assignments(constraints, budget):
    """All-lexicographic first, then multiset flips by increasing number of symbols."""
    flippable = _equal_head_symbols(constraints)
    produced = 0
    for size in range(len(flippable) + 1):
        for chosen in itertools.combinations(flippable, size):
            if produced >= budget:
                return
            produced += 1
            yield {f: Status.MUL for f in chosen}


def _minimize(precedence_pairs, status, strict, weak, some_strict=()):
    """Greedily drop precedence pairs that the constraints do not need."""
    kept = list(precedence_pairs)
    for pair in sorted(precedence_pairs):
        trial = [p for p in kept if p != pair]
        if orients(BaseOrder.of(trial, status), strict, weak, some_strict):
            kept = trial
    return BaseOrder.of(kept, status)


def find_precedence(strict, weak, status_budget=64, deadline=None, timeout_ms=10000, some_strict=()):
    """A BaseOrder orienting strict pairs with > and weak pairs with >=, or None.

    When some_strict is given, at least one of those pairs has to be oriented
    strictly as well; the caller lists them among the weak pairs too.
    """
    strict, weak, some_strict = list(strict), list(weak), list(some_strict)
    constraints = strict + weak + some_strict
    if not strict and not some_strict and all(s == t for s, t in weak):
        return BaseOrder()
    symbols = {}
    for s, t in constraints:
        _function_idents(s, symbols)
        _function_idents(t, symbols)
    idents = sorted(symbols)
    levels = {f: z3.Int(f"prec_{ident_label(f)}") for f in idents}
    for status in status_assignments(constraints, status_budget):
        if deadline is not None and time.monotonic() > deadline:
            raise ProofTimeout("precedence search passed the deadline")
        order_status = lambda f, status=status: status.get(f, Status.LEX)
        symbolic = _PathComparison(lambda f, g: levels[f] > levels[g], order_status)
        goals = [symbolic.gt(s, t) for s, t in strict] + [symbolic.ge(s, t) for s, t in weak]
        if some_strict:
            goals.append(_disj([symbolic.gt(s, t) for s, t in some_strict]))
        if any(goal is False for goal in goals):
            continue
        solver = z3.Solver()
        solver.set("timeout", timeout_ms)
        for goal in goals:
            if goal is not True:
                solver.add(goal)
        if solver.check() != z3.sat:
            continue
        model = solver.model()
        value = {f: model.eval(levels[f], model_completion=True).as_long() for f in idents}
        pairs = [(f, g) for f in idents for g in idents if value[f] > value[g]]
        candidate = BaseOrder.of(pairs, status)
        if not orients(candidate, strict, weak, some_strict):
            logger.warning("[order] solver model does not orient the constraints; skipped")
            continue
        order = _minimize(pairs, status, strict, weak, some_strict)
        logger.debug("[order] precedence %s", order.precedence)
        return order
    return None
