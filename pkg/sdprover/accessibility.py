#!/usr/bin/env python3
"""
Stable subterms, accessible subterms and the plain function-passing check.

Accessible terms are computed by saturating a worklist from an argument l' of
a left-hand side.  Every closure rule is applied as a destructor (strip a
binder, drop a trailing eta-expanded bound variable, take an argument of an
accessible application), so each step produces a smaller preterm and the
saturation terminates.  Members are kept as preterms because dropping a
trailing argument can leave a term that is not eta-long.
"""

import logging
from dataclasses import dataclass, field

from .terms import (
    PAtom,
    PApp,
    PLam,
    embed,
    is_base,
    normalize,
    papply,
    preterm_free_vars,
    preterm_type,
    render,
    sorted_terms,
    spine,
    strip_binder,
    subterms,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Stable subterms
# ---------------------------------------------------------------------------

def stable_subterms(term):
    """SSub(t): subterms reachable without descending below a free variable of t."""
    found = set()
    _collect_stable(term, term.free_vars, found)
    return frozenset(found)


def _collect_stable(term, frozen, found):
    found.add(term)
    if term.binders:
        _collect_stable(strip_binder(term), frozen, found)
    elif term.head not in frozen:
        for arg in term.args:
            _collect_stable(arg, frozen, found)


# ---------------------------------------------------------------------------
# Accessible subterms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AccessibleSet:
    origin: object
    members: frozenset = field(default=frozenset())
    legacy: bool = False

    def __contains__(self, preterm):
        return preterm in self.members

    def __len__(self):
        return len(self.members)

    def closed_members(self):
        """Members whose free variables are among those of the origin."""
        allowed = self.origin.free_vars
        return [p for p in self.members if preterm_free_vars(p) <= allowed]


def preterm_eta_variable(preterm):
    """Return x if the preterm is an eta-expansion of the variable x (including x itself)."""
    binders = []
    while isinstance(preterm, PLam):
        binders.append(preterm.variable)
        preterm = preterm.body
    head, args = spine(preterm)
    if not isinstance(head, PAtom) or not head.symbol.is_variable:
        return None
    if len(args) != len(binders) or head.symbol in binders:
        return None
    for binder, arg in zip(binders, args):
        if preterm_eta_variable(arg) != binder:
            return None
    return head.symbol


def _destruct(preterm, origin_vars):
    """Preterms derivable from one accessible preterm by a single closure step."""
    if isinstance(preterm, PLam):
        # abstraction: drop a binder not free in the origin
        if preterm.variable not in origin_vars:
            yield preterm.body
        return
    if isinstance(preterm, PApp):
        variable = preterm_eta_variable(preterm.argument)
        if (variable is not None and variable not in origin_vars
                and variable not in preterm_free_vars(preterm.function)):
            yield preterm.function
    head, args = spine(preterm)
    if not isinstance(head, PAtom):
        return
    symbol = head.symbol
    if symbol.is_function:
        for arg in args:
            body = arg
            binders = set()
            while isinstance(body, PLam):
                binders.add(body.variable)
                body = body.body
            if is_base(preterm_type(body)) and binders.isdisjoint(preterm_free_vars(body)):
                yield body
    elif symbol not in origin_vars:
        if all(symbol not in preterm_free_vars(arg) for arg in args):
            yield from args


def accessible_set(origin, legacy=False):
    """Acc(l') for an argument l' of a left-hand side.

    With legacy=True only the argument itself and its basic-typed stable
    subterms are accessible.
    """
    origin_vars = origin.free_vars
    members = {embed(origin)}
    for sub in stable_subterms(origin):
        if is_base(sub.type) and sub.free_vars <= origin_vars:
            members.add(embed(sub))
    if not legacy:
        worklist = list(members)
        while worklist:
            preterm = worklist.pop()
            for derived in _destruct(preterm, origin_vars):
                if derived not in members:
                    members.add(derived)
                    worklist.append(derived)
    return AccessibleSet(origin, frozenset(members), legacy)


def safe_subterms(lhs, legacy=False):
    """safe(l): normal forms of the accessible terms that are closed over FV(l')."""
    found = set()
    for arg in lhs.args:
        for preterm in accessible_set(arg, legacy).closed_members():
            found.add(normalize(preterm))
    return frozenset(found)


# ---------------------------------------------------------------------------
# Plain function-passing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PfpViolation:
    label: str
    subterm: object

    def __str__(self):
        return f"rule {self.label}: no prefix of {render(self.subterm)} is a safe subterm of the left-hand side"


@dataclass(frozen=True)
class PfpReport:
    legacy: bool
    violations: tuple = ()
    safe_sets: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return "PFP"
        return "not PFP\n" + "\n".join(f"  {v}" for v in self.violations)


def prefix_applications(term):
    """Z(r1..rk) normalized, for k = 0..n, given term = Z(r1..rn)."""
    args = [embed(arg) for arg in term.args]
    return [normalize(papply(term.head, *args[:k])) for k in range(len(args) + 1)]


def applied_free_variables(rhs):
    """Subterms Z(r1..rn) of rhs whose head Z is free in rhs."""
    free = rhs.free_vars
    return sorted_terms(s for s in subterms(rhs) if not s.binders and s.head in free)


def is_pfp(system, legacy=False):
    violations = []
    safe_sets = {}
    for rule in system.rules:
        safe = safe_subterms(rule.lhs, legacy)
        safe_sets[rule.label] = tuple(sorted_terms(safe))
        for occurrence in applied_free_variables(rule.rhs):
            if not any(prefix in safe for prefix in prefix_applications(occurrence)):
                violations.append(PfpViolation(rule.label, occurrence))
                logger.info("[pfp] rule %s: %s has no safe prefix", rule.label, render(occurrence))
    report = PfpReport(legacy, tuple(violations), safe_sets)
    logger.debug("[pfp] %s (%d rules, legacy=%s)", "ok" if report.ok else "failed", len(system), legacy)
    return report
