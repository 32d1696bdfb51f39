#!/usr/bin/env python3
"""
Argument filterings and the weak reduction order they induce from a path order.

A filtering maps a function symbol of type a1 -> ... -> an -> b either to one
index i with ai = b (the symbol collapses to that argument) or to an increasing
list of kept indices (the symbol is retyped to the kept argument types).
Symbols are looked up by name and mark, so a retyped symbol is still found.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from enum import Enum

from .errors import FilteringError
from .path_order import path_greater
from .terms import Term, arrow, decompose, lam, subterms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Collapse:
    index: int

    def __str__(self):
        return str(self.index)


@dataclass(frozen=True)
class Keep:
    indices: tuple

    def __str__(self):
        return "[" + ",".join(str(i) for i in self.indices) + "]"


class Comparison(str, Enum):
    STRICT = "strict"
    WEAK_EQUAL = "weak-equal"
    INCOMPARABLE = "incomparable"


def check_entry(symbol, entry):
    domains, base = decompose(symbol.type)
    if isinstance(entry, Collapse):
        if not 1 <= entry.index <= len(domains):
            raise FilteringError(f"{symbol.label} has no argument {entry.index}")
        if domains[entry.index - 1] != base:
            raise FilteringError(
                f"{symbol.label} cannot collapse to argument {entry.index} of type "
                f"{domains[entry.index - 1]}, expected {base}")
    elif isinstance(entry, Keep):
        indices = tuple(entry.indices)
        if any(not 1 <= i <= len(domains) for i in indices):
            raise FilteringError(f"{symbol.label} keeps a position outside 1..{len(domains)}")
        if list(indices) != sorted(set(indices)):
            raise FilteringError(f"{symbol.label} must keep strictly increasing positions")
    else:
        raise FilteringError(f"unknown filtering entry {entry!r}")


@dataclass(frozen=True)
class ArgumentFiltering:
    """Entries as sorted (symbol, Collapse | Keep) items; absent symbols keep every argument."""

    entries: tuple = ()

    @classmethod
    def of(cls, mapping):
        items = []
        for symbol, entry in mapping.items():
            if isinstance(entry, int):
                entry = Collapse(entry)
            elif isinstance(entry, (list, tuple)):
                entry = Keep(tuple(entry))
            check_entry(symbol, entry)
            if entry == Keep(tuple(range(1, len(decompose(symbol.type)[0]) + 1))):
                continue
            items.append((symbol, entry))
        items.sort(key=lambda item: item[0].ident)
        return cls(tuple(items))

    def entry(self, symbol):
        for known, entry in self.entries:
            if known.ident == symbol.ident:
                return entry
        return None

    def is_identity(self):
        return not self.entries

    def with_entries(self, mapping):
        merged = {symbol: entry for symbol, entry in self.entries}
        merged.update(mapping)
        return ArgumentFiltering.of(merged)

    def lines(self):
        """Certificate form: one "f = [i1,...,ik]" or "f = i" per filtered symbol."""
        return [f"{symbol.label} = {entry}" for symbol, entry in self.entries]

    def __str__(self):
        return "; ".join(self.lines()) or "identity"


def filtered_type(filtering, symbol):
    """type_pi(a); variables and collapsed symbols keep their type."""
    if not symbol.is_function:
        return symbol.type
    entry = filtering.entry(symbol)
    if not isinstance(entry, Keep):
        return symbol.type
    domains, base = decompose(symbol.type)
    return arrow(*(domains[i - 1] for i in entry.indices), base)


def filtered_symbol(filtering, symbol):
    ty = filtered_type(filtering, symbol)
    return symbol if ty == symbol.type else replace(symbol, type=ty)


def apply_filtering(filtering, term):
    """pi(t), binders of a collapsed argument fused into the surrounding binder list."""
    head = term.head
    entry = filtering.entry(head) if head.is_function else None
    if isinstance(entry, Collapse):
        return lam(term.binders, apply_filtering(filtering, term.args[entry.index - 1]))
    if isinstance(entry, Keep):
        args = tuple(apply_filtering(filtering, term.args[i - 1]) for i in entry.indices)
        return Term(term.binders, filtered_symbol(filtering, head), args)
    return Term(term.binders, head, tuple(apply_filtering(filtering, arg) for arg in term.args))


def filtered_substitution(filtering, theta):
    """theta_pi(x) = pi(theta(x))"""
    return {variable: apply_filtering(filtering, value) for variable, value in theta.items()}


def compare_filtered(filtering, order, s, t):
    left, right = apply_filtering(filtering, s), apply_filtering(filtering, t)
    if path_greater(order, left, right):
        return Comparison.STRICT
    if left == right:
        return Comparison.WEAK_EQUAL
    return Comparison.INCOMPARABLE


def loses_variables(filtering, s, t):
    """Whether pi(t) keeps a variable that pi(s) dropped; then pi(s) >= pi(t) is impossible."""
    return not apply_filtering(filtering, t).free_vars <= apply_filtering(filtering, s).free_vars


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def deviations(symbol):
    """Single-symbol departures from keeping everything: drop one index, or each legal collapse."""
    domains, base = decompose(symbol.type)
    n = len(domains)
    found = [Keep(tuple(j for j in range(1, n + 1) if j != i)) for i in range(1, n + 1)]
    found += [Collapse(i) for i in range(1, n + 1) if domains[i - 1] == base]
    return found


def _erasure_scores(constraints):
    """(symbol ident, index) -> how often that argument of a right side is foreign to its left side."""
    scores = {}
    for s, t in constraints:
        left = subterms(s)
        for sub in subterms(t):
            if not sub.head.is_function:
                continue
            for i, arg in enumerate(sub.args, start=1):
                if arg not in left:
                    key = (sub.head.ident, i)
                    scores[key] = scores.get(key, 0) + 1
    return scores


def _priority(symbol, entry, scores):
    n = len(decompose(symbol.type)[0])
    kept = {entry.index} if isinstance(entry, Collapse) else set(entry.indices)
    return -sum(scores.get((symbol.ident, i), 0) for i in range(1, n + 1) if i not in kept)


def enumerate_filterings(symbols, budget, constraints=()):
    """Identity, then single deviations, then pairs and triples of them, at most budget filterings.

    Within a tier, deviations that erase arguments occurring in right sides but
    not in the corresponding left sides come first.
    """
    symbols = sorted(set(symbols), key=lambda s: s.ident)
    scores = _erasure_scores(constraints)
    moves = []
    for order, symbol in enumerate(symbols):
        for position, entry in enumerate(deviations(symbol)):
            moves.append((_priority(symbol, entry, scores), order, position, symbol, entry))
    moves.sort(key=lambda m: m[:3])
    produced = 0
    if budget <= 0:
        return
    yield ArgumentFiltering()
    produced += 1
    for size in range(1, min(3, len(symbols)) + 1):
        for combo in itertools.combinations(moves, size):
            if len({m[3].ident for m in combo}) < size:
                continue
            if produced >= budget:
                return
            produced += 1
            yield ArgumentFiltering.of({m[3]: m[4] for m in combo})

