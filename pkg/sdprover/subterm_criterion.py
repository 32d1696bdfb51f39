#!/usr/bin/env python3
"""
The subterm criterion: discharge a recursion component by projecting every
marked symbol to one argument position, without any order search.
"""

import itertools
import logging
from dataclasses import dataclass

from .errors import PositionError
from .terms import format_position, is_strict_subterm, is_subterm, positions, subterm_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Projection:
    """Marked symbol -> non-empty position, stored as sorted (symbol, position) items."""

    items: tuple

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted(mapping.items(), key=lambda kv: (kv[0].name, kv[1]))))

    def get(self, symbol):
        for key, position in self.items:
            if key == symbol:
                return position
        return None

    def as_dict(self):
        return dict(self.items)

    def __str__(self):
        return ", ".join(f"pi({s.label}) = {format_position(p)}" for s, p in self.items)


def _prefixes(position):
    """Strict prefixes of a position, shortest first (epsilon included)."""
    return [position[:i] for i in range(len(position))]


def _projected(term, position):
    try:
        return subterm_at(term, position)
    except PositionError:
        return None


def _lhs_path_ok(u, position):
    """No strict prefix of position in u is headed by a free variable of u."""
    free = u.free_vars
    return all(subterm_at(u, p).head not in free for p in _prefixes(position))


def _rhs_path_ok(v, position, defined):
    free = v.free_vars
    for q in _prefixes(position):
        if not q:
            continue
        head = subterm_at(v, q).head
        if head in free or head in defined:
            return False
    return True


def criterion_violation(component, projection, defined):
    """Why the projection fails the subterm criterion on the component, or None."""
    strict = False
    for pair in component:
        p = projection.get(pair.lhs_root)
        q = projection.get(pair.rhs_root)
        if p is None or q is None:
            missing = pair.lhs_root if p is None else pair.rhs_root
            return f"no projection for {missing.label}"
        if not p or not q:
            return "projections must be non-empty positions"
        left, right = _projected(pair.lhs, p), _projected(pair.rhs, q)
        if left is None or right is None:
            return f"pair {pair.id}: position {format_position(p if left is None else q)} does not exist"
        if not _lhs_path_ok(pair.lhs, p):
            return f"pair {pair.id}: free variable above position {format_position(p)} of the left side"
        if not _rhs_path_ok(pair.rhs, q, defined):
            return f"pair {pair.id}: free variable or defined symbol above position {format_position(q)} of the right side"
        if is_strict_subterm(right, left):
            strict = True
        elif right != left:
            return f"pair {pair.id}: projected right side is not a subterm of the projected left side"
    if not strict:
        return "no pair decreases strictly"
    return None


def check_subterm_criterion(component, projection, defined):
    reason = criterion_violation(component, projection, defined)
    if reason is not None:
        logger.debug("[subterm] rejected %s: %s", projection, reason)
    return reason is None


def strictly_decreasing(component, projection):
    """Ids of the pairs whose projected right side is a strict subterm of the projected left side."""
    strict = []
    for pair in component:
        p, q = projection.get(pair.lhs_root), projection.get(pair.rhs_root)
        if p is None or q is None:
            continue
        left, right = _projected(pair.lhs, p), _projected(pair.rhs, q)
        if left is not None and right is not None and is_strict_subterm(right, left):
            strict.append(pair.id)
    return strict


def _candidate_positions(symbol, component, max_len, defined):
    """Positions valid in every occurrence of symbol, satisfying the path conditions."""
    occurrences = []
    for pair in component:
        if pair.lhs_root == symbol:
            occurrences.append((pair.lhs, True))
        if pair.rhs_root == symbol:
            occurrences.append((pair.rhs, False))
    common = None
    for term, _ in occurrences:
        found = {p for p in positions(term) if 0 < len(p) <= max_len}
        common = found if common is None else common & found
    result = []
    for p in sorted(common or (), key=lambda p: (len(p), p)):
        if all(_lhs_path_ok(t, p) if is_lhs else _rhs_path_ok(t, p, defined)
               for t, is_lhs in occurrences):
            result.append(p)
    return result


def find_projection(component, max_len, defined):
    """Search projections of length <= max_len; the first passing one, or None."""
    symbols = sorted({p.lhs_root for p in component} | {p.rhs_root for p in component},
                     key=lambda s: s.name)
    choices = [_candidate_positions(s, component, max_len, defined) for s in symbols]
    if any(not c for c in choices):
        logger.debug("[subterm] some symbol has no admissible position")
        return None
    index = {s: i for i, s in enumerate(symbols)}

    def weakly_ok(assigned):
        for pair in component:
            i, j = index[pair.lhs_root], index[pair.rhs_root]
            if i < len(assigned) and j < len(assigned):
                left = subterm_at(pair.lhs, assigned[i])
                right = subterm_at(pair.rhs, assigned[j])
                if not is_subterm(right, left):
                    return False
        return True

    def search(assigned):
        if not weakly_ok(assigned):
            return None
        if len(assigned) == len(symbols):
            projection = Projection.of(dict(zip(symbols, assigned)))
            return projection if check_subterm_criterion(component, projection, defined) else None
        for position in choices[len(assigned)]:
            found = search(assigned + [position])
            if found is not None:
                return found
        return None

    projection = search([])
    if projection is not None:
        logger.info("[subterm] found %s", projection)
    return projection


def projection_space(component, max_len, defined):
    """Every projection the search would consider, in search order."""
    symbols = sorted({p.lhs_root for p in component} | {p.rhs_root for p in component},
                     key=lambda s: s.name)
    choices = [_candidate_positions(s, component, max_len, defined) for s in symbols]
    for combo in itertools.product(*choices):
        yield Projection.of(dict(zip(symbols, combo)))
