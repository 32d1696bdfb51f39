#!/usr/bin/env python3
"""
Independent checking of a certificate against the rewrite system it claims
to prove.  Nothing is searched: pairs, graph and usable rules are recomputed,
and every stored witness is run through its checker.
"""

import logging
from collections import deque

from pydantic import ValidationError

from .accessibility import is_pfp
from .dependency_pairs import dependency_graph, marked_symbol, recursion_components, static_dependency_pairs
from .errors import ProverError
from .filtering import ArgumentFiltering
from .path_order import BaseOrder, Status
from .prover import ProverOptions, oriented_pairs, weak_rules
from .subterm_criterion import Projection, check_subterm_criterion, strictly_decreasing
from .terms import render
from .usable_rules import ce_rules

logger = logging.getLogger(__name__)


class ReplayFailure(ProverError):
    pass


def ident_of(label):
    return (label[:-1], True) if label.endswith("#") else (label, False)


def _symbol_table(system):
    table = {symbol.label: symbol for symbol in system.signature}
    table.update({marked_symbol(symbol).label: marked_symbol(symbol) for symbol in system.defined})
    table.update({symbol.label: symbol for symbol in ce_rules(system.base_types, system.signature).symbols()})
    return table


def _filtering(entries, table):
    mapping = {}
    for label, text in entries.items():
        if text.startswith("["):
            mapping[table[label]] = [int(i) for i in text.strip("[]").split(",") if i]
        else:
            mapping[table[label]] = int(text)
    return ArgumentFiltering.of(mapping)


def _order(proof):
    pairs = [(ident_of(f), ident_of(g)) for f, g in proof.precedence]
    status = {ident_of(label): Status(value) for label, value in proof.status.items()}
    return BaseOrder.of(pairs, status)


def _check(condition, message):
    if not condition:
        raise ReplayFailure(message)


def _replay(system, cert):
    _check(cert.verdict == "terminating", f"verdict is {cert.verdict}")
    options = ProverOptions(**cert.options)
    _check(is_pfp(system, options.legacy_safe).ok, "the system is not plain function-passing")

    pairs = static_dependency_pairs(system, options.legacy_safe)
    recorded = [(p.id, p.lhs, p.rhs, p.origin) for p in cert.pairs]
    _check(recorded == [(p.id, render(p.lhs), render(p.rhs), p.origin) for p in pairs],
           "dependency pairs differ")
    graph = dependency_graph(pairs, system, options.refine_graph)
    table = _symbol_table(system)

    worklist = deque(enumerate(recursion_components(graph), start=1))
    next_id = len(worklist) + 1
    proofs = deque(cert.proofs)
    while worklist:
        component_id, component = worklist.popleft()
        _check(proofs, f"no proof for component {component_id}")
        proof = proofs.popleft()
        ids = [pair.id for pair in component]
        _check(proof.id == component_id and proof.pairs == ids,
               f"component {component_id} recorded as {proof.id} {proof.pairs}")
        if proof.technique == "subterm":
            projection = Projection.of({table[label]: tuple(position)
                                        for label, position in proof.projection.items()})
            _check(check_subterm_criterion(component, projection, system.defined),
                   f"component {component_id}: projection fails")
            strict = strictly_decreasing(component, projection)
        else:
            _check(proof.technique == "redpair", f"component {component_id} is open")
            rules, usable, _ = weak_rules(component, system, options)
            _check(proof.usable == usable, f"component {component_id}: usable rules differ")
            strict = oriented_pairs(component, rules, _filtering(proof.filtering, table), _order(proof))
        _check(strict and strict == proof.strict, f"component {component_id}: strict pairs differ")
        remaining = [i for i in ids if i not in strict]
        spawned = []
        for sub in recursion_components(graph.restrict(remaining)):
            spawned.append(next_id)
            worklist.append((next_id, sub))
            next_id += 1
        _check(spawned == proof.spawned, f"component {component_id}: remaining components differ")
    _check(not proofs, "proofs left over for unknown components")


def replay_certificate(system, cert):
    """Whether every witness of cert checks against system and no component is left."""
    try:
        _replay(system, cert)
    except (ProverError, KeyError, ValueError, ValidationError) as exc:
        logger.info("[replay] rejected: %s", exc)
        return False
    logger.debug("[replay] %d component proofs check", len(cert.proofs))
    return True
