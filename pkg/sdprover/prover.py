#!/usr/bin/env python3
"""
The proof search: plain function-passing check, static dependency pairs, the
dependency graph, and then one recursion component at a time, first the
subterm criterion and then argument filterings with the path order.

When a reduction pair orients only some pairs of a component strictly, the
others are split into the recursion components of what is left and proved in
turn, so every strongly connected subgraph ends up covered.
"""

import logging
import os
import time
from collections import deque
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from .accessibility import is_pfp
from .certificate import (
    ComponentProof,
    GraphRecord,
    PairRecord,
    PfpRecord,
    ProofCertificate,
    UsableRecord,
)
from .dependency_pairs import dependency_graph, recursion_components, static_dependency_pairs
from .errors import BudgetExceeded, ProofTimeout, UnsupportedRuleError
from .filtering import apply_filtering, enumerate_filterings, loses_variables
from .path_order import comparable_types, find_precedence, ident_label, path_ge, path_greater
from .rewriting import check_patterns
from .subterm_criterion import find_projection, strictly_decreasing
from .terms import function_symbols_of, render
from .usable_rules import ce_rules, usable_rules

logger = logging.getLogger(__name__)

# Environment variables read by ProverOptions.from_env
ENV_OVERRIDES = {
    "timeout": "SDPROVER_TIMEOUT",
    "max_proj_len": "SDPROVER_MAX_PROJ_LEN",
    "filter_budget": "SDPROVER_FILTER_BUDGET",
}

SOLVER_TIMEOUT_MS = 10000


class ProverOptions(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    legacy_safe: bool = False
    use_usable_rules: bool = True
    technique: Literal["subterm", "redpair", "all"] = "all"
    timeout: float = Field(60.0, gt=0)
    max_proj_len: int = Field(3, ge=1)
    filter_budget: int = Field(10000, ge=0)
    status_budget: int = Field(64, ge=1)
    refine_graph: bool = False

    @classmethod
    def from_env(cls, environ=None, **overrides):
        """Defaults, then SDPROVER_* variables, then explicit overrides that are not None."""
        environ = os.environ if environ is None else environ
        values = {name: environ[var] for name, var in ENV_OVERRIDES.items() if environ.get(var)}
        values.update({name: value for name, value in overrides.items() if value is not None})
        return cls(**values)


# ---------------------------------------------------------------------------
# Reduction pairs
# ---------------------------------------------------------------------------

def weak_rules(component, system, options):
    """The rules a reduction pair has to orient weakly for this component.

    Returns the rules, their certificate record and the projection symbols
    that were added for them.
    """
    if not options.use_usable_rules:
        return system.rules, UsableRecord(rules=list(system.labels), reason="all-rules"), []
    report = usable_rules(component, system)
    ce = ce_rules(system.base_types, system.signature)
    rules = system.restrict(report.usable).rules + ce.rules
    return rules, UsableRecord(rules=[r.label for r in rules], reason=report.reason), ce.symbols()


def oriented_pairs(component, rules, filtering, order):
    """Ids of the pairs oriented strictly, or None when a rule or pair is not even weakly oriented."""
    for rule in rules:
        if not path_ge(order, apply_filtering(filtering, rule.lhs), apply_filtering(filtering, rule.rhs)):
            return None
    strict = []
    for pair in component:
        left, right = apply_filtering(filtering, pair.lhs), apply_filtering(filtering, pair.rhs)
        if not comparable_types(left.type, right.type):
            return None
        if path_greater(order, left, right):
            strict.append(pair.id)
        elif not path_ge(order, left, right):
            return None
    return strict


def find_reduction_pair(component, system, options, deadline=None):
    """(filtering, order, usable record, strict pair ids) for the first filtering that works, or None."""
    rules, usable, extra_symbols = weak_rules(component, system, options)
    symbols = set()
    for pair in component:
        symbols |= function_symbols_of(pair.lhs) | function_symbols_of(pair.rhs)
    for rule in rules:
        symbols |= function_symbols_of(rule.lhs) | function_symbols_of(rule.rhs)
    symbols -= set(extra_symbols)
    constraints = [(p.lhs, p.rhs) for p in component] + [(r.lhs, r.rhs) for r in rules]
    tried = 0
    for filtering in enumerate_filterings(symbols, options.filter_budget, constraints):
        if deadline is not None and time.monotonic() > deadline:
            raise ProofTimeout(f"deadline passed after {tried} filterings")
        tried += 1
        if any(loses_variables(filtering, s, t) for s, t in constraints):
            continue
        weak = [(apply_filtering(filtering, r.lhs), apply_filtering(filtering, r.rhs)) for r in rules]
        pairs = [(apply_filtering(filtering, p.lhs), apply_filtering(filtering, p.rhs)) for p in component]
        if any(not comparable_types(s.type, t.type) for s, t in pairs):
            continue
        timeout_ms = SOLVER_TIMEOUT_MS
        if deadline is not None:
            timeout_ms = max(1, min(timeout_ms, int((deadline - time.monotonic()) * 1000)))
        order = find_precedence([], weak + pairs, options.status_budget, deadline, timeout_ms,
                                some_strict=pairs)
        if order is None:
            continue
        strict = oriented_pairs(component, rules, filtering, order)
        if not strict:
            logger.warning("[redpair] order for %s does not orient the component; skipped", filtering)
            continue
        logger.info("[redpair] filtering %s, precedence %s after %d filterings",
                    filtering, str(order.precedence) or "empty", tried)
        return filtering, order, usable, strict
    logger.info("[redpair] no reduction pair among %d filterings", tried)
    return None


# ---------------------------------------------------------------------------
# Proof search
# ---------------------------------------------------------------------------

def _pair_ids(component):
    return [pair.id for pair in component]


def prove_component(component_id, component, system, options, deadline=None):
    ids = _pair_ids(component)
    if options.technique in ("subterm", "all"):
        projection = find_projection(component, options.max_proj_len, system.defined)
        if projection is not None:
            return ComponentProof(id=component_id, pairs=ids, technique="subterm",
                                  projection={s.label: list(p) for s, p in projection.items},
                                  strict=strictly_decreasing(component, projection))
    if options.technique in ("redpair", "all"):
        found = find_reduction_pair(component, system, options, deadline)
        if found is not None:
            filtering, order, usable, strict = found
            return ComponentProof(
                id=component_id, pairs=ids, technique="redpair",
                filtering={symbol.label: str(entry) for symbol, entry in filtering.entries},
                precedence=[(ident_label(f), ident_label(g)) for f, g in order.precedence.generators()],
                status={ident_label(f): status.value for f, status in order.status},
                usable=usable, strict=strict)
    reasons = {
        "subterm": f"no projection of length <= {options.max_proj_len}",
        "redpair": f"no reduction pair within {options.filter_budget} filterings",
        "all": "neither the subterm criterion nor a reduction pair applies",
    }
    return ComponentProof(id=component_id, pairs=ids, technique="open", reason=reasons[options.technique])


def _pfp_record(report):
    return PfpRecord(
        ok=report.ok, legacy=report.legacy,
        violations=[str(v) for v in report.violations],
        safe_sets={label: [render(t) for t in members] for label, members in report.safe_sets.items()})


def prove(system, options=None, problem=None):
    """Run the whole pipeline and return the certificate; never raises on unprovable input."""
    options = options or ProverOptions()
    deadline = time.monotonic() + options.timeout
    cert = ProofCertificate(verdict="unknown", problem=problem, options=options.model_dump(mode="json"))
    try:
        check_patterns(system)
    except UnsupportedRuleError as exc:
        cert.diagnostics.append(str(exc))
        return cert

    report = is_pfp(system, options.legacy_safe)
    cert.pfp = _pfp_record(report)
    if not report.ok:
        cert.diagnostics.append("the system is not plain function-passing")
        return cert

    pairs = static_dependency_pairs(system, options.legacy_safe)
    cert.pairs = [PairRecord(id=p.id, lhs=render(p.lhs), rhs=render(p.rhs), origin=p.origin) for p in pairs]
    graph = dependency_graph(pairs, system, options.refine_graph)
    components = recursion_components(graph)
    cert.graph = GraphRecord(nodes=[p.id for p in pairs], arcs=graph.arcs,
                             components=[_pair_ids(c) for c in components])
    logger.info("[scc] %d recursion components", len(components))

    worklist = deque(enumerate(components, start=1))
    next_id = len(components) + 1
    while worklist:
        component_id, component = worklist.popleft()
        ids = _pair_ids(component)
        if time.monotonic() > deadline:
            cert.proofs.append(ComponentProof(id=component_id, pairs=ids, technique="open", reason="timeout"))
            continue
        logger.info("[scc] component %d: pairs %s", component_id, ids)
        try:
            proof = prove_component(component_id, component, system, options, deadline)
        except ProofTimeout:
            proof = ComponentProof(id=component_id, pairs=ids, technique="open", reason="timeout")
        except BudgetExceeded as exc:
            proof = ComponentProof(id=component_id, pairs=ids, technique="open", reason=str(exc))
        if proof.technique != "open":
            # the pairs that only decrease weakly may still form cycles of their own
            remaining = [i for i in ids if i not in proof.strict]
            for sub in recursion_components(graph.restrict(remaining)):
                proof.spawned.append(next_id)
                worklist.append((next_id, sub))
                next_id += 1
        logger.info("[scc] component %d: %s", component_id, proof.technique)
        cert.proofs.append(proof)

    if cert.open_components:
        cert.diagnostics.append(f"{len(cert.open_components)} recursion components remain open")
    else:
        cert.verdict = "terminating"
    return cert
