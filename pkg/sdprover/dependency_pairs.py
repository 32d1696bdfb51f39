#!/usr/bin/env python3
"""
Static dependency pairs, the static dependency graph and its recursion components.

Arcs are drawn between pairs u# -> v# and u'# -> v'# whenever v# and u'# share
their marked head.  Marked symbols head no rule, so rewriting below a marked
head never changes it and the arc set over-approximates the chain relation.
"""

import logging
from dataclasses import dataclass, replace

import networkx as nx

from .accessibility import prefix_applications, safe_subterms
from .terms import Term, lam, render

logger = logging.getLogger(__name__)


def marked_symbol(symbol):
    return replace(symbol, marked=True)


def unmarked_symbol(symbol):
    return replace(symbol, marked=False)


def mark(term, defined):
    """t# : f#(t1..tn) when t = f(t1..tn) with f defined, t otherwise."""
    if term.binders or term.head not in defined:
        return term
    return Term((), marked_symbol(term.head), term.args)


def unmark(term):
    if not term.head.marked:
        return term
    return Term(term.binders, unmarked_symbol(term.head), term.args)


def candidates(term):
    """Cand(t), in pre-order; the binders of t are re-attached to every argument."""
    found = {}
    _collect_candidates(term, found)
    return tuple(found)


def _collect_candidates(term, found):
    found.setdefault(term, None)
    for arg in term.args:
        _collect_candidates(lam(term.binders, arg), found)


@dataclass(frozen=True)
class DependencyPair:
    """A static dependency pair l# -> a#(r1..rn).

    rhs may contain variables that were bound in the right-hand side of the
    originating rule.
    """

    lhs: Term
    rhs: Term
    origin: str
    id: int

    @property
    def lhs_root(self):
        return self.lhs.head

    @property
    def rhs_root(self):
        return self.rhs.head

    def __str__(self):
        return f"{render(self.lhs)} -> {render(self.rhs)}"


def static_dependency_pairs(system, legacy=False):
    """SDP(R), numbered from 1 in rule order."""
    defined = system.defined
    pairs = []
    for rule in system.rules:
        safe = safe_subterms(rule.lhs, legacy)
        lhs = mark(rule.lhs, defined)
        seen = set()
        for candidate in candidates(rule.rhs):
            if candidate.head not in defined:
                continue
            body = candidate.body
            if any(prefix in safe for prefix in prefix_applications(body)):
                continue
            rhs = mark(body, defined)
            if rhs in seen:
                continue
            seen.add(rhs)
            pairs.append(DependencyPair(lhs, rhs, rule.label, len(pairs) + 1))
    logger.info("[sdp] %d static dependency pairs", len(pairs))
    for pair in pairs:
        logger.debug("[sdp] %d: %s (from %s)", pair.id, pair, pair.origin)
    return tuple(pairs)


# ---------------------------------------------------------------------------
# Static dependency graph
# ---------------------------------------------------------------------------

def constructor_clash(target, source, defined):
    """Whether some direct argument of target and source starts with distinct constructors."""
    for t, s in zip(target.args, source.args):
        if t.binders or s.binders:
            continue
        if (t.head.is_function and s.head.is_function
                and t.head not in defined and s.head not in defined
                and t.head != s.head):
            return True
    return False


class DependencyGraph:
    def __init__(self, pairs, graph):
        self.pairs = tuple(sorted(pairs, key=lambda p: p.id))
        self.graph = graph
        self._by_id = {pair.id: pair for pair in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def pair(self, pair_id):
        return self._by_id[pair_id]

    @property
    def arcs(self):
        return sorted(self.graph.edges())

    def has_arc(self, source, target):
        return self.graph.has_edge(source, target)

    def restrict(self, pair_ids):
        """The subgraph induced by the given pair ids."""
        keep = set(pair_ids)
        return DependencyGraph([p for p in self.pairs if p.id in keep],
                               self.graph.subgraph(keep).copy())

    def to_dot(self):
        lines = ["digraph sdg {"]
        for pair in self.pairs:
            label = f"{pair.id}: {render(pair.lhs)} → {render(pair.rhs)}"
            label = label.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {pair.id} [label="{label}"];')
        for source, target in self.arcs:
            lines.append(f"  {source} -> {target};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def dependency_graph(pairs, system, refine=False):
    """The static dependency graph approximated by head-symbol equality.

    With refine=True an arc is also dropped when the two terms carry distinct
    constructors at the same direct argument.
    """
    graph = nx.DiGraph()
    for pair in pairs:
        graph.add_node(pair.id, pair=pair)
    defined = system.defined
    for source in pairs:
        for target in pairs:
            if source.rhs_root != target.lhs_root:
                continue
            if refine and constructor_clash(source.rhs, target.lhs, defined):
                logger.debug("[sdg] pruned arc %d -> %d", source.id, target.id)
                continue
            graph.add_edge(source.id, target.id)
    return DependencyGraph(pairs, graph)


def recursion_components(graph):
    """Maximal strongly connected components that contain at least one arc.

    Components come out sorted by their smallest pair id, each as a tuple of
    pairs sorted by id.
    """
    components = []
    for ids in nx.strongly_connected_components(graph.graph):
        if len(ids) == 1:
            (only,) = ids
            if not graph.has_arc(only, only):
                continue
        components.append(tuple(graph.pair(i) for i in sorted(ids)))
    components.sort(key=lambda c: c[0].id)
    return components


def emit_graph(graph):
    """The graph in DOT format, as bytes."""
    return graph.to_dot().encode("utf-8")
