#!/usr/bin/env python3
"""
Static dependency pairs, the dependency graph and its recursion components.
"""
import re

import pytest

from conftest import property_samples
from generators import TermGenerator
from sdprover.dependency_pairs import (
    candidates,
    dependency_graph,
    emit_graph,
    mark,
    recursion_components,
    static_dependency_pairs,
    unmark,
)
from sdprover.errors import BudgetExceeded
from sdprover.parser import load_problem
from sdprover.rewriting import match_pattern, reachable_set
from sdprover.terms import render, substitute

CLASH = """
type N;
fun 0 : N;
fun s : N -> N;
fun f : N -> N;
var X : N;
rule f1 : f(s(X)) -> f(0);
"""


def _component_ids(components):
    return [[pair.id for pair in component] for component in components]


def test_average_pairs_in_rule_order(ave):
    pairs = static_dependency_pairs(ave.system)
    assert [p.id for p in pairs] == list(range(1, 12))
    assert [p.origin for p in pairs] == [
        "foldl2", "add2", "sum", "sum", "len", "sub3", "div2", "div2", "ave", "ave", "ave"]
    assert str(pairs[6]) == "div#(s(X), s(Y)) -> div#(sub(X, Y), s(Y))"
    assert str(pairs[7]) == "div#(s(X), s(Y)) -> sub#(X, Y)"
    assert render(pairs[3].rhs) == "add#(x, y)"


def test_functional_argument_is_not_a_pair(foldl):
    pairs = static_dependency_pairs(foldl.system)
    assert len(pairs) == 1
    assert str(pairs[0]) == "foldl#(\\x y. F(x, y), X, cons(Y, L)) -> foldl#(\\x y. F(x, y), F(X, Y), L)"


def test_average_recursion_components(ave):
    graph = dependency_graph(static_dependency_pairs(ave.system), ave.system)
    assert len(graph) == 11
    assert graph.has_arc(3, 1)
    assert not graph.has_arc(1, 3)
    assert _component_ids(recursion_components(graph)) == [[1], [2], [6], [7]]


def test_heap_pairs_and_components(heap):
    pairs = static_dependency_pairs(heap.system)
    assert len(pairs) == 15
    assert [p.origin for p in pairs if p.origin == "l2t3"] == ["l2t3"] * 3
    graph = dependency_graph(pairs, heap.system)
    assert _component_ids(recursion_components(graph)) == [[1], [2], [3, 4], [5, 6], [10, 12]]


def test_forall_pairs_keep_passed_functions(forall):
    assert len(static_dependency_pairs(forall.system)) == 2
    rhs = {render(p.rhs) for p in static_dependency_pairs(forall.system)}
    assert rhs == {"forall#(\\x. P(x))", "forall#(\\x. Q(x))"}


def test_candidates_in_pre_order(ave):
    rhs = ave.system.rule("div2").rhs
    heads = [c.head.name for c in candidates(rhs)]
    assert heads[:3] == ["s", "div", "sub"]


def test_mark_only_defined_roots(ave):
    defined = ave.system.defined
    term = ave.term("div(X, Y)")
    marked = mark(term, defined)
    assert marked.head.marked and marked.head.label == "div#"
    assert unmark(marked) == term
    assert mark(ave.term("s(X)"), defined) == ave.term("s(X)")


def test_refined_graph_drops_constructor_clashes():
    problem = load_problem(CLASH)
    pairs = static_dependency_pairs(problem.system)
    assert _component_ids(recursion_components(dependency_graph(pairs, problem.system))) == [[1]]
    refined = dependency_graph(pairs, problem.system, refine=True)
    assert refined.arcs == []
    assert recursion_components(refined) == []


def test_restricted_graph(heap):
    graph = dependency_graph(static_dependency_pairs(heap.system), heap.system)
    sub = graph.restrict([10])
    assert len(sub) == 1
    assert _component_ids(recursion_components(sub)) == [[10]]
    assert _component_ids(recursion_components(graph.restrict([12]))) == [[12]]


def test_dot_output(ave):
    graph = dependency_graph(static_dependency_pairs(ave.system), ave.system)
    dot = emit_graph(graph).decode("utf-8")
    assert dot.startswith("digraph sdg {")
    assert dot.rstrip().endswith("}")
    assert len(re.findall(r"^  \d+ \[label=", dot, flags=re.MULTILINE)) == 11
    assert "  7 -> 7;" in dot


@pytest.mark.property
@pytest.mark.parametrize("refine", [False, True])
def test_graph_keeps_every_reachable_chain_step(ave, refine):
    """t# theta ->* u# sigma between two pairs means an arc between them."""
    system = ave.system
    pairs = static_dependency_pairs(system)
    graph = dependency_graph(pairs, system, refine)
    signature = sorted(system.signature, key=lambda s: s.name)
    checked = skipped = 0
    for seed in range(property_samples(60)):
        gen = TermGenerator(seed, signature, [], max_depth=2)
        source = gen.choice(pairs)
        theta = {v: gen.term(v.type) for v in sorted(source.rhs.free_vars, key=lambda v: v.name)}
        try:
            reached = reachable_set(substitute(source.rhs, theta), system, depth=3, max_nodes=2000)
        except BudgetExceeded:
            skipped += 1
            continue
        for term in reached:
            for target in pairs:
                if term.head == target.lhs_root and match_pattern(target.lhs, term) is not None:
                    assert graph.has_arc(source.id, target.id), f"{render(term)} from pair {source.id}"
                    checked += 1
    assert checked > 0, f"every instance skipped ({skipped})"
