#!/usr/bin/env python3
"""
Argument filterings: validation, application to terms, enumeration order and
their interaction with substitution and typing.
"""
import pytest

from conftest import property_samples
from generators import SIGNATURE, VARIABLES, TermGenerator
from sdprover.dependency_pairs import static_dependency_pairs
from sdprover.errors import FilteringError
from sdprover.filtering import (
    ArgumentFiltering,
    Collapse,
    Comparison,
    Keep,
    apply_filtering,
    compare_filtered,
    deviations,
    enumerate_filterings,
    filtered_substitution,
    loses_variables,
)
from sdprover.path_order import BaseOrder, path_ge
from sdprover.terms import arrow, check_term, render, replace_at, substitute


def test_keep_retypes_symbol(ave):
    pair = static_dependency_pairs(ave.system)[6]
    filtering = ArgumentFiltering.of({ave.symbol("sub"): [1]})
    filtered = apply_filtering(filtering, pair.rhs)
    assert render(filtered) == "div#(sub(X), s(Y))"
    assert filtered.args[0].head.type == arrow(ave.types["N"], ave.types["N"])
    assert apply_filtering(filtering, pair.lhs) == pair.lhs
    assert str(filtering) == "sub = [1]"


def test_collapse_replaces_term_by_argument(ave):
    filtering = ArgumentFiltering.of({ave.symbol("s"): 1})
    assert apply_filtering(filtering, ave.term("add(s(X), s(s(0)))")) == ave.term("add(X, 0)")


def test_collapse_under_binder_keeps_binders(sum_len):
    filtering = ArgumentFiltering.of({sum_len.symbol("add"): 2})
    term = sum_len.term("foldl(\\x y. add(x, y), 0, L)")
    assert apply_filtering(filtering, term) == sum_len.term("foldl(\\x y. y, 0, L)")


def test_invalid_entries_are_rejected(sum_len):
    cons = sum_len.symbol("cons")
    with pytest.raises(FilteringError):
        ArgumentFiltering.of({cons: Collapse(1)})
    with pytest.raises(FilteringError):
        ArgumentFiltering.of({cons: Keep((2, 1))})
    with pytest.raises(FilteringError):
        ArgumentFiltering.of({cons: Keep((3,))})
    assert ArgumentFiltering.of({cons: Collapse(2)}).entry(cons) == Collapse(2)


def test_keeping_everything_is_identity(sum_len):
    assert ArgumentFiltering.of({sum_len.symbol("add"): [1, 2]}).is_identity()
    assert str(ArgumentFiltering()) == "identity"


def test_enumeration_starts_with_identity_and_respects_budget(ave):
    symbols = [ave.symbol("sub"), ave.symbol("s")]
    found = list(enumerate_filterings(symbols, 5))
    assert found[0].is_identity()
    assert len(found) == 5
    assert list(enumerate_filterings(symbols, 0)) == []


def test_enumeration_prefers_erasing_foreign_arguments(ave):
    sub = ave.symbol("sub")
    constraint = (ave.term("sub(X, Y)"), ave.term("sub(X, s(Y))"))
    found = list(enumerate_filterings([sub, ave.symbol("s")], 100, [constraint]))
    # s(Y) does not occur on the left, so dropping the second argument of sub comes first
    assert found[1].entry(sub) == Keep((1,))


def test_deviations_of_binary_symbol(ave):
    assert deviations(ave.symbol("sub")) == [Keep((2,)), Keep((1,)), Collapse(1), Collapse(2)]
    assert deviations(ave.symbol("cons")) == [Keep((2,)), Keep((1,)), Collapse(2)]


def test_lost_variables(ave):
    rule = ave.system.rule("add1")
    assert loses_variables(ArgumentFiltering.of({ave.symbol("add"): [1]}), rule.lhs, rule.rhs)
    assert not loses_variables(ArgumentFiltering(), rule.lhs, rule.rhs)


def test_compare_filtered(ave):
    rule = ave.system.rule("sub1")
    filtering = ArgumentFiltering.of({ave.symbol("sub"): 1})
    assert compare_filtered(filtering, BaseOrder(), rule.lhs, rule.rhs) is Comparison.WEAK_EQUAL
    assert compare_filtered(ArgumentFiltering(), BaseOrder(), rule.lhs, rule.rhs) is Comparison.STRICT
    rule = ave.system.rule("add2")
    assert compare_filtered(ArgumentFiltering(), BaseOrder(), rule.lhs, rule.rhs) is Comparison.INCOMPARABLE


@pytest.mark.property
def test_filtering_commutes_with_substitution():
    """pi(t theta) equals pi(t) pi(theta), both normalized."""
    for seed in range(property_samples(500)):
        gen = TermGenerator(seed, SIGNATURE, VARIABLES)
        term = gen.base_term()
        theta = gen.substitution()
        filtering = gen.filtering()
        left = apply_filtering(filtering, substitute(term, theta))
        right = substitute(apply_filtering(filtering, term), filtered_substitution(filtering, theta))
        assert left == right, f"{render(term)} under {filtering}"


@pytest.mark.property
def test_filtered_terms_are_well_typed():
    for seed in range(property_samples(1000)):
        gen = TermGenerator(seed, SIGNATURE, VARIABLES)
        term = gen.term(gen.choice(t.type for t in gen.variables))
        filtering = gen.filtering()
        filtered = apply_filtering(filtering, term)
        assert check_term(filtered) == term.type, f"{render(term)} under {filtering}"


def _weakly_ordered(gen, filtering, order):
    pool = gen.pool()
    return [(a, b) for a in pool for b in pool
            if a != b and path_ge(order, apply_filtering(filtering, a), apply_filtering(filtering, b))]


@pytest.mark.property
def test_filtered_weak_order_is_closed_under_substitution():
    """pi(s) >= pi(t) gives pi(s theta) >= pi(t theta)."""
    checked = 0
    for seed in range(property_samples(200)):
        gen = TermGenerator(seed, SIGNATURE, VARIABLES, max_depth=2)
        filtering, order = gen.filtering(), gen.order()
        theta = gen.substitution()
        for a, b in _weakly_ordered(gen, filtering, order):
            left = apply_filtering(filtering, substitute(a, theta))
            right = apply_filtering(filtering, substitute(b, theta))
            assert path_ge(order, left, right), f"{render(a)} >= {render(b)} under {filtering}"
            checked += 1
    assert checked > 0


@pytest.mark.property
def test_filtered_weak_order_is_closed_under_function_contexts():
    checked = 0
    for seed in range(property_samples(200)):
        gen = TermGenerator(seed, SIGNATURE, VARIABLES, max_depth=2)
        filtering, order = gen.filtering(), gen.order()
        for a, b in _weakly_ordered(gen, filtering, order):
            if a.type != b.type:
                continue
            context, position = gen.context(a.type, rigid=True)
            left = apply_filtering(filtering, replace_at(context, position, a))
            right = apply_filtering(filtering, replace_at(context, position, b))
            assert path_ge(order, left, right), f"{render(a)} >= {render(b)} under {filtering}"
            checked += 1
    assert checked > 0
