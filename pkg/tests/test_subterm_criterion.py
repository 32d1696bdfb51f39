#!/usr/bin/env python3
"""
The subterm criterion on the recursion components of R_ave and R_heap.
"""
import random

import pytest

from conftest import property_samples
from sdprover.dependency_pairs import dependency_graph, recursion_components, static_dependency_pairs
from sdprover.subterm_criterion import (
    Projection,
    check_subterm_criterion,
    criterion_violation,
    find_projection,
    projection_space,
    strictly_decreasing,
)


def _components(problem):
    system = problem.system
    graph = dependency_graph(static_dependency_pairs(system), system)
    return {tuple(p.id for p in c): c for c in recursion_components(graph)}


def _labels(projection):
    return {symbol.label: position for symbol, position in projection.items}


@pytest.mark.parametrize("ids, expected", [
    ((1,), {"foldl#": (3,)}),
    ((2,), {"add#": (1,)}),
    ((6,), {"sub#": (1,)}),
])
def test_average_projections(ave, ids, expected):
    component = _components(ave)[ids]
    projection = find_projection(component, 3, ave.system.defined)
    assert projection is not None
    assert _labels(projection) == expected


def test_division_has_no_projection(ave):
    component = _components(ave)[(7,)]
    assert find_projection(component, 3, ave.system.defined) is None


def test_heap_components_except_l2t(heap):
    components = _components(heap)
    for ids in [(1,), (2,), (3, 4), (5, 6)]:
        assert find_projection(components[ids], 3, heap.system.defined) is not None, ids
    assert find_projection(components[(10, 12)], 3, heap.system.defined) is None


def test_merge_projects_to_either_heap(heap):
    projection = find_projection(_components(heap)[(3, 4)], 3, heap.system.defined)
    assert _labels(projection) == {"merge#": (1,)}


def test_weak_only_projection_is_rejected(ave):
    component = _components(ave)[(1,)]
    symbol = component[0].lhs_root
    projection = Projection.of({symbol: (1,)})
    assert not check_subterm_criterion(component, projection, ave.system.defined)
    assert criterion_violation(component, projection, ave.system.defined) == "no pair decreases strictly"


def test_path_below_free_variable_is_rejected(ave):
    component = _components(ave)[(1,)]
    symbol = component[0].lhs_root
    reason = criterion_violation(component, Projection.of({symbol: (1, 1, 1, 1)}), ave.system.defined)
    assert "free variable above position 1.1.1.1" in reason


def test_path_below_defined_symbol_is_rejected(ave):
    component = _components(ave)[(7,)]
    symbol = component[0].lhs_root
    reason = criterion_violation(component, Projection.of({symbol: (1, 1)}), ave.system.defined)
    assert "defined symbol" in reason


def test_missing_symbol_is_reported(ave):
    component = _components(ave)[(2,)]
    assert criterion_violation(component, Projection.of({}), ave.system.defined).startswith("no projection")


def test_projection_space_respects_length(ave):
    component = _components(ave)[(2,)]
    short = list(projection_space(component, 1, ave.system.defined))
    assert [_labels(p) for p in short] == [{"add#": (1,)}, {"add#": (2,)}]
    # add#(X, Y) has no position of length 2
    assert len(list(projection_space(component, 2, ave.system.defined))) == 2


@pytest.mark.property
@pytest.mark.parametrize("name, ids", [("heap", (3, 4)), ("split", (1, 2, 3))])
def test_projection_holds_on_every_subset_with_a_strict_pair(request, name, ids):
    problem = request.getfixturevalue(name)
    defined = problem.system.defined
    component = _components(problem)[ids]
    projection = find_projection(component, 3, defined)
    strict = set(strictly_decreasing(component, projection))
    assert strict
    for seed in range(property_samples(50)):
        rng = random.Random(seed)
        subset = [pair for pair in component if rng.random() < 0.6] or [rng.choice(component)]
        reason = criterion_violation(subset, projection, defined)
        if strict & {pair.id for pair in subset}:
            assert reason is None, [pair.id for pair in subset]
        else:
            assert reason == "no pair decreases strictly"


def test_strictly_decreasing_pairs(heap, split):
    merge = _components(heap)[(3, 4)]
    assert strictly_decreasing(merge, find_projection(merge, 3, heap.system.defined)) == [3]
    component = _components(split)[(1, 2, 3)]
    symbols = {pair.lhs_root for pair in component}
    assert strictly_decreasing(component, Projection.of({s: (2,) for s in symbols})) == [2]
    assert strictly_decreasing(component, Projection.of({})) == []
