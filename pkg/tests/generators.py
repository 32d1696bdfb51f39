#!/usr/bin/env python3
"""
Seeded random generators of well-typed eta-long terms, one-hole contexts,
substitutions and argument filterings for the property suites.
"""

import random

from sdprover.filtering import ArgumentFiltering, Collapse, Keep
from sdprover.path_order import BaseOrder, Status
from sdprover.terms import (
    BaseType,
    Term,
    arrow,
    decompose,
    fresh_bound,
    free_variable,
    function_symbol,
    is_base,
    lam,
    positions,
    subterm_with_context,
)

N, L = BaseType("N"), BaseType("L")

# A small signature with one constant per basic type, so generation always bottoms out
SIGNATURE = [
    function_symbol("0", N),
    function_symbol("s", arrow(N, N)),
    function_symbol("add", arrow(N, N, N)),
    function_symbol("nil", L),
    function_symbol("cons", arrow(N, L, L)),
    function_symbol("foldl", arrow(arrow(N, N, N), N, L, N)),
    function_symbol("map", arrow(arrow(N, N), L, L)),
    function_symbol("twice", arrow(arrow(N, N), N, N)),
]

VARIABLES = [
    free_variable("X", N),
    free_variable("Y", N),
    free_variable("K", L),
    free_variable("F", arrow(N, N)),
    free_variable("G", arrow(N, N, N)),
]


class TermGenerator:
    def __init__(self, seed, signature=SIGNATURE, variables=VARIABLES, max_depth=3):
        self.rng = random.Random(seed)
        self.signature = list(signature)
        self.variables = list(variables)
        self.max_depth = max_depth

    def term(self, ty, depth=None, scope=()):
        """A random eta-long term of type ty whose free variables come from the generator."""
        depth = self.max_depth if depth is None else depth
        domains, base = decompose(ty)
        binders = tuple(fresh_bound(d, "xyz"[i % 3]) for i, d in enumerate(domains))
        body = self._body(base, depth, tuple(scope) + binders)
        return lam(binders, body)

    def _body(self, base, depth, scope):
        heads = [s for s in self.signature + self.variables + list(scope) if decompose(s.type)[1] == base]
        if depth <= 0:
            leaves = [s for s in heads if not decompose(s.type)[0]]
            heads = leaves or heads
        head = self.rng.choice(heads)
        domains, _ = decompose(head.type)
        args = tuple(self.term(d, depth - 1, scope) for d in domains)
        return Term((), head, args)

    def base_term(self, depth=None):
        return self.term(self.rng.choice([N, L]), depth)

    def context(self, hole_type, depth=None, rigid=False):
        """A term of basic type with a hole position of type hole_type that lies below no binder.

        Returns (term, position); the context is the term with the subterm at
        position taken out.  With rigid=True every head above the hole is a
        function symbol.
        """
        outer = self.choice(sorted({decompose(s.type)[1] for s in self.signature}, key=str))
        term = self.term(outer, depth)
        holes = []
        for position in sorted(positions(term)):
            sub, binders = subterm_with_context(term, position)
            if binders or sub.type != hole_type:
                continue
            above = [subterm_with_context(term, position[:i])[0].head for i in range(len(position))]
            if rigid and not all(head.is_function for head in above):
                continue
            holes.append(position)
        if not holes:
            return self.term(hole_type, depth), ()
        return term, self.choice(holes)

    def substitution(self, variables=None, depth=2):
        """Bindings for a random subset of the variables."""
        variables = self.variables if variables is None else list(variables)
        chosen = [v for v in variables if self.rng.random() < 0.6]
        return {v: self.term(v.type, depth) for v in chosen}

    def filtering(self, symbols=None):
        symbols = self.signature if symbols is None else symbols
        mapping = {}
        for symbol in symbols:
            domains, base = decompose(symbol.type)
            if not domains:
                continue
            roll = self.rng.random()
            collapses = [i for i, d in enumerate(domains, start=1) if d == base]
            if roll < 0.3 and collapses:
                mapping[symbol] = Collapse(self.rng.choice(collapses))
            elif roll < 0.65:
                kept = [i for i in range(1, len(domains) + 1) if self.rng.random() < 0.5]
                mapping[symbol] = Keep(tuple(kept))
        return ArgumentFiltering.of(mapping)

    def order(self):
        """A random precedence on the signature; some symbols get multiset status."""
        idents = [s.ident for s in self.signature]
        self.rng.shuffle(idents)
        precedence = [(f, g) for i, f in enumerate(idents) for g in idents[i + 1:] if self.rng.random() < 0.4]
        status = {f: Status.MUL for f in idents if self.rng.random() < 0.3}
        return BaseOrder.of(precedence, status)

    def pool(self, terms=2, size=8):
        """Distinct basic-type subterms, below no binder, of a few random terms."""
        found = set()
        for _ in range(terms):
            found |= open_subterms(self.base_term())
        pool = sorted(found, key=lambda t: t.order_key())
        return pool if len(pool) <= size else self.rng.sample(pool, size)

    def choice(self, items):
        return self.rng.choice(list(items))


def open_subterms(term):
    """The subterms of basic type at positions below no binder."""
    found = set()
    for position in positions(term):
        sub, binders = subterm_with_context(term, position)
        if not binders and is_base(sub.type):
            found.add(sub)
    return found
