#!/usr/bin/env python3
"""
Simply-typed terms in spine form.

A term is kept in eta-long beta-normal form as ``\\x1..xm. a(t1, ..., tn)``.
Preterms (plain application/abstraction trees) exist only as input to
``normalize``.  Equality and hashing of terms is alpha-equivalence: both go
through a canonical key in which bound variables are replaced by their binding
depth, so sets and dicts of terms deduplicate modulo alpha.

Every operation that opens a binder while substituting renames it to a fresh
name, so bound variable names produced here never collide with each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Mapping, Sequence, Union

from .errors import HrsTypeError, PositionError

# Separator between the source name of a bound variable and its freshness counter
FRESH_SEPARATOR = "~"

# Binder names used when eta-expansion has to invent variables
ETA_HINTS = "xyzuvw"

_fresh_counter = itertools.count(1)


# ---------------------------------------------------------------------------
# Simple types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BaseType:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class ArrowType:
    domain: "SimpleType"
    codomain: "SimpleType"

    def __str__(self):
        if isinstance(self.domain, ArrowType):
            return f"({self.domain}) -> {self.codomain}"
        return f"{self.domain} -> {self.codomain}"


SimpleType = Union[BaseType, ArrowType]


def arrow(*types):
    """Build the right-nested type t1 -> t2 -> ... -> tn."""
    if not types:
        raise ValueError("arrow() needs at least one type")
    result = types[-1]
    for ty in reversed(types[:-1]):
        result = ArrowType(ty, result)
    return result


def decompose(ty):
    """Split a1 -> ... -> an -> b into ((a1, ..., an), b) with b basic."""
    domains = []
    while isinstance(ty, ArrowType):
        domains.append(ty.domain)
        ty = ty.codomain
    return tuple(domains), ty


def arity(ty):
    return len(decompose(ty)[0])


def is_base(ty):
    return isinstance(ty, BaseType)


def base_types_of(ty):
    if isinstance(ty, BaseType):
        return {ty}
    return base_types_of(ty.domain) | base_types_of(ty.codomain)


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------

class SymbolKind(str, Enum):
    FUNCTION = "function"
    FREE = "free"
    BOUND = "bound"


@dataclass(frozen=True)
class Symbol:
    name: str
    type: SimpleType
    kind: SymbolKind = SymbolKind.FUNCTION
    marked: bool = False

    @property
    def is_variable(self):
        return self.kind is not SymbolKind.FUNCTION

    @property
    def is_function(self):
        return self.kind is SymbolKind.FUNCTION

    @property
    def ident(self):
        """Name-level identity; survives retyping by an argument filtering."""
        return (self.name, self.marked)

    @property
    def label(self):
        if self.kind is SymbolKind.BOUND:
            return hint_of(self)
        return f"{self.name}#" if self.marked else self.name

    def __str__(self):
        return self.label


def function_symbol(name, ty):
    return Symbol(name, ty, SymbolKind.FUNCTION)


def free_variable(name, ty):
    return Symbol(name, ty, SymbolKind.FREE)


def fresh_bound(ty, hint="x"):
    """A bound variable whose name is unique in this process."""
    return Symbol(f"{hint}{FRESH_SEPARATOR}{next(_fresh_counter)}", ty, SymbolKind.BOUND)


def fresh_copy(symbol):
    return fresh_bound(symbol.type, hint_of(symbol))


def hint_of(symbol):
    return symbol.name.split(FRESH_SEPARATOR, 1)[0]


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Term:
    """An eta-long beta-normal term ``\\binders. head(args)``."""

    binders: tuple
    head: Symbol
    args: tuple = ()

    @cached_property
    def key(self):
        return _canonical(self, {}, 0)

    def __eq__(self, other):
        if not isinstance(other, Term):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Term({render(self)!r})"

    @cached_property
    def type(self):
        ty = self.head.type
        for _ in self.args:
            if not isinstance(ty, ArrowType):
                raise HrsTypeError(f"{self.head.label} is applied to too many arguments")
            ty = ty.codomain
        for binder in reversed(self.binders):
            ty = ArrowType(binder.type, ty)
        return ty

    @cached_property
    def free_vars(self):
        found = set()
        if self.head.is_variable:
            found.add(self.head)
        for arg in self.args:
            found |= arg.free_vars
        return frozenset(found.difference(self.binders))

    @cached_property
    def size(self):
        return 1 + len(self.binders) + sum(arg.size for arg in self.args)

    @property
    def body(self):
        if not self.binders:
            return self
        return Term((), self.head, self.args)

    @property
    def is_abstraction(self):
        return bool(self.binders)

    def order_key(self):
        """Total order on alpha-classes: size first, then the canonical key."""
        return (self.size, repr(self.key))


def _canonical(term, levels, depth):
    inner = levels
    if term.binders:
        inner = dict(levels)
        for binder in term.binders:
            inner[binder] = depth
            depth += 1
    head = term.head
    if head in inner:
        head_key = ("b", inner[head])
    elif head.is_function:
        head_key = ("f", head.name, head.marked, head.type)
    else:
        head_key = ("v", head.name, head.type)
    return (tuple(b.type for b in term.binders), head_key,
            tuple(_canonical(arg, inner, depth) for arg in term.args))


def const(symbol):
    """The term consisting of a symbol of basic type."""
    return Term((), symbol, ())


def app(symbol, *args):
    return Term((), symbol, tuple(args))


def lam(binders, body):
    """Prefix binders to a term, flattening into one binder list."""
    return Term(tuple(binders) + body.binders, body.head, body.args)


def eta_expand(symbol):
    """The eta-long form of a bare symbol, e.g. F of type N -> N -> N gives \\x y. F(x, y)."""
    domains, _ = decompose(symbol.type)
    binders = tuple(fresh_bound(ty, ETA_HINTS[i % len(ETA_HINTS)]) for i, ty in enumerate(domains))
    return Term(binders, symbol, tuple(eta_expand(b) for b in binders))


def check_term(term, position=()):
    """Raise HrsTypeError unless the term is well-typed and eta-long everywhere.

    Returns the type of the term.
    """
    domains, _ = decompose(term.head.type)
    if len(term.args) != len(domains):
        raise HrsTypeError(
            f"{term.head.label} expects {len(domains)} arguments, got {len(term.args)}", position)
    seen = set()
    for binder in term.binders:
        if binder.kind is not SymbolKind.BOUND or binder in seen:
            raise HrsTypeError(f"invalid binder {binder.label}", position)
        seen.add(binder)
    offset = (1,) * len(term.binders)
    for i, (arg, expected) in enumerate(zip(term.args, domains), start=1):
        actual = check_term(arg, position + offset + (i,))
        if actual != expected:
            raise HrsTypeError(
                f"argument {i} of {term.head.label} has type {actual}, expected {expected}",
                position + offset + (i,))
    return term.type


def free_vars(term):
    return set(term.free_vars)


def alpha_eq(s, t):
    return s.key == t.key


def symbols_of(term):
    """All symbols occurring in a term (heads and binders)."""
    found = {term.head, *term.binders}
    for arg in term.args:
        found |= symbols_of(arg)
    return found


def function_symbols_of(term):
    return {s for s in symbols_of(term) if s.is_function}


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

Substitution = Mapping  # Mapping[Symbol, Term]


def make_substitution(bindings):
    """Validate a substitution: type-preserving, identity bindings dropped."""
    result = {}
    for variable, value in bindings.items():
        if not variable.is_variable:
            raise HrsTypeError(f"cannot substitute for function symbol {variable.label}")
        if value.type != variable.type:
            raise HrsTypeError(
                f"{variable.label} has type {variable.type} but is bound to a term of type {value.type}")
        if value == eta_expand(variable):
            continue
        result[variable] = value
    return result


def substitute(term, theta):
    """Capture-avoiding substitution followed by normalization (t theta, normalized)."""
    for variable, value in theta.items():
        if value.type != variable.type:
            raise HrsTypeError(
                f"{variable.label} has type {variable.type} but is bound to a term of type {value.type}")
    if not theta:
        return term
    return _subst(term, dict(theta), {})


def _subst(term, sigma, rename):
    if term.free_vars.isdisjoint(sigma) and term.free_vars.isdisjoint(rename):
        return term
    binders = term.binders
    if binders:
        fresh = tuple(fresh_copy(b) for b in binders)
        rename = {**rename, **dict(zip(binders, fresh))}
        binders = fresh
    args = tuple(_subst(arg, sigma, rename) for arg in term.args)
    head = term.head
    if head in rename:
        body = Term((), rename[head], args)
    elif head in sigma:
        body = apply_term(sigma[head], args)
    else:
        body = Term((), head, args)
    return Term(binders + body.binders, body.head, body.args)


def refresh(term):
    """Rename the outermost binders of a term to fresh names."""
    if not term.binders:
        return term
    fresh = tuple(fresh_copy(b) for b in term.binders)
    body = _subst(Term((), term.head, term.args), {}, dict(zip(term.binders, fresh)))
    return Term(fresh, body.head, body.args)


def apply_term(value, args):
    """Hereditary beta-reduction of ``value(args)``; value must take at least len(args) binders."""
    if not args:
        return value
    if len(args) > len(value.binders):
        raise HrsTypeError(f"cannot apply {render(value)} to {len(args)} arguments")
    mapping = dict(zip(value.binders, args))
    rest = value.binders[len(args):]
    return _subst(Term(rest, value.head, value.args), mapping, {})


def compose(theta, sigma):
    """(theta; sigma)(X) = theta(X) sigma, normalized, plus the bindings of sigma outside dom(theta)."""
    result = {x: substitute(v, sigma) for x, v in theta.items()}
    for x, v in sigma.items():
        result.setdefault(x, v)
    return make_substitution(result)


# ---------------------------------------------------------------------------
# Preterms and normalization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PAtom:
    symbol: Symbol


@dataclass(frozen=True)
class PApp:
    function: "Preterm"
    argument: "Preterm"


@dataclass(frozen=True)
class PLam:
    variable: Symbol
    body: "Preterm"


Preterm = Union[PAtom, PApp, PLam]


def papply(head, *args):
    result = head if not isinstance(head, Symbol) else PAtom(head)
    for arg in args:
        result = PApp(result, arg)
    return result


def spine(preterm):
    """Unwind applications: returns (head preterm, [arguments])."""
    args = []
    while isinstance(preterm, PApp):
        args.append(preterm.argument)
        preterm = preterm.function
    return preterm, args[::-1]


def preterm_type(preterm, position=()):
    if isinstance(preterm, PAtom):
        return preterm.symbol.type
    if isinstance(preterm, PLam):
        return ArrowType(preterm.variable.type, preterm_type(preterm.body, position + (1,)))
    fn_type = preterm_type(preterm.function, position + (1,))
    arg_type = preterm_type(preterm.argument, position + (2,))
    if not isinstance(fn_type, ArrowType):
        raise HrsTypeError(f"a term of basic type {fn_type} is applied to an argument", position)
    if fn_type.domain != arg_type:
        raise HrsTypeError(f"argument of type {arg_type} where {fn_type.domain} is expected", position)
    return fn_type.codomain


def preterm_free_vars(preterm):
    if isinstance(preterm, PAtom):
        return {preterm.symbol} if preterm.symbol.is_variable else set()
    if isinstance(preterm, PLam):
        return preterm_free_vars(preterm.body) - {preterm.variable}
    return preterm_free_vars(preterm.function) | preterm_free_vars(preterm.argument)


def embed(term):
    """View a term as a preterm."""
    result = papply(term.head, *(embed(arg) for arg in term.args))
    for binder in reversed(term.binders):
        result = PLam(binder, result)
    return result


def normalize(preterm):
    """The eta-long beta-normal form of a well-typed preterm."""
    preterm_type(preterm)
    return _normalize(preterm, {})


def _normalize(preterm, env):
    if isinstance(preterm, PAtom):
        if preterm.symbol in env:
            return env[preterm.symbol]
        return eta_expand(preterm.symbol)
    if isinstance(preterm, PLam):
        variable = fresh_copy(preterm.variable)
        body = _normalize(preterm.body, {**env, preterm.variable: eta_expand(variable)})
        return lam((variable,), body)
    head, args = spine(preterm)
    return apply_term(_normalize(head, env), tuple(_normalize(arg, env) for arg in args))


# ---------------------------------------------------------------------------
# Subterms and positions
# ---------------------------------------------------------------------------

def strip_binder(term):
    """\\x x2..xm. s  ->  \\x2..xm. s"""
    return Term(term.binders[1:], term.head, term.args)


def subterms(term):
    """Sub(t): t itself, Sub(s) for t = \\x.s, and Sub(ti) for t = a(t1..tn)."""
    found = set()
    _collect_subterms(term, found)
    return frozenset(found)


def _collect_subterms(term, found):
    found.add(term)
    if term.binders:
        _collect_subterms(strip_binder(term), found)
    else:
        for arg in term.args:
            _collect_subterms(arg, found)


def is_subterm(sub, term):
    """term ⊵_sub sub"""
    return sub in subterms(term)


def is_strict_subterm(sub, term):
    """term ▷_sub sub"""
    return sub != term and sub in subterms(term)


def positions(term):
    found = {()}
    prefix = ()
    for _ in term.binders:
        prefix += (1,)
        found.add(prefix)
    for i, arg in enumerate(term.args, start=1):
        for p in positions(arg):
            found.add(prefix + (i,) + p)
    return found


def subterm_with_context(term, position):
    """t|_p together with the binders enclosing p (outermost first)."""
    context = []
    for step in position:
        if term.binders:
            if step != 1:
                raise PositionError(f"position {format_position(position)} leaves {render(term)}")
            context.append(term.binders[0])
            term = strip_binder(term)
        elif 1 <= step <= len(term.args):
            term = term.args[step - 1]
        else:
            raise PositionError(f"position {format_position(position)} leaves {render(term)}")
    return term, tuple(context)


def subterm_at(term, position):
    return subterm_with_context(term, position)[0]


def replace_at(term, position, replacement):
    """C[replacement] where C is term with a hole at position."""
    if not position:
        return replacement
    step, rest = position[0], position[1:]
    if term.binders:
        if step != 1:
            raise PositionError(f"position {format_position(position)} leaves {render(term)}")
        return lam(term.binders[:1], replace_at(strip_binder(term), rest, replacement))
    if not 1 <= step <= len(term.args):
        raise PositionError(f"position {format_position(position)} leaves {render(term)}")
    args = list(term.args)
    args[step - 1] = replace_at(args[step - 1], rest, replacement)
    return Term(term.binders, term.head, tuple(args))


def top(term):
    return term.head


def format_position(position):
    return ".".join(str(i) for i in position) if position else "ε"


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render(term, names=None):
    """Surface syntax, e.g. ``foldl#(\\x y. F(x, y), X, cons(Y, L))``."""
    return _render(term, dict(names or {}), {s.label for s in term.free_vars})


def _render(term, names, reserved):
    prefix = ""
    if term.binders:
        shown = []
        names = dict(names)
        scope = set(names.values())
        for binder in term.binders:
            name = hint_of(binder)
            while name in scope or name in reserved:
                name += "'"
            scope.add(name)
            names[binder] = name
            shown.append(name)
        prefix = "\\" + " ".join(shown) + ". "
    head = names.get(term.head, term.head.label)
    if not term.args:
        return prefix + head
    inner = ", ".join(_render(arg, names, reserved) for arg in term.args)
    return f"{prefix}{head}({inner})"


def render_preterm(preterm):
    if isinstance(preterm, PAtom):
        return preterm.symbol.label
    if isinstance(preterm, PLam):
        return f"(\\{hint_of(preterm.variable)}. {render_preterm(preterm.body)})"
    head, args = spine(preterm)
    return f"{render_preterm(head)}({', '.join(render_preterm(a) for a in args)})"


def sorted_terms(terms: Sequence):
    return sorted(terms, key=Term.order_key)
