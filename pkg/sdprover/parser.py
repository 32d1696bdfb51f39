#!/usr/bin/env python3
"""
Problem files.

    # comment
    type N;
    fun add : N -> N -> N;
    var X : N;
    rule add1 : add(0, Y) -> Y;

Terms are written f(t1, ..., tn), variables may be applied like symbols, and
\\x y. body abstracts over x and y with types taken from the expected type.
Arrows associate to the right.  Terms are normalized to eta-long beta-normal
form right after type checking.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from lark import Lark, Transformer, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from .errors import ProblemError, ProblemSyntaxError, UnsupportedRuleError
from .rewriting import RewriteSystem, Rule, pattern_violation
from .terms import (
    ArrowType,
    BaseType,
    PLam,
    arrow,
    decompose,
    free_variable,
    fresh_bound,
    function_symbol,
    normalize,
    papply,
    render,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: decl*

?decl: type_decl | fun_decl | var_decl | rule_decl

type_decl: "type" NAME ";"
fun_decl: "fun" NAME ":" type ";"
var_decl: "var" NAME ":" type ";"
rule_decl: "rule" NAME ":" term "->" term ";"

?type: atype
     | atype "->" type   -> arrow_type
?atype: NAME             -> base_type
      | "(" type ")"

single_term: term

?term: lambda_term | app_term
lambda_term: "\\" NAME+ "." term
app_term: NAME ("(" term ("," term)* ")")?

NAME: /[A-Za-z0-9_'][A-Za-z0-9_']*/
COMMENT: /#[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""

_LARK = Lark(GRAMMAR, start=["start", "single_term"], parser="lalr")


# ---------------------------------------------------------------------------
# Syntax trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeName:
    name: object  # lark Token


@dataclass(frozen=True)
class TypeArrow:
    domain: object
    codomain: object


@dataclass(frozen=True)
class AppNode:
    name: object
    args: tuple = ()


@dataclass(frozen=True)
class LambdaNode:
    names: tuple
    body: object


class _SyntaxBuilder(Transformer):
    def start(self, children):
        return list(children)

    def single_term(self, children):
        return children[0]

    def type_decl(self, children):
        return ("type", children[0])

    def fun_decl(self, children):
        return ("fun", children[0], children[1])

    def var_decl(self, children):
        return ("var", children[0], children[1])

    def rule_decl(self, children):
        return ("rule", children[0], children[1], children[2])

    def base_type(self, children):
        return TypeName(children[0])

    def arrow_type(self, children):
        return TypeArrow(children[0], children[1])

    def lambda_term(self, children):
        return LambdaNode(tuple(children[:-1]), children[-1])

    def app_term(self, children):
        return AppNode(children[0], tuple(children[1:]))


def _syntax_error(exc):
    if isinstance(exc, UnexpectedCharacters):
        message = f"unexpected character {exc.char!r}"
    elif isinstance(exc, UnexpectedEOF):
        message = "unexpected end of input"
    else:
        token = getattr(exc, "token", None)
        message = f"unexpected {str(token)!r}" if token is not None else "syntax error"
    return ProblemSyntaxError(message, max(exc.line, 0), max(exc.column, 0))


def _first_token(node):
    if isinstance(node, AppNode):
        return node.name
    return node.names[0]


# ---------------------------------------------------------------------------
# Elaboration
# ---------------------------------------------------------------------------

@dataclass
class Problem:
    types: dict = field(default_factory=dict)
    functions: dict = field(default_factory=dict)
    variables: dict = field(default_factory=dict)
    system: RewriteSystem = field(default_factory=RewriteSystem)

    def symbol(self, name):
        if name in self.functions:
            return self.functions[name]
        return self.variables[name]

    def term(self, text):
        """Parse and normalize a term over the declarations of this problem."""
        try:
            tree = _LARK.parse(text, start="single_term")
        except UnexpectedInput as exc:
            raise _syntax_error(exc) from exc
        node = _SyntaxBuilder().transform(tree)
        preterm, _ = _Elaborator(self).synth(node, {})
        return normalize(preterm)


class _Elaborator:
    def __init__(self, problem):
        self.problem = problem

    def type_of(self, node):
        if isinstance(node, TypeArrow):
            return ArrowType(self.type_of(node.domain), self.type_of(node.codomain))
        if str(node.name) not in self.problem.types:
            raise ProblemError(f"undeclared type {node.name}", node.name.line, node.name.column)
        return self.problem.types[str(node.name)]

    def resolve(self, token, scope):
        name = str(token)
        if name in scope:
            return scope[name]
        if name in self.problem.variables:
            return self.problem.variables[name]
        if name in self.problem.functions:
            return self.problem.functions[name]
        raise ProblemError(f"undeclared symbol {name}", token.line, token.column)

    def synth(self, node, scope):
        if isinstance(node, LambdaNode):
            token = node.names[0]
            raise ProblemError("cannot infer the binder types of this abstraction",
                               token.line, token.column)
        symbol = self.resolve(node.name, scope)
        domains, base = decompose(symbol.type)
        if len(node.args) > len(domains):
            raise ProblemError(
                f"{node.name} takes {len(domains)} arguments, {len(node.args)} given",
                node.name.line, node.name.column)
        args = [self.check(arg, ty, scope) for arg, ty in zip(node.args, domains)]
        return papply(symbol, *args), arrow(*domains[len(args):], base)

    def check(self, node, expected, scope):
        if isinstance(node, LambdaNode):
            domains, base = decompose(expected)
            if len(node.names) > len(domains):
                token = node.names[0]
                raise ProblemError(
                    f"abstraction over {len(node.names)} variables where {expected} is expected",
                    token.line, token.column)
            scope = dict(scope)
            binders = []
            for token, ty in zip(node.names, domains):
                binder = fresh_bound(ty, str(token))
                scope[str(token)] = binder
                binders.append(binder)
            body = self.check(node.body, arrow(*domains[len(binders):], base), scope)
            for binder in reversed(binders):
                body = PLam(binder, body)
            return body
        preterm, actual = self.synth(node, scope)
        if actual != expected:
            raise ProblemError(f"{node.name} has type {actual} where {expected} is expected",
                               node.name.line, node.name.column)
        return preterm


def _declare(problem, kind, token, ty=None):
    name = str(token)
    if kind == "type":
        if name in problem.types:
            raise ProblemError(f"type {name} declared twice", token.line, token.column)
        problem.types[name] = BaseType(name)
        return
    if name in problem.functions or name in problem.variables:
        raise ProblemError(f"{name} declared twice", token.line, token.column)
    if kind == "fun":
        problem.functions[name] = function_symbol(name, ty)
    else:
        problem.variables[name] = free_variable(name, ty)


def _rule(problem, elaborator, label, lhs_node, rhs_node, allow_non_patterns):
    where = _first_token(lhs_node)
    lhs_pre, ty = elaborator.synth(lhs_node, {})
    symbol = elaborator.resolve(lhs_node.name, {}) if isinstance(lhs_node, AppNode) else None
    if symbol is None or not symbol.is_function:
        raise ProblemError("the left-hand side must start with a function symbol",
                           where.line, where.column, label)
    if not isinstance(ty, BaseType):
        raise ProblemError(f"rules must have basic type, not {ty}", where.line, where.column, label)
    rhs_pre = elaborator.check(rhs_node, ty, {})
    lhs, rhs = normalize(lhs_pre), normalize(rhs_pre)
    extra = rhs.free_vars - lhs.free_vars
    if extra:
        names = ", ".join(sorted(v.label for v in extra))
        raise ProblemError(f"variables {names} occur on the right but not on the left",
                           label.line, label.column, label)
    if not allow_non_patterns:
        violation = pattern_violation(lhs)
        if violation is not None:
            raise UnsupportedRuleError(
                f"{render(violation)} is not a higher-order pattern", str(label), label.line, label.column)
    return Rule(lhs, rhs, str(label))


def load_problem(text, allow_non_patterns=False):
    """Parse a problem file into its declarations and rewrite system."""
    try:
        tree = _LARK.parse(text, start="start")
    except UnexpectedInput as exc:
        raise _syntax_error(exc) from exc
    declarations = _SyntaxBuilder().transform(tree)
    problem = Problem()
    elaborator = _Elaborator(problem)
    rules, labels = [], set()
    for decl in declarations:
        kind = decl[0]
        if kind == "rule":
            _, label, lhs_node, rhs_node = decl
            if str(label) in labels:
                raise ProblemError("duplicate rule label", label.line, label.column, str(label))
            labels.add(str(label))
            rules.append(_rule(problem, elaborator, label, lhs_node, rhs_node, allow_non_patterns))
        elif kind == "type":
            _declare(problem, kind, decl[1])
        else:
            _declare(problem, kind, decl[1], elaborator.type_of(decl[2]))
    problem.system = RewriteSystem(tuple(rules), frozenset(problem.functions.values()),
                                   frozenset(problem.types.values()))
    logger.debug("[parse] %d types, %d symbols, %d rules",
                 len(problem.types), len(problem.functions), len(rules))
    return problem


def parse_problem(text, allow_non_patterns=False):
    return load_problem(text, allow_non_patterns).system


def read_problem(path, allow_non_patterns=False):
    return load_problem(Path(path).read_text(), allow_non_patterns)
