#!/usr/bin/env python3
"""
Exception hierarchy shared by every stage of the prover.

Library code raises these; the prover turns budget problems into an UNKNOWN
verdict and the command line turns input problems into exit code 2.
"""


class ProverError(Exception):
    """Base class of all errors raised by sdprover."""


class HrsTypeError(ProverError):
    """A preterm or term is ill-typed."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            where = ".".join(str(i) for i in position) or "ε"
            message = f"{message} (at position {where})"
        super().__init__(message)


class PositionError(ProverError):
    """A position does not exist in the term it is applied to."""


class ProblemSyntaxError(ProverError):
    """The problem file cannot be tokenized or parsed."""

    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(message)

    def __str__(self):
        return f"{self.line}:{self.column}: {self.args[0]}"


class ProblemError(ProblemSyntaxError):
    """The problem file parses but declares an invalid rewrite system."""

    def __init__(self, message, line=0, column=0, label=None):
        self.label = label
        if label is not None:
            message = f"rule {label}: {message}"
        super().__init__(message, line, column)


class UnsupportedRuleError(ProverError):
    """A left-hand side is not a higher-order pattern."""

    def __init__(self, message, label=None, line=0, column=0):
        self.label = label
        self.line = line
        self.column = column
        if label is not None:
            message = f"rule {label}: {message}"
        super().__init__(message)


class FilteringError(ProverError):
    """An argument filtering keeps or collapses positions its symbol does not allow."""


class BudgetExceeded(ProverError):
    """A bounded search ran out of its budget before reaching a conclusion."""


class ProofTimeout(BudgetExceeded):
    """The wall-clock deadline of a proof attempt passed."""
