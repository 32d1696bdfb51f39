#!/usr/bin/env python3
"""
prove FILE: try to show termination of the rewrite system in FILE.

Exit codes: 0 terminating, 1 unknown, 2 input error.  The certificate goes to
standard output, logging and diagnostics go to standard error.
"""

import argparse
import logging
import os
import sys
import time

from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from .certificate import ProofCertificate, emit_certificate
from .dependency_pairs import dependency_graph, emit_graph, static_dependency_pairs
from .errors import HrsTypeError, ProblemSyntaxError, UnsupportedRuleError
from .parser import read_problem
from .prover import ProverOptions, prove

logger = logging.getLogger("sdprover")

EXIT_CODES = {"terminating": 0, "unknown": 1, "input-error": 2}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="prove",
        description="Termination prover for higher-order rewrite systems (static dependency pairs)")
    parser.add_argument("file", help="Problem file (.hrs)")
    parser.add_argument("--json", action="store_true", help="Write the certificate as JSON")
    parser.add_argument("--emit-graph", metavar="FILE", help="Write the static dependency graph in DOT format")
    parser.add_argument("--legacy-safe", action="store_true",
                        help="Use the earlier, smaller notion of safe subterms")
    parser.add_argument("--no-usable", action="store_true",
                        help="Orient every rule instead of the usable rules of a component")
    parser.add_argument("--technique", choices=["subterm", "redpair", "all"], default=None,
                        help="Techniques tried on each recursion component (default: all)")
    parser.add_argument("--timeout", type=float, default=None, metavar="SECS",
                        help="Wall-clock limit for the whole proof (default: 60)")
    parser.add_argument("--max-proj-len", type=int, default=None, metavar="N",
                        help="Longest projection position tried by the subterm criterion (default: 3)")
    parser.add_argument("--filter-budget", type=int, default=None, metavar="N",
                        help="Argument filterings tried per component (default: 10000)")
    parser.add_argument("--refine-graph", action="store_true",
                        help="Drop graph arcs between terms with clashing constructors")
    parser.add_argument("--log-level", default=None,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="Logging level on stderr (default: SDPROVER_LOG_LEVEL or WARNING)")
    return parser


def setup_logging(level):
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def options_from_args(args):
    return ProverOptions.from_env(
        legacy_safe=True if args.legacy_safe else None,
        use_usable_rules=False if args.no_usable else None,
        technique=args.technique,
        timeout=args.timeout,
        max_proj_len=args.max_proj_len,
        filter_budget=args.filter_budget,
        refine_graph=True if args.refine_graph else None,
    )


def _input_error(args, line, column, message):
    diagnostic = f"{args.file}:{line}:{column}: {message}"
    print(diagnostic, file=sys.stderr)
    cert = ProofCertificate(verdict="input-error", problem=args.file, diagnostics=[diagnostic])
    sys.stdout.buffer.write(emit_certificate(cert, "json" if args.json else "text"))
    return EXIT_CODES["input-error"]


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or os.environ.get("SDPROVER_LOG_LEVEL", "WARNING").upper())

    try:
        options = options_from_args(args)
    except ValidationError as e:
        return _input_error(args, 0, 0, f"invalid options: {e.errors()[0]['msg']}")

    try:
        problem = read_problem(args.file)
    except ProblemSyntaxError as e:
        return _input_error(args, e.line, e.column, e.args[0])
    except UnsupportedRuleError as e:
        return _input_error(args, e.line, e.column, str(e))
    except HrsTypeError as e:
        return _input_error(args, 0, 0, str(e))
    except OSError as e:
        return _input_error(args, 0, 0, e.strerror or str(e))

    start_time = time.time()
    cert = prove(problem.system, options, problem=args.file)
    logger.info("[prove] %s: %s (%.2fs)", args.file, cert.verdict, time.time() - start_time)

    if args.emit_graph:
        pairs = static_dependency_pairs(problem.system, options.legacy_safe)
        graph = dependency_graph(pairs, problem.system, options.refine_graph)
        with open(args.emit_graph, "wb") as f:
            f.write(emit_graph(graph))

    sys.stdout.buffer.write(emit_certificate(cert, "json" if args.json else "text"))
    sys.stdout.flush()
    return EXIT_CODES[cert.verdict]


if __name__ == "__main__":
    sys.exit(main())
