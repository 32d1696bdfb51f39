#!/usr/bin/env python3
"""
Proof certificates: what the prover found, in a form that can be written out,
read back and replayed against the rewrite system.

Terms are stored in the surface syntax of problem files, symbols by label
(``div#`` for a marked symbol) and positions as lists of argument indices.
"""

from typing import Literal, Optional

import orjson
from pydantic import BaseModel, Field

from .terms import format_position

Verdict = Literal["terminating", "unknown", "input-error"]
Technique = Literal["subterm", "redpair", "open"]


class PairRecord(BaseModel):
    id: int
    lhs: str
    rhs: str
    origin: str


class PfpRecord(BaseModel):
    ok: bool
    legacy: bool = False
    violations: list[str] = Field(default_factory=list)
    safe_sets: dict[str, list[str]] = Field(default_factory=dict)


class GraphRecord(BaseModel):
    nodes: list[int] = Field(default_factory=list)
    arcs: list[tuple[int, int]] = Field(default_factory=list)
    components: list[list[int]] = Field(default_factory=list)


class UsableRecord(BaseModel):
    rules: list[str]
    reason: Literal["full", "pattern-condition-failed", "all-rules"] = "full"


class ComponentProof(BaseModel):
    """How one recursion component was handled.

    spawned lists the ids of the components made of the pairs that were not
    removed; they are proved later in the same certificate.
    """

    id: int
    pairs: list[int]
    technique: Technique
    projection: dict[str, list[int]] = Field(default_factory=dict)
    filtering: dict[str, str] = Field(default_factory=dict)
    precedence: list[tuple[str, str]] = Field(default_factory=list)
    status: dict[str, Literal["lex", "mul"]] = Field(default_factory=dict)
    usable: Optional[UsableRecord] = None
    strict: list[int] = Field(default_factory=list)
    spawned: list[int] = Field(default_factory=list)
    reason: Optional[str] = None


class ProofCertificate(BaseModel):
    verdict: Verdict
    problem: Optional[str] = None
    options: dict = Field(default_factory=dict)
    pfp: Optional[PfpRecord] = None
    pairs: list[PairRecord] = Field(default_factory=list)
    graph: Optional[GraphRecord] = None
    proofs: list[ComponentProof] = Field(default_factory=list)
    diagnostics: list[str] = Field(default_factory=list)

    @property
    def open_components(self):
        return [proof for proof in self.proofs if proof.technique == "open"]


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _text_lines(cert):
    lines = [cert.verdict.upper()]
    if cert.problem:
        lines.append(f"problem: {cert.problem}")
    lines += cert.diagnostics
    if cert.pfp is not None:
        variant = "legacy safeness" if cert.pfp.legacy else "improved safeness"
        lines.append(f"pfp: {'ok' if cert.pfp.ok else 'failed'} ({variant})")
        lines += [f"  {violation}" for violation in cert.pfp.violations]
    if cert.pfp is None or not cert.pfp.ok:
        return lines
    lines.append(f"static dependency pairs: {len(cert.pairs)}")
    width = len(str(len(cert.pairs)))
    for pair in cert.pairs:
        lines.append(f"  {pair.id:>{width}}: {pair.lhs} -> {pair.rhs}  [rule {pair.origin}]")
    if cert.graph is not None:
        lines.append(f"dependency graph: {len(cert.graph.nodes)} nodes, {len(cert.graph.arcs)} arcs, "
                     f"{len(cert.graph.components)} recursion components")
    for proof in cert.proofs:
        members = "{" + ", ".join(str(i) for i in proof.pairs) + "}"
        if proof.technique == "subterm":
            projection = ", ".join(f"pi({symbol}) = {format_position(tuple(position))}"
                                   for symbol, position in sorted(proof.projection.items()))
            lines.append(f"component {proof.id} {members}: subterm criterion, {projection}")
            if proof.spawned:
                strict = ", ".join(str(i) for i in proof.strict)
                lines.append(f"  strictly decreasing: {{{strict}}}")
                lines.append(f"  remaining components: {', '.join(str(i) for i in proof.spawned)}")
        elif proof.technique == "redpair":
            strict = ", ".join(str(i) for i in proof.strict)
            lines.append(f"component {proof.id} {members}: reduction pair, strictly oriented {{{strict}}}")
            if proof.usable is not None:
                lines.append(f"  weak rules: {{{', '.join(proof.usable.rules)}}} ({proof.usable.reason})")
            filtering = "; ".join(f"{s} = {e}" for s, e in sorted(proof.filtering.items()))
            lines.append(f"  filtering: {filtering or 'identity'}")
            precedence = ", ".join(f"{f} > {g}" for f, g in proof.precedence)
            lines.append(f"  precedence: {precedence or 'empty'}")
            multiset = [symbol for symbol, status in sorted(proof.status.items()) if status == "mul"]
            if multiset:
                lines.append(f"  multiset status: {', '.join(multiset)}")
            if proof.spawned:
                lines.append(f"  remaining components: {', '.join(str(i) for i in proof.spawned)}")
        else:
            lines.append(f"component {proof.id} {members}: open ({proof.reason})")
    return lines


def emit_certificate(cert, fmt="text"):
    """The certificate as bytes, either plain text or JSON with sorted keys."""
    if fmt == "json":
        return orjson.dumps(cert.model_dump(mode="json"),
                            option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE)
    if fmt != "text":
        raise ValueError(f"unknown certificate format {fmt!r}")
    return ("\n".join(_text_lines(cert)) + "\n").encode("utf-8")


def load_certificate(data):
    return ProofCertificate.model_validate(orjson.loads(data))


def certificate_schema():
    return ProofCertificate.model_json_schema()
