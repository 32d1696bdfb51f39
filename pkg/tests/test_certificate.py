#!/usr/bin/env python3
"""
Certificate output: text, JSON and the schema.
"""
import orjson
import pytest

from sdprover.certificate import (
    ComponentProof,
    ProofCertificate,
    certificate_schema,
    emit_certificate,
    load_certificate,
)
from sdprover.prover import prove


@pytest.fixture(scope="module")
def ave_certificate(ave):
    return prove(ave.system)


def test_text_starts_with_verdict(ave_certificate):
    lines = emit_certificate(ave_certificate).decode("utf-8").splitlines()
    assert lines[0] == "TERMINATING"
    assert "pfp: ok (improved safeness)" in lines
    assert "static dependency pairs: 11" in lines
    assert "   7: div#(s(X), s(Y)) -> div#(sub(X, Y), s(Y))  [rule div2]" in lines
    assert "component 1 {1}: subterm criterion, pi(foldl#) = 3" in lines
    assert "  filtering: sub = [1]" in lines
    assert "  precedence: s > sub" in lines


def test_json_is_deterministic(ave):
    first = emit_certificate(prove(ave.system), "json")
    second = emit_certificate(prove(ave.system), "json")
    assert first == second
    data = orjson.loads(first)
    assert list(data) == sorted(data)
    assert data["verdict"] == "terminating"


def test_json_round_trip(ave_certificate):
    loaded = load_certificate(emit_certificate(ave_certificate, "json"))
    assert loaded == ave_certificate


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_certificate(ProofCertificate(verdict="unknown"), "yaml")


def test_schema_lists_verdicts():
    schema = certificate_schema()
    assert schema["properties"]["verdict"]["enum"] == ["terminating", "unknown", "input-error"]


def test_open_components_are_rendered():
    cert = ProofCertificate(verdict="unknown", proofs=[
        ComponentProof(id=1, pairs=[1], technique="open", reason="timeout")])
    text = emit_certificate(cert).decode("utf-8")
    assert text.startswith("UNKNOWN\n")
    assert [p.id for p in cert.open_components] == [1]




def test_text_lists_remaining_components_of_subterm_proofs(split):
    lines = emit_certificate(prove(split.system)).decode("utf-8").splitlines()
    assert "component 1 {1, 2, 3}: subterm criterion, pi(f#) = 1, pi(g#) = 1" in lines
    assert "  strictly decreasing: {1}" in lines
    assert "  remaining components: 2" in lines
