#!/usr/bin/env python3
import pytest

from sdprover.cli import build_parser, options_from_args
from sdprover.prover import ProverOptions
from sdprover.registry import CONFIG_GROUPS, PROVER_CONFIGS, cli_flags, get_configs_by_group, options_for


def test_groups_partition_configs():
    assert list(get_configs_by_group("all")) == list(PROVER_CONFIGS)
    grouped = [key for group in CONFIG_GROUPS for key in get_configs_by_group(group)]
    assert sorted(grouped) == sorted(PROVER_CONFIGS)
    assert list(get_configs_by_group("ablation")) == ["legacy_safe", "no_usable"]
    assert get_configs_by_group("nonexistent") == {}


def test_default_config_is_prover_default():
    assert options_for("default") == ProverOptions()
    assert cli_flags("default") == []


@pytest.mark.parametrize("key", list(PROVER_CONFIGS))
def test_cli_flags_reproduce_options(key, monkeypatch):
    for name in ("SDPROVER_TIMEOUT", "SDPROVER_MAX_PROJ_LEN", "SDPROVER_FILTER_BUDGET"):
        monkeypatch.delenv(name, raising=False)
    args = build_parser().parse_args(["problem.hrs"] + cli_flags(key))
    assert options_from_args(args) == options_for(key)


def test_flags_of_technique_entries():
    assert cli_flags("subterm_only") == ["--technique", "subterm"]
    assert cli_flags("no_usable") == ["--no-usable"]
    assert cli_flags("refined_graph") == ["--refine-graph"]
