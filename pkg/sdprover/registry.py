#!/usr/bin/env python3
"""
Named prover configurations used by the corpus runner and the ablation summary.
"""

from collections import OrderedDict

# Option overrides on top of ProverOptions defaults, grouped the way runs are compared
PROVER_CONFIGS = OrderedDict([
    ("default", {
        "group": "default",
        "name": "default",
        "description": "Improved safeness, usable rules, subterm criterion then reduction pairs",
        "options": {},
    }),
    ("legacy_safe", {
        "group": "ablation",
        "name": "legacy_safe",
        "description": "Safe subterms restricted to the stable subterms of the left-hand side",
        "options": {"legacy_safe": True},
    }),
    ("no_usable", {
        "group": "ablation",
        "name": "no_usable",
        "description": "Reduction pairs must orient every rule of the system",
        "options": {"use_usable_rules": False},
    }),
    ("subterm_only", {
        "group": "technique",
        "name": "subterm_only",
        "description": "Only the subterm criterion",
        "options": {"technique": "subterm"},
    }),
    ("redpair_only", {
        "group": "technique",
        "name": "redpair_only",
        "description": "Only argument filterings with the path order",
        "options": {"technique": "redpair"},
    }),
    ("refined_graph", {
        "group": "technique",
        "name": "refined_graph",
        "description": "Dependency graph arcs pruned on constructor clashes",
        "options": {"refine_graph": True},
    }),
])

CONFIG_GROUPS = ("default", "ablation", "technique")


def get_configs_by_group(group_name):
    """
    Get all configurations for a specific group.

    Args:
        group_name: Name of the configuration group, or "all"

    Returns:
        OrderedDict of configurations belonging to the group
    """
    result = OrderedDict()
    for key, config in PROVER_CONFIGS.items():
        if group_name == "all" or config["group"] == group_name:
            result[key] = config
    return result


def options_for(config_key):
    """ProverOptions for a registry entry."""
    from .prover import ProverOptions

    return ProverOptions(**PROVER_CONFIGS[config_key]["options"])


def cli_flags(config_key):
    """The prove command-line flags equivalent to a registry entry."""
    options = PROVER_CONFIGS[config_key]["options"]
    flags = []
    if options.get("legacy_safe"):
        flags.append("--legacy-safe")
    if options.get("use_usable_rules") is False:
        flags.append("--no-usable")
    if "technique" in options:
        flags += ["--technique", options["technique"]]
    if options.get("refine_graph"):
        flags.append("--refine-graph")
    return flags
