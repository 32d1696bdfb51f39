#!/usr/bin/env python3
"""
Summarize a corpus run

Input: results_<timestamp>.csv written by runner.py
Output: verdict counts and times per configuration, and the problems whose
verdict changes between a baseline configuration and each other one
"""

import argparse

import pandas as pd

from sdprover.registry import PROVER_CONFIGS

VERDICTS = ["TERMINATING", "UNKNOWN", "INPUT-ERROR", "TIMEOUT", "ERROR"]


def verdict_counts(df):
    """One row per configuration present in the run with counts and times."""
    rows = []
    for key in PROVER_CONFIGS:
        if key not in df or (df[key] == "N/A").all():
            continue
        column = df[key][df[key] != "N/A"]
        times = pd.to_numeric(df[f"{key}_time"], errors="coerce").dropna()
        row = {"Configuration": key, "Problems": len(column)}
        for verdict in VERDICTS:
            row[verdict] = int((column == verdict).sum())
        row["Total Time"] = times.sum()
        row["Median Time"] = times.median()
        rows.append(row)
    return pd.DataFrame(rows)


def verdict_changes(df, baseline, other):
    """Problems whose verdict under `other` differs from the `baseline` verdict."""
    ran = (df[baseline] != "N/A") & (df[other] != "N/A")
    changed = ran & (df[baseline] != df[other])
    return pd.DataFrame({
        "Problem": df["Problem"][changed].values,
        baseline: df[baseline][changed].values,
        other: df[other][changed].values,
    })


def summarize(csv_file, baseline="default", output_prefix=None):
    df = pd.read_csv(csv_file, dtype=str, keep_default_na=False)

    counts = verdict_counts(df)

    print("=" * 80)
    print("Prover Run Summary")
    print("=" * 80)
    print(f"\nTotal problems: {len(df)}")
    print("\n" + counts.to_string(index=False))

    changes = []
    if baseline in df and not counts.empty:
        for key in counts["Configuration"]:
            if key == baseline:
                continue
            diff = verdict_changes(df, baseline, key)
            print(f"\n{baseline} vs {key}: {len(diff)} verdict changes")
            if len(diff):
                print(diff.to_string(index=False))
            diff.insert(0, "Configuration", key)
            changes.append(diff.rename(columns={baseline: "baseline", key: "verdict"}))
    print("\n" + "=" * 80)

    if output_prefix:
        counts.to_csv(f"{output_prefix}_counts.csv", index=False)
        if changes:
            pd.concat(changes).to_csv(f"{output_prefix}_changes.csv", index=False)
        print(f"Summary saved with prefix: {output_prefix}")

    return counts, changes


def main():
    parser = argparse.ArgumentParser(description="Summarize prover verdicts from a corpus run")
    parser.add_argument("csv_file", help="results CSV written by runner.py")
    parser.add_argument("--baseline", default="default", help="Configuration the others are compared with")
    parser.add_argument("--output-prefix", help="Write <prefix>_counts.csv and <prefix>_changes.csv")
    args = parser.parse_args()
    summarize(args.csv_file, args.baseline, args.output_prefix)


if __name__ == "__main__":
    main()
