#!/usr/bin/env python3
"""
Corpus runner: proves every problem file under one or more directories with the
registered prover configurations and collects the verdicts in a CSV file.
"""

import os
import subprocess
import time
from pathlib import Path
from datetime import datetime
import sys
import argparse
import csv
from collections import OrderedDict

from sdprover.registry import CONFIG_GROUPS, PROVER_CONFIGS, cli_flags, get_configs_by_group

# prove exit codes
STATUS_BY_CODE = {0: "TERMINATING", 1: "UNKNOWN", 2: "INPUT-ERROR"}


class CorpusRunner:
    def __init__(self, output_base_dir="runs", timeout=300):
        self.output_base_dir = Path(output_base_dir)
        self.output_base_dir.mkdir(exist_ok=True)
        self.timeout = timeout
        self.timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.global_counter = 0
        self.total_problems = 0
        self.results = OrderedDict()
        self.problem_list = []

    def discover_problems(self, directories, pattern="*.hrs"):
        """Collect the problem files below the given directories."""
        self.problem_list = []
        for directory in directories:
            directory = Path(directory)
            if not directory.exists():
                print(f"Warning: Problem directory {directory} does not exist")
                continue
            self.problem_list.extend(sorted(directory.glob(f"**/{pattern}")))

        self.total_problems = len(self.problem_list)
        print(f"Discovered {self.total_problems} problems in {len(directories)} directories")
        return self.problem_list

    def run_single(self, problem_file, config_key):
        """Prove one problem with one configuration; the log keeps the certificate."""
        config = PROVER_CONFIGS[config_key]

        self.global_counter += 1
        number = str(self.global_counter).zfill(len(str(self.total_problems)))

        output_dir = self.output_base_dir / config["group"] / config["name"]
        output_dir.mkdir(parents=True, exist_ok=True)
        output_file = output_dir / f"{number}_{problem_file.stem}.log"

        cmd = [sys.executable, "-m", "sdprover.cli", str(problem_file)] + cli_flags(config_key)

        env = os.environ.copy()
        base_dir = str(Path(__file__).parent.absolute())
        if "PYTHONPATH" in env:
            env["PYTHONPATH"] = f"{base_dir}:{env['PYTHONPATH']}"
        else:
            env["PYTHONPATH"] = base_dir

        print(f"  [{self.global_counter}/{self.total_problems}] [{config_key}] Running: {problem_file.name}")

        start_time = time.time()

        try:
            with open(output_file, "w") as log_file:
                log_file.write(f"Problem Number: {number}\n")
                log_file.write(f"Problem: {problem_file}\n")
                log_file.write(f"Configuration: {config_key}\n")
                log_file.write(f"Command: {' '.join(cmd)}\n")
                log_file.write(f"Start Time: {datetime.now().isoformat()}\n")
                log_file.write("=" * 80 + "\n")
                log_file.flush()

                result = subprocess.run(
                    cmd,
                    env=env,
                    stdout=log_file,
                    stderr=subprocess.STDOUT,
                    timeout=self.timeout,
                    text=True
                )

            elapsed_time = time.time() - start_time
            status = STATUS_BY_CODE.get(result.returncode, "ERROR")
            error_msg = "" if status != "ERROR" else f"Return code: {result.returncode}"

        except subprocess.TimeoutExpired:
            elapsed_time = time.time() - start_time
            status = "TIMEOUT"
            error_msg = f"Prover exceeded {self.timeout} second timeout"

        except OSError as e:
            elapsed_time = time.time() - start_time
            status = "ERROR"
            error_msg = str(e)

        with open(output_file, "a") as log_file:
            log_file.write("\n" + "=" * 80 + "\n")
            log_file.write(f"End Time: {datetime.now().isoformat()}\n")
            log_file.write(f"Elapsed Time: {elapsed_time:.4f} seconds\n")
            log_file.write(f"Status: {status}\n")
            if error_msg:
                log_file.write(f"Error: {error_msg}\n")

        print(f"    Status: {status} ({elapsed_time:.2f}s)")
        if error_msg:
            print(f"    Error: {error_msg}")

        return {
            "number": number,
            "status": status,
            "elapsed_time": elapsed_time,
            "error_message": error_msg,
            "output_file": str(output_file)
        }

    def run_all(self, directories, config_groups):
        """Run every discovered problem with the selected configurations."""
        self.discover_problems(directories)

        if not self.problem_list:
            print("No problems found to run")
            return

        for number, problem_file in enumerate(self.problem_list, start=1):
            self.results[str(problem_file)] = {"number": number}

        selected_configs = OrderedDict()
        for group in config_groups:
            selected_configs.update(get_configs_by_group(group))

        print(f"\nRunning problems with {len(selected_configs)} configurations")
        print("=" * 60)

        for config_key, config in selected_configs.items():
            print(f"\nConfiguration: [{config_key}] {config['description']}")
            print("-" * 50)

            self.global_counter = 0

            for problem_file in self.problem_list:
                result = self.run_single(problem_file, config_key)
                self.results[str(problem_file)][config_key] = result["status"]
                self.results[str(problem_file)][f"{config_key}_time"] = result["elapsed_time"]

    def save_results_csv(self):
        """Save verdicts and times to a CSV file, one column pair per configuration."""
        csv_file = self.output_base_dir / f"results_{self.timestamp}.csv"

        with open(csv_file, "w", newline="") as f:
            header = ["Problem_Number", "Problem"]
            for config_key in PROVER_CONFIGS.keys():
                header += [config_key, f"{config_key}_time"]

            writer = csv.writer(f)
            writer.writerow(header)

            for problem, data in self.results.items():
                row = [data["number"], problem]
                for config_key in PROVER_CONFIGS.keys():
                    row.append(data.get(config_key, "N/A"))
                    elapsed = data.get(f"{config_key}_time")
                    row.append(f"{elapsed:.4f}" if elapsed is not None else "N/A")
                writer.writerow(row)

        print(f"\nResults saved to: {csv_file}")
        return csv_file

    def print_summary(self):
        """Print verdict counts per configuration."""
        print("\n" + "=" * 60)
        print("RUN SUMMARY")
        print("=" * 60)

        for config_key in PROVER_CONFIGS.keys():
            counts = OrderedDict((status, 0) for status in list(STATUS_BY_CODE.values()) + ["TIMEOUT", "ERROR"])
            total_time = 0.0

            for data in self.results.values():
                status = data.get(config_key)
                if status is None:
                    continue
                counts[status] += 1
                total_time += data[f"{config_key}_time"]

            total = sum(counts.values())
            if total > 0:
                print(f"\n{config_key}:")
                print(f"  Total: {total}")
                print(f"  Terminating: {counts['TERMINATING']} ({counts['TERMINATING']*100/total:.1f}%)")
                for status, count in counts.items():
                    if status != "TERMINATING" and count > 0:
                        print(f"  {status.capitalize()}: {count}")
                print(f"  Total Time: {total_time:.2f}s")


def main():
    parser = argparse.ArgumentParser(description="Run the termination prover over a problem corpus")
    parser.add_argument(
        "--problems",
        nargs="+",
        default=["problems"],
        help="Directories searched for .hrs problem files"
    )
    parser.add_argument(
        "--output-dir",
        default="runs",
        help="Base directory for run logs and results"
    )
    parser.add_argument(
        "--config-groups",
        nargs="+",
        choices=list(CONFIG_GROUPS) + ["all"],
        default=["default"],
        help="Configuration groups to run"
    )
    parser.add_argument(
        "--timeout",
        type=float,
        default=300,
        help="Wall-clock limit per prover invocation in seconds"
    )
    parser.add_argument(
        "--clean",
        action="store_true",
        help="Clean all generated run directories"
    )
    parser.add_argument(
        "--clean-pattern",
        default="runs*",
        help="Pattern for directories to clean (default: runs*)"
    )

    args = parser.parse_args()

    if args.clean:
        import glob
        import shutil

        print("Cleaning generated files...")
        print("=" * 60)

        dirs_to_remove = glob.glob(args.clean_pattern)

        if not dirs_to_remove:
            print(f"No directories found matching pattern: {args.clean_pattern}")
        else:
            print(f"Found {len(dirs_to_remove)} directories to remove:")
            for dir_path in sorted(dirs_to_remove):
                print(f"  - {dir_path}")

            print("\nAre you sure you want to delete these directories? (y/n)")
            response = input().strip().lower()

            if response == 'y':
                removed_count = 0
                for dir_path in dirs_to_remove:
                    try:
                        if Path(dir_path).is_dir():
                            shutil.rmtree(dir_path)
                            print(f"  ✓ Removed: {dir_path}")
                            removed_count += 1
                    except OSError as e:
                        print(f"  ✗ Error removing {dir_path}: {e}")

                print(f"\n✓ Cleanup complete! Removed {removed_count} directories.")
            else:
                print("Cleanup cancelled.")

        print("=" * 60)
        sys.exit(0)

    config_groups = ["all"] if "all" in args.config_groups else args.config_groups

    runner = CorpusRunner(output_base_dir=args.output_dir, timeout=args.timeout)

    print("Starting corpus run")
    print(f"Output directory: {args.output_dir}")
    print(f"Problem directories: {', '.join(args.problems)}")
    print(f"Configuration groups: {', '.join(config_groups)}")

    runner.run_all(args.problems, config_groups)
    runner.save_results_csv()
    runner.print_summary()


if __name__ == "__main__":
    main()
