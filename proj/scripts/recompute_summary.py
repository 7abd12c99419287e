# Copyright 2026 The clutter-mpc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent cross-check of the benchmark summary statistics.

Runs a tiny benchmark through the CLI, then recomputes every summary cell
from the raw results.csv with separate code and compares against the
summary.json the harness wrote. Exits non-zero on any disagreement.
"""

import argparse
import csv
import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

TOL = 1e-9


def mean_ci(values):
    """Mean and half-width of the normal 95% interval; ci is None for n < 2."""
    n = len(values)
    if n == 0:
        return None, None
    mean = sum(values) / n
    if n < 2:
        return mean, None
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, 1.96 * math.sqrt(var) / math.sqrt(n)


def recompute_cell(rows):
    episodes = len(rows)
    successes = sum(1 for r in rows if r["success"])
    replans_mean, replans_ci = mean_ci([r["replans"] for r in rows])
    cost_mean, cost_ci = mean_ci([r["exec_cost"] for r in rows if r["success"]])
    time_mean, time_ci = mean_ci([r["elapsed_s"] for r in rows if r["success"]])
    return {
        "episodes": episodes,
        "successes": successes,
        "success_rate": successes / episodes,
        "replans_mean": replans_mean,
        "replans_ci95": replans_ci,
        "cost_mean": cost_mean,
        "cost_ci95": cost_ci,
        "time_mean": time_mean,
        "time_ci95": time_ci,
    }


def close(a, b):
    if a is None or b is None:
        return a is None and b is None
    return abs(a - b) <= TOL * max(1.0, abs(a), abs(b))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bench", required=True,
                        help="path to the cmpc binary")
    args = parser.parse_args()

    with tempfile.TemporaryDirectory(prefix="cmpc_crosscheck_") as tmp:
        out = Path(tmp) / "bench"
        cmd = [
            args.bench, "bench",
            "--scenes", "2",
            "--levels", "none,high",
            "--planners", "or,nr",
            "--seed", "3",
            "--out", str(out),
        ]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"bench failed ({proc.returncode}):\n{proc.stderr}")
            return 1

        with open(out / "results.csv", newline="") as f:
            raw = list(csv.DictReader(f))
        if not raw:
            print("results.csv is empty")
            return 1
        rows = [
            {
                "level": r["level"],
                "planner": r["planner"],
                "success": r["success"] == "1",
                "replans": int(r["replans"]),
                "exec_cost": float(r["exec_cost"]),
                "elapsed_s": float(r["elapsed_s"]),
            }
            for r in raw
        ]

        with open(out / "summary.json") as f:
            summary = json.load(f)

        failures = 0
        cells_checked = 0
        for level in sorted({r["level"] for r in rows}):
            for planner in sorted({r["planner"] for r in rows}):
                subset = [r for r in rows
                          if r["level"] == level and r["planner"] == planner]
                if not subset:
                    continue
                cells_checked += 1
                want = recompute_cell(subset)
                got = summary.get(level, {}).get(planner)
                if got is None:
                    print(f"summary is missing cell {level}/{planner}")
                    failures += 1
                    continue
                for key, expected in want.items():
                    actual = got.get(key)
                    if key in ("episodes", "successes"):
                        ok = actual == expected
                    else:
                        ok = close(actual, expected)
                    if not ok:
                        print(f"{level}/{planner}/{key}: summary has "
                              f"{actual}, recomputed {expected}")
                        failures += 1
                extra = set(got) - set(want)
                if extra:
                    print(f"{level}/{planner}: unexpected keys {sorted(extra)}")
                    failures += 1

        if failures:
            print(f"{failures} mismatches across {cells_checked} cells")
            return 1
        print(f"{cells_checked} summary cells match the raw rows "
              f"({len(rows)} episodes)")
        return 0


if __name__ == "__main__":
    sys.exit(main())
