#!/usr/bin/env python3
"""Run every registered scenario and print a pass/fail table.

Usage:
  python3 scripts/verify_all.py [name ...]

Exit status is 0 when every scenario passes, 1 otherwise.
"""
import sys

from minkprod.config import Settings
from minkprod.scenarios import SCENARIOS, run_scenario


def verify(names):
    failures = []
    tol = Settings.from_env().tol

    print("=" * 60)
    print("Minkowski product scenarios")
    print("=" * 60)

    for name in names or list(SCENARIOS):
        result = run_scenario(name, tol=tol)
        status = "PASS" if result.passed else "FAIL"
        print(f"{name:<28} {status}")
        for check in result.checks:
            if not check.ok:
                failures.append(f"{name}: {check.label} measured {check.measured}, expected {check.expected}")

    print("\n" + "=" * 60)
    if failures:
        print("FAILURES:")
        for line in failures:
            print(f"  - {line}")
        return 1
    print("All scenarios passed.")
    return 0


if __name__ == "__main__":
    sys.exit(verify(sys.argv[1:]))
