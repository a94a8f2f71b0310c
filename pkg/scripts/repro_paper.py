#!/usr/bin/env python3
"""Run the bundled grid/circulant reproduction suite and print the table.

Equivalent to ``perfcolor repro paper``; exits 1 if any item fails.
"""

import sys

from perfcolor.repro import run_suite


def main() -> int:
    items = run_suite()
    width = max(len(i.name) for i in items)
    for item in items:
        mark = "PASS" if item.passed else "FAIL"
        print(f"[{mark}] {item.name.ljust(width)}  {item.detail}")
    passed = sum(i.passed for i in items)
    print(f"{passed}/{len(items)} checks passed")
    return 0 if passed == len(items) else 1


if __name__ == "__main__":
    sys.exit(main())
