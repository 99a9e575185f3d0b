#!/usr/bin/env python3
"""Run the full verification battery and summarize the outcome.

Runs every suite through the library API (same code path as `oplax verify`)
and exits nonzero if any case fails.  Intended as the one-shot desk check:

    python3 scripts/run_verification.py [--seed N] [--format text|json]
"""

import argparse
import sys
import time

from oplax.suites import ALL_SUITES


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--format", choices=("text", "json"),
                        default="text")
    args = parser.parse_args(argv)

    failures = 0
    total = 0
    for name, suite in ALL_SUITES.items():
        start = time.monotonic()
        report = suite(seed=args.seed)
        elapsed = time.monotonic() - start
        print(report.render_json() if args.format == "json"
              else report.render_text())
        print(f"# suite={name} wall_time={elapsed:.3f}s", file=sys.stderr)
        total += len(report.cases)
        failures += sum(1 for c in report.cases if not c.passed)
    verdict = "OK" if failures == 0 else "FAILED"
    print(f"# total cases={total} failures={failures} -> {verdict}",
          file=sys.stderr)
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
