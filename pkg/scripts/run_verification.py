#!/usr/bin/env python3
"""Run verification suites and print a per-case summary.

Examples:
    python scripts/run_verification.py
    python scripts/run_verification.py --suite theorem6 --max-code 1024
    python scripts/run_verification.py --json --out reports.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from hfinterp.cli import SUITES
from hfinterp.evaluate import EvalContext
from hfinterp.verify import run_suite


def main(argv: "list[str] | None" = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=SUITES, default="all")
    ap.add_argument("--max-code", type=int, default=4096,
                    help="exhaustive pair range for the membership suite")
    ap.add_argument("--nat-cutoff", type=int, default=256)
    ap.add_argument("--set-cutoff", type=int, default=256)
    ap.add_argument("--json", action="store_true",
                    help="emit the reports as JSON instead of a summary")
    ap.add_argument("--out", default=None, help="write output to a file")
    args = ap.parse_args(argv)

    ctx = EvalContext(nat_cutoff=args.nat_cutoff, set_cutoff=args.set_cutoff)
    lines: "list[str]" = []
    t0 = time.time()
    reports = run_suite(args.suite, ctx, max_code=args.max_code)
    elapsed = time.time() - t0

    if args.json:
        text = json.dumps({"reports": [r.as_dict() for r in reports]},
                          indent=2)
    else:
        for rep in reports:
            t = rep.totals
            lines.append(f"{rep.suite}: {t['pass']} pass, {t['fail']} fail, "
                         f"{t['budget']} budget")
            for c in rep.cases:
                if c.verdict != "pass":
                    lines.append(f"  [{c.verdict}] {c.id}: "
                                 f"{c.counterexample}")
        lines.append(f"elapsed: {elapsed:.1f}s")
        text = "\n".join(lines)

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return max(r.exit_status for r in reports)


if __name__ == "__main__":
    sys.exit(main())
