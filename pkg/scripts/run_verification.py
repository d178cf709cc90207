#!/usr/bin/env python3
"""Run every exhaustive verification check over a range of census sizes.

Prints one line per (size, check) and optionally writes the full JSON
reports.  Exit status 1 if anything fails.

    python scripts/run_verification.py --max-n 8 --report-dir reports/
"""

import argparse
import json
import sys
from pathlib import Path

from latcensus.census import census_records, verify_antichain_bound, verify_gap, verify_top_three
from latcensus.congruence import verify_congruence_spectrum


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--report-dir", type=Path, default=None)
    args = parser.parse_args()

    checks = [
        ("top-three", lambda n, recs: verify_top_three(n, records=recs)),
        ("gap", lambda n, recs: verify_gap(n, records=recs)),
        ("antichain-bound", lambda n, recs: verify_antichain_bound(n, records=recs)),
        ("congruence-spectrum", lambda n, recs: verify_congruence_spectrum(n)),
    ]
    all_ok = True
    reports = []
    for n in range(5, args.max_n + 1):
        records = census_records(n)
        for name, run in checks:
            report = run(n, records)
            reports.append(report)
            status = "ok" if report.passed else "FAIL"
            print(f"n={n}  {name:20s} {status}")
            for line in report.failures:
                print(f"    {line}")
            all_ok &= report.passed

    if args.report_dir is not None:
        args.report_dir.mkdir(parents=True, exist_ok=True)
        for report in reports:
            d = report.to_json_dict()
            path = args.report_dir / f"{d['check']}-n{d['n']}.json"
            path.write_text(json.dumps(d, indent=2) + "\n")
        print(f"wrote {len(reports)} reports to {args.report_dir}")

    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
