#!/usr/bin/env python3
"""Write census JSONL files for every size up to a bound.

    python scripts/build_census.py --max-n 8 --out-dir census/ --with-con
"""

import argparse
import sys
from pathlib import Path

from latcensus.census import census_jsonl, census_records
from latcensus.congruence import with_con_counts


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--out-dir", type=Path, default=Path("census"))
    parser.add_argument("--with-con", action="store_true")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(1, args.max_n + 1):
        records = census_records(n, jobs=args.jobs)
        if args.with_con:
            records = with_con_counts(records)
        path = args.out_dir / f"lattices-n{n}.jsonl"
        path.write_text(census_jsonl(records))
        print(f"n={n}: {len(records)} classes -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
