#!/usr/bin/env python3
"""Run the bundled verification suite and write report artifacts.

Usage: python scripts/run_verification.py [config.json] [out_dir]
"""

import sys

from rough_hausdorff.harness import default_config, load_config, run_suite, write_report


def main() -> int:
    cfg = load_config(sys.argv[1]) if len(sys.argv) > 1 else default_config()
    out_dir = sys.argv[2] if len(sys.argv) > 2 else "reports"
    report = run_suite(cfg)
    paths = write_report(report, out_dir)
    for row in report.rows:
        print(f"{row.verdict:>22}  {row.case_id}/{row.quantity}")
    npass = sum(1 for r in report.rows if r.verdict == "PASS")
    print(f"\n{npass} PASS of {len(report.rows)} rows "
          f"({report.metadata['runtime_seconds']}s) -> {paths['json']}")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
