#!/usr/bin/env python3
"""Run the verification suite and write the report.

Examples:
    python3 scripts/run_audit.py
    python3 scripts/run_audit.py --d 3,7,13/4 --n-max 2000 --format json --out report.json
    python3 scripts/run_audit.py --config suite.json
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ostro.harness import (  # noqa: E402
    SuiteConfig,
    config_from_json,
    render_text,
    render_tsv,
    run_suite,
)
from ostro.qfield import parse_rat  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="JSON file with SuiteConfig fields")
    ap.add_argument("--d", help="comma-separated radicands overriding the suite")
    ap.add_argument("--n-max", type=int, default=None)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--format", choices=("text", "json", "tsv"), default="text")
    ap.add_argument("--out", help="write the report here instead of stdout")
    args = ap.parse_args()

    cfg = SuiteConfig()
    if args.config:
        cfg = config_from_json(json.loads(Path(args.config).read_text()))
    overrides = {}
    if args.d:
        overrides["d_list"] = tuple(parse_rat(s) for s in args.d.split(","))
    if args.n_max is not None:
        overrides["n_max"] = args.n_max
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        import dataclasses

        cfg = dataclasses.replace(cfg, **overrides)

    t0 = time.perf_counter()
    report = run_suite(cfg)
    wall = time.perf_counter() - t0

    if args.format == "json":
        text = json.dumps(report, indent=2)
    elif args.format == "tsv":
        text = render_tsv(report)
    else:
        text = render_text(report)

    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"wrote {args.out} ({wall:.1f}s)")
    else:
        print(text)

    return 1 if report["summary"]["corrected_failures"] else 0


if __name__ == "__main__":
    raise SystemExit(main())
