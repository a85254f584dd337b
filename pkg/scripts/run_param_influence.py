"""Run every parameter-influence preset and write one CSV of statistics.

By default this sweeps the 13 table2_*.cfg presets against ft06 exactly as
shipped; expect an hour-scale run at 30 executions x 1000 iterations each
on one core. Use --workers to spread executions over cores.
"""

import argparse
import sys
from pathlib import Path

from antshop.harness import load_config, sweep

PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out", default="results/param_influence.csv", metavar="PATH"
    )
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument(
        "--trace-dir", default=None, metavar="DIR",
        help="also write per-execution convergence traces",
    )
    parser.add_argument(
        "--presets", nargs="*", default=None, metavar="CFG",
        help="config files to run (default: presets/table2_*.cfg)",
    )
    args = parser.parse_args()
    paths = args.presets or sorted(PRESET_DIR.glob("table2_*.cfg"))
    if not paths:
        print("no preset config files found", file=sys.stderr)
        return 1
    configs = [load_config(p) for p in paths]
    rows = sweep(configs, args.out, workers=args.workers, trace_dir=args.trace_dir)
    for row in rows:
        status = row["error"] or f"min={row['minimum']} avg={row['average']}"
        print(f"{row['label']:<12} {status}")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
