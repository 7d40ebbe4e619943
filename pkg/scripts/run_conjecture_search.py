#!/usr/bin/env python3
"""Sweep the distance-set collision search across label universes.

Runs the tree search once per universe, writes one JSON report per run,
and prints a summary table.  Exit status is 1 if any universe produced
a counterexample pair, 0 otherwise.

Example:
    python3 scripts/run_conjecture_search.py --max-n 5 \
        --universes "1,2,3;1,2,3,4;1/2,1,3" --out reports/
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ultragraph import SearchConfig, search_conjecture, write_counterexample_files


def _tag(universe: str) -> str:
    return universe.replace("/", "over").replace(",", "-")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=5, metavar="N")
    parser.add_argument(
        "--universes",
        default="1,2,3;1,2,3,4",
        metavar="U;U;...",
        help="semicolon-separated label universes, each a comma list of rationals",
    )
    parser.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    parser.add_argument("--samples", type=int, default=100, metavar="K")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--out", default="reports", metavar="DIR")
    args = parser.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    found_any = False
    for universe in args.universes.split(";"):
        labels = tuple(tok for tok in universe.split(",") if tok.strip())
        cfg = SearchConfig(
            n_max=args.max_n,
            universe=labels,
            mode=args.mode,
            seed=args.seed,
            jobs=args.jobs,
            samples_per_tree=args.samples,
        )
        print(f"universe {{{universe}}}:", file=sys.stderr)
        report = search_conjecture(cfg, progress=lambda m: print("  " + m, file=sys.stderr))

        path = out / f"report_{args.mode}_n{args.max_n}_{_tag(universe)}.json"
        path.write_text(report.to_json(), encoding="utf-8")
        for witness_file in write_counterexample_files(report, out):
            print(f"  wrote {witness_file}", file=sys.stderr)

        labelings = sum(r.labelings_examined for r in report.runs)
        pairs = sum(r.pairs_tested for r in report.runs)
        ces = len(report.counterexamples)
        found_any = found_any or ces > 0
        rows.append((universe, labelings, pairs, ces, path.name))

    width = max(len(r[0]) for r in rows)
    print(f"{'universe'.ljust(width)}  labelings      pairs  counterexamples  report")
    for universe, labelings, pairs, ces, name in rows:
        print(f"{universe.ljust(width)}  {labelings:9d}  {pairs:9d}  {ces:15d}  {name}")
    return 1 if found_any else 0


if __name__ == "__main__":
    raise SystemExit(main())
