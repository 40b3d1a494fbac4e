"""Sweep the counterexample search over a grid of parameters; one JSONL file per cell."""

from __future__ import annotations

import argparse
from pathlib import Path

from listbrooks.search import PROBLEM1, PROBLEM2, search_counterexample


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=Path("search_out"))
    ap.add_argument("--deltas", type=int, nargs="+", default=[4, 5])
    ap.add_argument("--max-n", type=int, default=14)
    ap.add_argument("--budget", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for delta in args.deltas:
        cells = [(PROBLEM1, k) for k in range(2, delta)] + [(PROBLEM2, delta)]
        for problem, list_size in cells:
            report = search_counterexample(delta, args.max_n, list_size, problem, args.budget, args.seed)
            path = args.out_dir / f"{problem}_delta{delta}_k{list_size}.jsonl"
            path.write_text(report.jsonl())
            s = report.summary()
            print(f"{path.name}: sampled={s['sampled']} found={s['found']} ({s['seconds']}s)")


if __name__ == "__main__":
    main()
