"""Run both solver pipelines over seeded random instances and summarize the traces."""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter

from listbrooks.coloring import DISTANCE3, DISTANCE4, is_proper, respects_lists
from listbrooks.instances import random_instance
from listbrooks.solver import solve_distance3, solve_distance4


def run(mode: str, deltas: list[int], seeds: int, max_n: int) -> dict:
    solve = solve_distance4 if mode == DISTANCE4 else solve_distance3
    stats: Counter[str] = Counter()
    start = time.perf_counter()
    for delta in deltas:
        for seed in range(seeds):
            n = delta + 2 + seed % (max_n - delta - 1)
            b = random_instance(delta, n, mode, seed)
            res = solve(b.graph, b.P, b.lists)
            ok = is_proper(b.graph, res.coloring) and respects_lists(res.coloring, b.lists)
            stats["instances"] += 1
            stats["failures"] += not ok
            stats["with_bad"] += res.trace.initial_bad > 0
            stats["recolorings"] += len(res.trace.recolorings)
            stats["fallback_moves"] += res.trace.fallback_moves
    return {"mode": mode, **stats, "seconds": round(time.perf_counter() - start, 2)}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deltas", type=int, nargs="+", default=[4, 5, 6])
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=60)
    args = ap.parse_args()
    for mode in (DISTANCE4, DISTANCE3):
        print(json.dumps(run(mode, args.deltas, args.seeds, args.max_n)))


if __name__ == "__main__":
    main()
