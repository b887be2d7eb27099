"""Time the hole engine against the number of holes h.

The engine enumerates one left diagonal per hole, so the work grows roughly like
(candidates per hole)^h times one O(V^3) walk DP.  Each row also cross-checks the
count against the memoized diagonal-set oracle when the polygon is small enough.
"""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from tricount.counting import HoleCountStats, count_diagonal_sets, count_with_holes
from tricount.errors import TooLarge
from tricount.fixtures import polygon_with_holes


@dataclass
class Config:
    max_holes: int = 3
    outer: int = 12
    hole_size: int = 3
    repeats: int = 3
    seed: int = 1
    oracle_cap: int = 22


def run(cfg: Config) -> list:
    rng = random.Random(cfg.seed)
    rows = []
    for h in range(cfg.max_holes + 1):
        for _ in range(cfg.repeats):
            P = polygon_with_holes(rng, cfg.outer, (cfg.hole_size,) * h, radius=60 + 20 * h, tries=20000)
            st = HoleCountStats()
            t = time.time()
            N = count_with_holes(P, stats=st)
            dt = time.time() - t
            try:
                agree = count_diagonal_sets(P, cap=cfg.oracle_cap) == N
            except TooLarge:
                agree = None
            rows.append({"holes": h, "vertices": len(P), "count": str(N), "combinations": st.combinations,
                         "seconds": round(dt, 4), "oracle_agrees": agree})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args()))
    for row in run(cfg):
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
