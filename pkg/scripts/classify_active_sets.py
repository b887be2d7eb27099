"""Group the triangulations of the X-arrangement polygon by active set.

Prints the exact count for every active set that occurs, and checks that active sets
never contain crossing segments and that each maximum set occurs q(n, r) times.
"""

import argparse
import json
from dataclasses import asdict, dataclass

from tricount.gadgets import Params, x_arrangement
from tricount.reduction import end_to_end_verify


@dataclass
class Config:
    a: int = 2
    b: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args()))
    rep = end_to_end_verify(x_arrangement(), Params(cfg.a, cfg.b))
    print(json.dumps({"config": asdict(cfg), "report": rep}, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
