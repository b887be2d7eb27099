"""alpha, beta, gamma at the sound parameters (3n^2, 2n) and the separation they give.

For each n, the gadgets are built on the X-arrangement with lens sizes of the sound
setting, the constants are counted exactly, and the ratio q(n, r) / q(n, r-1) is
compared with the 2^(2n) margin the decoder needs.
"""

import argparse
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from tricount.gadgets import choose_params, polygonize, x_arrangement
from tricount.reduction import compute_constants


@dataclass
class Config:
    ns: list = field(default_factory=lambda: [2, 4, 6])


def run(cfg: Config) -> list:
    rows = []
    for n in cfg.ns:
        t = time.time()
        p = choose_params(n)
        PA = polygonize(x_arrangement(), p)
        c = compute_constants(PA, n, check_all=True)
        ratio = Fraction(8 * c.beta * c.a ** 2, c.alpha * c.gamma * (c.a + c.b) ** 2)
        rows.append({"n": n, "a": p.a, "b": p.b, "vertices": len(PA.polygon), "scale": PA.scale,
                     "alpha_digits": len(str(c.alpha)), "beta_digits": len(str(c.beta)), "gamma": c.gamma,
                     "ratio_over_4^n": float(ratio / 4 ** n), "separated": ratio > 4 ** n,
                     "seconds": round(time.time() - t, 1)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 4, 6])
    cfg = Config(**vars(ap.parse_args()))
    for row in run(cfg):
        print(json.dumps(row, sort_keys=True))


if __name__ == "__main__":
    main()
