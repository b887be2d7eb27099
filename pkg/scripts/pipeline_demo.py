"""Run the reduction on a named graph and save the bundle.

    python3 scripts/pipeline_demo.py --graph k4 --a 3 --b 2 --out runs/k4
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from tricount import graphs, reduction


@dataclass
class Config:
    graph: str = "k4"
    mode: str = "test"
    a: int = 3
    b: int = 2
    nprime: int = reduction.NPRIME_DEFAULT
    out: str = "runs/pipeline"


def run(cfg: Config) -> dict:
    G = graphs.NAMED_GRAPHS[cfg.graph]()
    t = time.time()
    a, b = (cfg.a, cfg.b) if cfg.mode == "test" else (None, None)
    B = reduction.forward(G, cfg.mode, a, b, cfg.nprime, check_all=True)
    rep = reduction._jsonable(B.report())
    rep["independent_sets"] = graphs.independent_set_histogram(G)
    rep["elapsed"] = round(time.time() - t, 2)
    B.save(cfg.out)
    return rep


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for k, v in asdict(Config()).items():
        ap.add_argument("--" + k, type=type(v), default=v)
    cfg = Config(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg), "report": reduction._jsonable(run(cfg))}, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
