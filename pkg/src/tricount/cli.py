"""Command-line interface.  JSON on stdout, diagnostics on stderr, exit 1 on failure."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import counting, gadgets, graphs, reduction, svg
from .errors import TricountError
from .geometry import PolygonWithHoles
from .redblue import Arrangement, arrangement_from_json, build_arrangement, validate_arrangement

log = logging.getLogger("tricount")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    out: str | None = None
    mode: str = "test"
    a: int | None = None
    b: int | None = None
    nprime: int = reduction.NPRIME_DEFAULT
    engine: str = "auto"
    jobs: int = 1
    seed: int = 0
    verbose: int = 0

    def __post_init__(self):
        if self.mode == "sound" and (self.a is not None or self.b is not None):
            raise ValueError("--a/--b overrides are only valid in test mode")


class UsageError(Exception):
    pass


def _read_json(path):
    if path is None:
        raise UsageError("input file required")
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if not text.strip():
        raise UsageError("empty input")
    return json.loads(text)


def _emit(obj, cfg: RunConfig, name: str | None = None):
    text = json.dumps(obj, sort_keys=True)
    if cfg.out and name is not None:
        Path(cfg.out).write_text(text + "\n")
    print(text)


def _load_graph(spec):
    if spec in graphs.NAMED_GRAPHS:
        return graphs.NAMED_GRAPHS[spec]()
    return graphs.validate_graph(_read_json(spec))


def _load_arrangement(spec) -> Arrangement:
    if spec == "x":
        return gadgets.x_arrangement()
    if spec in graphs.NAMED_GRAPHS:
        return build_arrangement(graphs.straight_line_draw(graphs.NAMED_GRAPHS[spec]()))
    obj = _read_json(spec)
    if isinstance(obj, dict) and "graph" in obj:  # a drawing
        return build_arrangement(graphs.GridDrawing.from_json(obj))
    return validate_arrangement(arrangement_from_json(obj).segments)


def _params(cfg: RunConfig, n: int) -> gadgets.Params:
    if cfg.mode == "sound":
        return gadgets.choose_params(n, "sound")
    a = cfg.a if cfg.a is not None else 3
    b = cfg.b if cfg.b is not None else 2
    if not a >= b >= 1:
        raise UsageError("test mode needs a >= b >= 1")
    return gadgets.Params(a, b, n)


# ---------------------------------------------------------------- commands


def cmd_embed(cfg: RunConfig):
    d = graphs.straight_line_draw(_load_graph(cfg.input))
    _emit(d.to_json(), cfg, "drawing")
    return 0


def cmd_arrange(cfg: RunConfig):
    spec = cfg.input
    if spec in graphs.NAMED_GRAPHS:
        A = build_arrangement(graphs.straight_line_draw(graphs.NAMED_GRAPHS[spec]()))
    else:
        A = build_arrangement(graphs.GridDrawing.from_json(_read_json(spec)))
    _emit(A.to_json(), cfg, "arrangement")
    log.info("%d red, %d blue segments", len(A.reds), len(A.blues))
    return 0


def cmd_polygonize(cfg: RunConfig, scale=None, width_factor=None, svg_path=None):
    A = _load_arrangement(cfg.input)
    p = _params(cfg, len(A.reds))
    wf = Fraction(width_factor) if width_factor is not None else gadgets.WIDTH_FACTOR
    if scale is not None:
        PA = gadgets.audit_instance(A, p, int(scale), wf, strict=False)
    else:
        PA = gadgets.polygonize(A, p, width_factor=wf)
    rep = {k: (len(v) if isinstance(v, list) else v) for k, v in PA.report.items()}
    ok = gadgets.properties_ok(PA.report)
    out = {"polygon": PA.polygon.to_json(), "summary": PA.summary(), "properties": rep, "ok": ok}
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(PA.polygon.to_json()) + "\n")
    if svg_path:
        Path(svg_path).write_text(svg.render_polygon(PA.polygon))
    print(json.dumps({k: v for k, v in out.items() if k != "polygon"} if cfg.out else out, sort_keys=True))
    if not ok:
        log.error("property violations: %s", rep)
    return 0 if ok else 1


def _load_polygon(spec) -> PolygonWithHoles:
    obj = _read_json(spec)
    if isinstance(obj, list):
        return PolygonWithHoles.simple([tuple(p) for p in obj])
    if "polygon" in obj:
        obj = obj["polygon"]
    return PolygonWithHoles.from_json(obj).validate()


def cmd_count(cfg: RunConfig, listing=False):
    P = _load_polygon(cfg.input)
    engine = cfg.engine
    if engine == "auto":
        engine = "holes" if P.holes else "simple"
    t = time.time()
    out = {"algorithm": engine}
    if engine == "simple":
        if P.holes:
            raise UsageError("the simple engine needs a polygon without holes")
        c = counting.count_simple(P)
    elif engine == "holes":
        st = counting.HoleCountStats()
        c = counting.count_with_holes(P, stats=st, jobs=cfg.jobs)
        out["combinations"] = st.combinations
    elif engine == "brute":
        if listing:
            c, found = counting.enumerate_bruteforce(P, listing=True)
            out["triangulations"] = [[list(d) for d in diags] for diags in found]
        else:
            c = counting.enumerate_bruteforce(P)
    else:
        raise UsageError("unknown engine %r" % engine)
    out["count"] = str(c)
    out["elapsed"] = round(time.time() - t, 6)
    if listing:
        out["polygon"] = P.to_json()
    _emit(out, cfg, "count")
    return 0


def cmd_decode(cfg: RunConfig, count=None, constants=None, synthetic=False, independent_sets=False):
    if synthetic:
        rng = random.Random(cfg.seed)
        c, hist, noise = reduction.synthetic_instance(rng)
        N = reduction.encode(hist, c, noise)
        res = reduction.decode(N, c)
        ok = res.histogram == hist and res.residual == noise
        _emit({"N": str(N), "constants": c.to_json(), "decoded": res.to_json(), "roundtrip": ok}, cfg, "decode")
        return 0 if ok else 1
    if count is None or constants is None:
        raise UsageError("decode needs COUNT and a constants file")
    c = counting.CountingConstants.from_json(_read_json(constants))
    res = reduction.decode(int(count), c)
    out = res.to_json()
    if independent_sets:
        out["independent_sets"] = {str(k): str(v) for k, v in reduction.decode_independent_sets(res).items()}
    _emit(out, cfg, "decode")
    return 0


def cmd_pipeline(cfg: RunConfig):
    G = _load_graph(cfg.input)
    d = graphs.straight_line_draw(G)
    A = build_arrangement(d)
    n = len(A.reds)
    if n < cfg.nprime:
        M, Q = reduction.small_case(A, cfg.nprime)
        out = {"path": "small-case", "n": n, "max_noncrossing": M, "lens_polygon": Q.to_json(),
               "count": str(counting.count_simple(Q)), "independent_sets": str(M)}
        _emit(out, cfg, "pipeline")
        return 0
    a = cfg.a if cfg.mode == "test" and cfg.a is not None else (3 if cfg.mode == "test" else None)
    b = cfg.b if cfg.mode == "test" and cfg.b is not None else (2 if cfg.mode == "test" else None)
    bundle = reduction.forward_arrangement(A, cfg.mode, a, b, cfg.nprime, graph=G, drawing=d,
                                           check_all=cfg.mode == "test")
    out = {"path": "reduction", **reduction._jsonable(bundle.report())}
    PA = bundle.polygon
    if len(PA.polygon) <= reduction.HOLES_ENGINE_LIMIT and bundle.constants is not None:
        N = counting.count_with_holes(PA.polygon, jobs=cfg.jobs)
        res = reduction.decode(N, bundle.constants)
        out["count"] = str(N)
        out["decoded"] = res.to_json()
        out["independent_sets"] = {str(k): str(v) for k, v in reduction.decode_independent_sets(res).items()}
    else:
        out["counting"] = ("infeasible: P_A has %d vertices; component laws verified instead "
                           "(alpha, beta, gamma uniform over all gadgets)" % len(PA.polygon)
                           if bundle.constants is not None else
                           "infeasible: P_A has %d vertices and constants were not computed" % len(PA.polygon))
        out["independent_sets"] = str(graphs.count_independent_sets(G)) if G.n <= graphs.BRUTE_FORCE_CAP else None
        out["independent_sets_source"] = "direct brute force on the graph"
    if cfg.out:
        bundle.save(cfg.out)
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_render(cfg: RunConfig, index=0):
    obj = _read_json(cfg.input)
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        text = svg.render_arrangement(arrangement_from_json(obj))
    elif isinstance(obj, dict) and "triangulations" in obj:
        P = PolygonWithHoles.from_json(obj["polygon"])
        tri = obj["triangulations"][index] if obj["triangulations"] else []
        text = svg.render_polygon(P, [tuple(d) for d in tri])
    else:
        if isinstance(obj, dict) and "polygon" in obj:
            obj = obj["polygon"]
        text = svg.render_polygon(PolygonWithHoles.from_json(obj))
    if cfg.out:
        Path(cfg.out).write_text(text)
        print(json.dumps({"svg": cfg.out, "bytes": len(text)}))
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["sound", "test"], default="test")
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--nprime", type=int, default=reduction.NPRIME_DEFAULT)
    common.add_argument("--engine", choices=["auto", "simple", "holes", "brute"], default="auto")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="tricount", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("embed", parents=[common], help="grid drawing of a cubic planar graph")
    s.add_argument("input", help="graph JSON file, '-' for stdin, or k4/prism/cube")
    s = sub.add_parser("arrange", parents=[common], help="red-blue arrangement of a drawing")
    s.add_argument("input", help="drawing JSON file or a named graph")
    s = sub.add_parser("polygonize", parents=[common], help="build P_A from an arrangement")
    s.add_argument("input", help="arrangement or drawing JSON file, a named graph, or 'x' for the X-arrangement")
    s.add_argument("--scale", type=int, help="fixed scale, no retries, convexity checks off")
    s.add_argument("--width-factor", help="tube half-width factor, e.g. 1/16")
    s.add_argument("--svg")
    s = sub.add_parser("count", parents=[common], help="count triangulations of a polygon")
    s.add_argument("input")
    s.add_argument("--list", action="store_true", help="with --engine brute, list the triangulations")
    s = sub.add_parser("decode", parents=[common], help="decode a triangulation count")
    s.add_argument("count", nargs="?")
    s.add_argument("constants", nargs="?")
    s.add_argument("--synthetic", action="store_true", help="random encode/decode roundtrip")
    s.add_argument("--independent-sets", action="store_true")
    s = sub.add_parser("pipeline", parents=[common], help="graph to P_A, counting when feasible")
    s.add_argument("input")
    s = sub.add_parser("render", parents=[common], help="SVG of an arrangement, polygon or listing")
    s.add_argument("input")
    s.add_argument("--index", type=int, default=0)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        cfg = RunConfig(args.command, getattr(args, "input", None), args.out, args.mode, args.a, args.b,
                        args.nprime, args.engine, args.jobs, args.seed, args.verbose)
        if args.command == "embed":
            return cmd_embed(cfg)
        if args.command == "arrange":
            return cmd_arrange(cfg)
        if args.command == "polygonize":
            return cmd_polygonize(cfg, args.scale, args.width_factor, args.svg)
        if args.command == "count":
            return cmd_count(cfg, args.list)
        if args.command == "decode":
            return cmd_decode(cfg, args.count, args.constants, args.synthetic, args.independent_sets)
        if args.command == "pipeline":
            return cmd_pipeline(cfg)
        if args.command == "render":
            return cmd_render(cfg, args.index)
    except (TricountError, UsageError, ValueError, KeyError, OSError) as e:
        print("error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    sys.exit(main())
