import json
import math

import pytest

from tricount.cli import RunConfig, main
from tricount.counting import lens_polygon


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_runconfig_rejects_sound_overrides():
    with pytest.raises(ValueError):
        RunConfig("pipeline", mode="sound", a=3)


def test_count_convex_hexagon(tmp_path, capsys):
    hexagon = [[round(100 * math.cos(math.pi * k / 3)), round(100 * math.sin(math.pi * k / 3))] for k in range(6)]
    f = write(tmp_path, "hex.json", hexagon)
    for engine in ("simple", "brute"):
        code, out, _ = run(capsys, "count", f, "--engine", engine)
        res = json.loads(out)
        assert code == 0 and res["count"] == "14" and res["algorithm"] == engine


def test_count_lens(tmp_path, capsys):
    f = write(tmp_path, "lens.json", lens_polygon(5).to_json())
    code, out, _ = run(capsys, "count", f)
    assert code == 0 and json.loads(out)["count"] == "5"


def test_square_ring_engines_agree(tmp_path, capsys):
    ring = {"outer": [[0, 0], [12, 0], [12, 12], [0, 12]], "holes": [[[4, 4], [4, 8], [8, 8], [8, 4]]]}
    f = write(tmp_path, "ring.json", ring)
    got = {}
    for engine in ("holes", "brute"):
        code, out, _ = run(capsys, "count", f, "--engine", engine)
        assert code == 0
        got[engine] = json.loads(out)["count"]
    assert got["holes"] == got["brute"] and int(got["holes"]) > 0


def test_listing_and_render(tmp_path, capsys):
    f = write(tmp_path, "sq.json", [[0, 0], [4, 0], [5, 3], [2, 6], [-1, 3]])
    code, out, _ = run(capsys, "count", f, "--engine", "brute", "--list")
    assert code == 0
    listing = json.loads(out)
    assert len(listing["triangulations"]) == 5
    lf = write(tmp_path, "listing.json", listing)
    svg_path = tmp_path / "t.svg"
    code, out, _ = run(capsys, "render", lf, "--index", "2", "--out", str(svg_path))
    assert code == 0 and svg_path.read_text().startswith("<svg")


def test_embed_and_errors(tmp_path, capsys):
    code, out, _ = run(capsys, "embed", "k4")
    assert code == 0 and json.loads(out)["graph"]["n"] == 4
    k5 = {"n": 5, "edges": [[i, j] for i in range(5) for j in range(i + 1, 5)]}
    code, _, err = run(capsys, "embed", write(tmp_path, "k5.json", k5))
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "embed", write(tmp_path, "empty.json", ""))
    assert code == 1


def test_arrange_counts(tmp_path, capsys):
    code, out, _ = run(capsys, "arrange", "k4")
    assert code == 0 and len(json.loads(out)) == 48
    code, out, _ = run(capsys, "arrange", "prism")
    assert code == 0 and len(json.loads(out)) == 72
    code, _, _ = run(capsys, "arrange", write(tmp_path, "bad.json", {"graph": {"n": 1}}))
    assert code == 1


def test_arrangement_render(tmp_path, capsys):
    code, out, _ = run(capsys, "arrange", "k4")
    f = write(tmp_path, "arr.json", out)
    code, out, _ = run(capsys, "render", f)
    assert code == 0 and out.count("<line") == 48 and "#d62728" in out and "#1f77b4" in out


def test_polygonize_x_and_svg(tmp_path, capsys):
    svg_path = tmp_path / "p.svg"
    code, out, _ = run(capsys, "polygonize", "x", "--a", "3", "--b", "2", "--svg", str(svg_path))
    res = json.loads(out)
    assert code == 0 and res["ok"] and res["summary"]["holes"] == 2
    assert svg_path.read_text().startswith("<svg")


def test_polygonize_forced_bad_scale_fails(capsys):
    # tubes half the crossing spacing: the audit reports cross-gadget visibility
    code, out, err = run(capsys, "polygonize", "x", "--a", "1", "--b", "1", "--scale", "1048576",
                         "--width-factor", "1/2")
    res = json.loads(out)
    assert code == 1 and not res["ok"] and res["properties"]["P3"] > 0


def test_decode_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "decode", "--synthetic", "--seed", "3")
    assert code == 0 and json.loads(out)["roundtrip"]
    c = {"n": "2", "a": "1", "b": "1", "alpha": "2", "beta": "3", "gamma": "5"}
    f = write(tmp_path, "c.json", c)
    code, out, _ = run(capsys, "decode", "0", f)
    assert code == 0 and set(json.loads(out)["histogram"].values()) == {"0"}
    code, _, _ = run(capsys, "decode", "7", write(tmp_path, "bad.json", {"n": "2"}))
    assert code == 1
    code, _, _ = run(capsys, "decode", "7", write(tmp_path, "junk.json", "{not json"))
    assert code == 1


def test_pipeline_small_case(capsys):
    code, out, _ = run(capsys, "pipeline", "k4", "--nprime", "100")
    res = json.loads(out)
    assert code == 0 and res["path"] == "small-case" and res["count"] == "5"


def test_pipeline_sound_rejects_overrides(capsys):
    code, _, err = run(capsys, "pipeline", "k4", "--mode", "sound", "--a", "5")
    assert code == 1 and "test mode" in err


def test_pipeline_prism_sound_mode(tmp_path, capsys):
    # about half a million vertices: the structural audit runs, counting is flagged infeasible
    code, out, _ = run(capsys, "pipeline", "prism", "--mode", "sound", "--out", str(tmp_path / "b"))
    res = json.loads(out)
    assert code == 0 and res["path"] == "reduction"
    assert (res["a"], res["b"], res["n"]) == (3888, 72, 36)
    assert res["properties"]["P1"] == 0 and res["properties"]["visibility_checked"] is False
    assert res["polygon"]["vertices"] > 10 ** 5
    assert res["counting"].startswith("infeasible")
    assert any("constants skipped" in n for n in res["notes"])
    assert res["independent_sets"] == "13"
    assert (tmp_path / "b" / "polygon.json").exists()
