"""CLI behavior: report lines, JSON output, determinism, error codes,
grid CSV and figure rendering."""

import json

import pytest

from multifan.cli import main
from multifan.fixtures import example_document


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name in ("p2", "p2-triangle", "star", "star-polytope", "ex24",
                 "square", "p112", "segment"):
        p = tmp_path / f"{name}.json"
        p.write_text(example_document(name))
        paths[name] = str(p)
    return paths


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degree_star(files, capsys):
    code, out, _ = run(capsys, "degree", files["star"])
    assert code == 0 and out == "degree: 2\n"


def test_complete_ex24(files, capsys):
    code, out, _ = run(capsys, "complete", files["ex24"])
    assert code == 0
    assert "precomplete: true" in out
    assert "degree: 1" in out
    assert "complete: false" in out


def test_validate_reports_issue(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "dim": 2, "rays": [[1, 0], [2, 0]],
        "cones": [{"set": [1, 2], "w_plus": 1, "w_minus": 0}]}))
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 0
    assert "valid: false" in out
    assert "issue_0" in out


def test_hvector_with_explicit_direction(files, capsys):
    code, out, _ = run(capsys, "hvector", files["star"], "--generic-v", "3,1")
    assert code == 0 and out == "h: 2,1,2\n"


def test_evector_tygenus_signature(files, capsys):
    assert run(capsys, "evector", files["star"]) == (0, "e: 2,5,5\n", "")
    assert run(capsys, "tygenus", files["star"]) == (0, "ty: 2,-1,2\n", "")
    assert run(capsys, "signature", files["star"]) == (0, "signature: 3\n", "")


def test_dh_and_wn(files, capsys):
    code, out, _ = run(capsys, "dh", files["star-polytope"], "--point", "0,0")
    assert code == 0 and out == "dh: 2\n"
    code, out, _ = run(capsys, "wn", files["star-polytope"], "--point", "5/9,13/9")
    assert code == 0 and out == "wn: 1\n"


def test_dh_shift_flag(files, capsys):
    code, out, _ = run(capsys, "dh", files["square"], "--point", "1,1",
                       "--shift", "plus")
    assert code == 0 and out == "dh: 1\n"
    code, out, _ = run(capsys, "dh", files["square"], "--point", "1,1",
                       "--shift", "minus")
    assert code == 0 and out == "dh: 0\n"


def test_dh_on_wall_errors(files, capsys):
    code, _, err = run(capsys, "dh", files["square"], "--point", "1,1/2")
    assert code == 3 and err.startswith("error:")


def test_wallcheck(files, capsys):
    code, out, _ = run(capsys, "wallcheck", files["square"],
                       "--start", "1/2,1/2", "--end", "3/2,1/2", "--wall", "1")
    assert code == 0
    assert "wallcheck: true" in out and "lhs: 1" in out and "rhs: 1" in out


def test_counting_commands(files, capsys):
    assert run(capsys, "count", files["p2-triangle"])[1] == "count: 10\n"
    assert run(capsys, "interior", files["p2-triangle"])[1] == "interior: 1\n"
    assert run(capsys, "toddcount", files["p112"])[1] == "toddcount: 9\n"
    assert run(capsys, "kpcount", files["p112"])[1] == "kpcount: 9\n"
    assert run(capsys, "volume", files["p112"])[1] == "volume: 4\n"


def test_ehrhart_report(files, capsys):
    code, out, _ = run(capsys, "ehrhart", files["p2-triangle"])
    assert code == 0
    assert "ehrhart: 1,9/2,9/2" in out
    assert "constant: 1" in out
    assert "leading: 9/2" in out


def test_reciprocity_and_charcheck(files, capsys):
    assert run(capsys, "reciprocity", files["square"])[1] == "reciprocity: true\n"
    assert run(capsys, "charcheck", files["p112"])[1] == "charcheck: true\n"


def test_count_requires_polytope(files, capsys):
    code, _, err = run(capsys, "count", files["p2"])
    assert code == 2 and "support" in err


def test_decompose(files, capsys):
    code, out, _ = run(capsys, "decompose", files["star"], "--ray", "7,3")
    assert code == 0
    assert "pieces: 5" in out and "all_complete: true" in out


def test_decompose_json_embeds_documents(files, capsys):
    code, out, _ = run(capsys, "decompose", files["p2"], "--ray", "2,1",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["pieces"] == 3 and len(doc["documents"]) == 3


def test_json_format(files, capsys):
    code, out, _ = run(capsys, "ehrhart", files["square"], "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ehrhart"] == ["1", "2", "1"]


def test_seed_determinism(files, capsys):
    a = run(capsys, "charcheck", files["p112"], "--seed", "7")
    b = run(capsys, "charcheck", files["p112"], "--seed", "7")
    assert a == b


def test_grid_stdout_and_files(files, tmp_path, capsys):
    code, out, _ = run(capsys, "grid", files["square"], "--step", "1/2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,dh"
    rows = {tuple(line.split(",")) for line in lines[1:]}
    assert ("1/2", "1/2", "1") in rows
    assert ("-1", "-1", "0") in rows
    # on-wall points are skipped under exact evaluation
    assert not any(r[0] == "1" and r[1] == "1/2" for r in rows)

    csv_path = tmp_path / "g.csv"
    png_path = tmp_path / "g.png"
    code, out, _ = run(capsys, "grid", files["star-polytope"], "--step", "1/2",
                       "--out", str(csv_path), "--plot", str(png_path))
    assert code == 0
    assert "figure:" in out
    assert csv_path.exists() and png_path.stat().st_size > 0


def test_grid_star_matches_winding(files, capsys):
    from fractions import Fraction
    from multifan import example, wn_eval
    code, out, _ = run(capsys, "grid", files["star-polytope"], "--step", "1/4")
    assert code == 0
    star = example("star-polytope")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert len(rows) >= 10
    seen = {2: 0, 1: 0, 0: 0}
    for x, y, val in rows[:: max(1, len(rows) // 40)]:
        u = (Fraction(x), Fraction(y))
        assert int(val) == wn_eval(star, u)
        if int(val) in seen:
            seen[int(val)] += 1
    assert all(seen.values())   # central 2s, ring 1s and outside 0s all occur


def test_grid_shift_keeps_wall_points(files, capsys):
    code, out, _ = run(capsys, "grid", files["square"], "--step", "1",
                       "--shift", "plus")
    assert code == 0
    rows = {tuple(line.split(",")) for line in out.strip().splitlines()[1:]}
    assert ("1", "1", "1") in rows and ("0", "0", "1") in rows


def test_grid_rejects_incomplete(tmp_path, capsys):
    doc = {"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
           "cones": [{"set": [1, 2], "w_plus": 1, "w_minus": 0},
                     {"set": [1, 3], "w_plus": 1, "w_minus": 0}],
           "support": ["1", "1", "1"]}
    p = tmp_path / "incomplete.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "grid", str(p), "--step", "1/2")
    assert code == 3 and "complete" in err


def test_example_round_trip(files, capsys):
    code, out, _ = run(capsys, "example", "p112")
    assert code == 0 and out == example_document("p112")


def test_example_listing_and_unknown(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0 and "star" in out
    code, _, err = run(capsys, "example", "nope")
    assert code == 5 and "available" in err


def test_unreadable_file(capsys):
    code, _, err = run(capsys, "degree", "/nonexistent/x.json")
    assert code == 2 and err.startswith("error:")
