import csv
import json

import numpy as np

from conftest import net
from streetmorph.cli import main
from streetmorph.io import write_network

# already in canonical topology: no degree-2 nodes, nothing to repair,
# one sliver face with a side street hanging off the far rail
CANONICAL_STAPLE = [
    [(-200, 0), (0, 0)],
    [(0, 0), (200, 0)],
    [(0, 0), (0, 6), (100, 6)],
    [(100, 6), (200, 6), (200, 0)],
    [(200, 0), (400, 0)],
    [(100, 6), (100, 100)],
]


def staple_file(tmp_path, name="input.geojson", crs=None):
    path = tmp_path / name
    write_network(path, net(*CANONICAL_STAPLE), crs)
    return path


def test_simplify_writes_network_report_and_preserves_crs(tmp_path, capsys):
    inp = staple_file(tmp_path, crs="EPSG:32633")
    out = tmp_path / "out.geojson"
    rpt = tmp_path / "report.json"
    rc = main(
        [
            "simplify",
            "-i", str(inp),
            "-o", str(out),
            "--artifact-threshold", "3.0",
            "--report", str(rpt),
        ]
    )
    assert rc == 0
    assert capsys.readouterr().err == ""
    result = json.loads(out.read_text())
    assert result["type"] == "FeatureCollection"
    assert len(result["features"]) == 3
    assert result["crs"]["properties"]["name"] == "EPSG:32633"
    report = json.loads(rpt.read_text())
    assert report["threshold"] == 3.0
    assert report["edges_before"] == 6
    assert report["edges_after"] == 3
    assert report["unresolved"] == []


def test_simplify_defaults_to_stdout(tmp_path, capsys):
    inp = staple_file(tmp_path)
    rc = main(["simplify", "-i", str(inp), "--artifact-threshold", "3.0"])
    assert rc == 0
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["type"] == "FeatureCollection"


def test_simplify_respects_exclusion_mask(tmp_path):
    inp = staple_file(tmp_path)
    mask = tmp_path / "mask.geojson"
    mask.write_text(
        json.dumps(
            {
                "type": "FeatureCollection",
                "features": [
                    {
                        "type": "Feature",
                        "properties": {},
                        "geometry": {
                            "type": "Polygon",
                            "coordinates": [
                                [[-10, -10], [210, -10], [210, 20], [-10, 20], [-10, -10]]
                            ],
                        },
                    }
                ],
            }
        )
    )
    out = tmp_path / "out.geojson"
    rc = main(
        [
            "simplify",
            "-i", str(inp),
            "-o", str(out),
            "--artifact-threshold", "3.0",
            "--exclusion-mask", str(mask),
        ]
    )
    assert rc == 0
    result = json.loads(out.read_text())
    got = sorted(f["geometry"]["coordinates"] for f in result["features"])
    want = sorted(
        [[float(x), float(y)] for x, y in line] for line in CANONICAL_STAPLE
    )
    assert got == want


def test_evaluate_writes_summary_and_cells(tmp_path):
    a = tmp_path / "a.geojson"
    b = tmp_path / "b.geojson"
    write_network(a, net([(0, 0), (900, 0)], [(0, 0), (0, 700)]))
    write_network(b, net([(0, 0), (880, 40)], [(0, 0), (30, 700)]))
    summary = tmp_path / "summary.json"
    cells = tmp_path / "cells.csv"
    rc = main(
        [
            "evaluate",
            str(a),
            str(b),
            "-o", str(summary),
            "--cells", str(cells),
            "--stats", "pearson,spearman",
        ]
    )
    assert rc == 0
    payload = json.loads(summary.read_text())
    assert len(payload["metrics"]) == 7
    for row in payload["metrics"].values():
        assert set(row) == {"d", "xi", "pearson", "spearman"}
    with open(cells, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["network", "cell_id", "metric", "value"]
    assert {r[0] for r in rows[1:]} == {"reference", "candidate"}


def test_evaluate_rejects_mismatched_crs_names(tmp_path, capsys):
    a = tmp_path / "a.geojson"
    b = tmp_path / "b.geojson"
    write_network(a, net([(0, 0), (500, 0)]), crs="EPSG:32633")
    write_network(b, net([(0, 0), (500, 0)]), crs="EPSG:3035")
    rc = main(["evaluate", str(a), str(b)])
    assert rc == 4
    assert "error:" in capsys.readouterr().err


def test_strokes_table_assigns_every_edge(tmp_path):
    inp = tmp_path / "t.geojson"
    write_network(
        inp,
        net([(0, 0), (100, 0)], [(100, 0), (200, 0)], [(100, 0), (100, 80)]),
    )
    out = tmp_path / "strokes.csv"
    rc = main(["strokes", "-i", str(inp), "-o", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "edge_id,stroke_id,stroke_length"
    rows = [line.split(",") for line in lines[1:]]
    assert [r[0] for r in rows] == ["0", "1", "2"]
    # the two collinear halves share a stroke of length 200
    assert rows[0][1] == rows[1][1]
    assert float(rows[0][2]) == 200.0
    assert float(rows[2][2]) == 80.0


def test_artifacts_table_flags_and_types(tmp_path):
    inp = staple_file(tmp_path)
    out = tmp_path / "faces.csv"
    rc = main(
        ["artifacts", "-i", str(inp), "-o", str(out), "--artifact-threshold", "3.0"]
    )
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["face_id", "index", "is_artifact", "group_kind", "ces_type"]
    assert len(rows) == 2
    fid, index, flagged, kind, ces = rows[1]
    assert fid == "0"
    assert float(index) == np.log10(1200 * 4 * np.pi * 1200 / 412.0**2)
    assert flagged == "True"
    assert kind == "isolate"
    assert ces == "3CS"


def test_artifacts_below_threshold_stay_unflagged(tmp_path):
    inp = staple_file(tmp_path)
    out = tmp_path / "faces.csv"
    rc = main(
        ["artifacts", "-i", str(inp), "-o", str(out), "--artifact-threshold", "1.0"]
    )
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[1][2] == "False"
    assert rows[1][3] == "" and rows[1][4] == ""


def test_artifacts_warns_when_derivation_falls_back(tmp_path, capsys):
    inp = staple_file(tmp_path)
    rc = main(["artifacts", "-i", str(inp), "-o", str(tmp_path / "faces.csv")])
    assert rc == 0
    err = capsys.readouterr().err
    assert "warning: threshold derivation failed" in err


def test_missing_input_exits_2(tmp_path, capsys):
    rc = main(["simplify", "-i", str(tmp_path / "absent.geojson")])
    assert rc == 2
    assert "error: no such file" in capsys.readouterr().err


def test_geographic_input_exits_3(tmp_path, capsys):
    path = tmp_path / "degrees.geojson"
    path.write_text(
        json.dumps(
            {
                "type": "FeatureCollection",
                "features": [
                    {
                        "type": "Feature",
                        "properties": {},
                        "geometry": {
                            "type": "LineString",
                            "coordinates": [[12.49, 41.89], [12.4905, 41.8902]],
                        },
                    }
                ],
            }
        )
    )
    rc = main(["simplify", "-i", str(path)])
    assert rc == 3
    assert "reproject" in capsys.readouterr().err
