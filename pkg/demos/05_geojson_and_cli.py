"""
Round-tripping GeoJSON and driving the command line.

Networks are read and written as GeoJSON FeatureCollections of
LineStrings; edge statuses (original / extended / new) travel in the
feature properties.  Everything the library does is also reachable
through the `streetmorph` command.

(A toy network with a single face is too small to derive a detection
threshold from, so the CLI warns on stderr and falls back to 3.5.)
"""
import json
import tempfile
from pathlib import Path

import numpy as np

from streetmorph import build_network, load_network, write_network
from streetmorph.cli import main

workdir = Path(tempfile.mkdtemp())
raw = workdir / "raw.geojson"
simplified = workdir / "simplified.geojson"

lines = [
    [(-50, 0), (0, 0)],
    [(0, 0), (20, 5), (480, 5), (500, 0)],
    [(0, 0), (20, -5), (480, -5), (500, 0)],
    [(500, 0), (550, 0)],
]
network = build_network([np.asarray(l, dtype=float) for l in lines])
write_network(raw, network, crs="EPSG:32633")
print("wrote", raw)

# the files round-trip: load gives back the same geometry
again = load_network(raw)
print("reloaded edges:", len(again.edges), "(crs preserved)")

# the same simplification as demo 04, but through the CLI
code = main([
    "simplify", "-i", str(raw), "-o", str(simplified),
    "--report", str(workdir / "report.json"),
])
print("cli exit code:", code)

report = json.loads((workdir / "report.json").read_text())
print("report:", {k: report[k] for k in ("edges_before", "edges_after", "threshold")})

features = json.loads(simplified.read_text())["features"]
for f in features:
    print(" ", f["properties"]["status"], "edge with",
          len(f["geometry"]["coordinates"]), "points")

# per-edge stroke membership and the face artifact table, as CSV
main(["strokes", "-i", str(raw), "-o", str(workdir / "strokes.csv")])
main(["artifacts", "-i", str(raw), "-o", str(workdir / "faces.csv")])
print((workdir / "faces.csv").read_text().strip())
