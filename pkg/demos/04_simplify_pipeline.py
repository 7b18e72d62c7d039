"""
The full simplification pipeline, step by step on two classics.

First a dual carriageway: the sliver between the rails is flagged, the
redundant rail is dropped, and the street collapses to one centerline.
Then a roundabout: the ring is flagged, has no through-going street, and
is replaced by a plain crossing at its centre.
"""
import numpy as np

from streetmorph import SimplifyParams, build_network, simplify


def show(title, lines):
    network = build_network([np.asarray(l, dtype=float) for l in lines])
    out, report = simplify(network, SimplifyParams())
    print(title)
    print(f"  edges {report.edges_before} -> {report.edges_after}, "
          f"threshold {report.threshold:.2f}")
    for i, loop in enumerate(report.loops, 1):
        print(f"  loop {i}: {loop.artifacts} artifact(s) {loop.by_type or ''} "
              f"removed {loop.removed_edges} moved {loop.moved_nodes}")
    for eid in sorted(out.edges):
        coords = out.edges[eid].coords
        path = " - ".join(f"({x:.1f}, {y:.1f})" for x, y in coords)
        print(f"  edge {eid} [{out.edges[eid].status}]: {path}")
    print()


show("dual carriageway", [
    [(-50, 0), (0, 0)],
    [(0, 0), (20, 5), (480, 5), (500, 0)],
    [(0, 0), (20, -5), (480, -5), (500, 0)],
    [(500, 0), (550, 0)],
])

theta = np.linspace(0, 2 * np.pi, 33)
ring = np.column_stack([15 * np.cos(theta), 15 * np.sin(theta)])
show("roundabout", [
    ring,
    [(45, 0), (15, 0)],
    [(0, 45), (0, 15)],
    [(-45, 0), (-15, 0)],
    [(0, -45), (0, -15)],
])
