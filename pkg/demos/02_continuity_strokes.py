"""
Grouping edges into continuity strokes.

A stroke is a maximal chain of edges that reads as one continuous street:
at every junction two edges join when the angle between them is close to
straight.  Whole edges are never split, so each edge belongs to exactly
one stroke.
"""
import numpy as np

from streetmorph import build_network, detect_strokes
from streetmorph.continuity import ContinuityParams

# a main street with a gentle bend, a side street, and a sharp turn-off
lines = [
    [(0, 0), (100, 0)],
    [(100, 0), (200, 8)],      # 4.6 degrees off straight: same stroke
    [(100, 0), (100, 90)],     # perpendicular side street
    [(200, 8), (230, 80)],     # sharp 63-degree turn: new stroke
]
network = build_network([np.asarray(l, dtype=float) for l in lines])

strokes = detect_strokes(network)
print(f"{len(network.edges)} edges -> {len(strokes)} strokes")
for s in strokes:
    print(f"  stroke {s.id}: edges {s.edge_ids}, length {s.length:.1f}")

total = sum(s.length for s in strokes)
print(f"stroke lengths add up: {total:.1f} == {network.total_length:.1f}")

# a stricter straightness requirement breaks the bend apart
strict = detect_strokes(network, ContinuityParams(angle_threshold=176.0))
print(f"at 176 degrees: {len(strict)} strokes "
      f"(longest {max(s.length for s in strict):.1f})")
