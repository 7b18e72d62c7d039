"""
Scoring a simplification against a hand-drawn target.

Both networks are overlaid with the same hexagonal grid and seven
structural metrics are measured per cell: node degrees, coordinate and
edge counts, summed length, and three stroke figures.  Per-cell series
are then compared with a Euclidean distance (0 = identical) and
Chatterjee's rank coefficient (towards 1 = candidate tracks reference).
"""
import numpy as np

from streetmorph import SimplifyParams, build_network, compare_networks, simplify

carriageway = build_network([np.asarray(l, dtype=float) for l in [
    [(-50, 0), (0, 0)],
    [(0, 0), (20, 5), (480, 5), (500, 0)],
    [(0, 0), (20, -5), (480, -5), (500, 0)],
    [(500, 0), (550, 0)],
]])
target = build_network([np.asarray([(-50, 0), (0, 0), (500, 0), (550, 0)], dtype=float)])
simplified, _ = simplify(carriageway, SimplifyParams())

for label, candidate in [("raw input", carriageway), ("simplified", simplified)]:
    result = compare_networks(target, candidate, grid_edge=50.0, stats=("spearman",))
    print(f"{label} vs target ({len(result.grid.cells)} cells):")
    for metric, row in result.rows.items():
        extras = "".join(f"  {k}={v:.3f}" for k, v in row.items() if k not in ("d", "xi"))
        print(f"  {metric:>20}: d={row['d']:8.2f}  xi={row['xi']:+.3f}{extras}")
    print()
