"""Grid-based comparison of two networks.

Both networks are overlaid with the same deterministic flat-topped
hexagonal grid (edge length roughly 200 m, comparable to an H3
resolution-9 tiling).  Seven structural metrics are measured per cell
and the resulting per-cell series are compared with the Euclidean
distance

    d(p, q) = sqrt(sum_i (q_i - p_i)^2)

and Chatterjee's rank coefficient

    xi(p, q) = 1 - 3 * sum_i |r_{i+1} - r_i| / (n^2 - 1)

where the pairs are ordered by ascending p and r_i is the rank of q_i.
xi is about 0 for independent series and approaches 1 when q is a
(noisy) function of p; unlike a correlation it is not symmetric.  Ties
are broken by stable cell order, so results are reproducible.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import pearsonr, rankdata, spearmanr
from shapely.geometry import LineString, Polygon, box

from .continuity import ContinuityParams, Stroke, detect_strokes
from .model import Network

METRICS = (
    "avg_node_degree",
    "coordinate_count",
    "edge_count",
    "total_length",
    "stroke_count",
    "max_stroke_length",
    "total_stroke_length",
)

DEFAULT_GRID_EDGE = 200.0


class GridMismatchError(ValueError):
    """Two metric series were built on different grids."""


class CrsMismatchError(ValueError):
    """The networks do not appear to share a coordinate reference system."""


@dataclass
class HexCell:
    id: int
    center: tuple[float, float]
    polygon: Polygon


@dataclass
class HexGrid:
    edge_length: float
    extent: tuple[float, float, float, float]
    cells: list[HexCell]

    @property
    def token(self) -> tuple:
        """Value identity used to reject cross-grid comparisons."""
        return (round(self.edge_length, 9), tuple(round(v, 9) for v in self.extent), len(self.cells))

    def assign(self, points: np.ndarray) -> np.ndarray:
        """Cell id per point: nearest hexagon center, ties to the lower id.

        A hexagonal tiling is the Voronoi diagram of its centers, so for
        interior points this is exact containment; boundary points go to
        the lower id deterministically.
        """
        centers = np.array([c.center for c in self.cells])
        tree = cKDTree(centers)
        _, idx = tree.query(points)
        return np.array([self.cells[i].id for i in idx])


def _hexagon(cx: float, cy: float, s: float) -> Polygon:
    angles = np.arange(6) * (math.pi / 3.0)
    return Polygon(zip(cx + s * np.cos(angles), cy + s * np.sin(angles)))


def tile_extent(
    extent: tuple[float, float, float, float], edge_length: float = DEFAULT_GRID_EDGE
) -> HexGrid:
    """Deterministic flat-topped hexagon tiling anchored at the lower-left."""
    minx, miny, maxx, maxy = extent
    if not all(map(math.isfinite, extent)) or maxx <= minx or maxy <= miny:
        raise ValueError(f"degenerate extent {extent}")
    s = float(edge_length)
    dx = 1.5 * s
    dy = math.sqrt(3.0) * s
    ncols = int(math.ceil((maxx - minx) / dx)) + 1
    nrows = int(math.ceil((maxy - miny) / dy)) + 1
    window = box(minx, miny, maxx, maxy)
    cells = []
    for i in range(-1, ncols + 1):
        cx = minx + i * dx
        offset = 0.5 * dy if i % 2 else 0.0
        for j in range(-1, nrows + 1):
            cy = miny + j * dy + offset
            hexagon = _hexagon(cx, cy, s)
            clipped = hexagon.intersection(window)
            if clipped.is_empty or clipped.area <= 0:
                continue
            cells.append((i, j, (cx, cy), clipped))
    cells.sort(key=lambda c: (c[0], c[1]))
    return HexGrid(
        edge_length=s,
        extent=(float(minx), float(miny), float(maxx), float(maxy)),
        cells=[
            HexCell(id=k, center=center, polygon=poly)
            for k, (_, _, center, poly) in enumerate(cells)
        ],
    )


@dataclass
class MetricSeries:
    metric: str
    values: dict[int, float]
    grid_token: tuple = ()

    def vector(self, cell_ids) -> np.ndarray:
        return np.array([self.values.get(cid, 0.0) for cid in cell_ids], dtype=float)


def cell_metrics(
    network: Network, strokes: list[Stroke], grid: HexGrid
) -> dict[str, MetricSeries]:
    """All seven per-cell series for one network."""
    series = {m: {} for m in METRICS}
    cell_ids = [c.id for c in grid.cells]
    for m in METRICS:
        for cid in cell_ids:
            series[m][cid] = 0.0

    if network.edges:
        node_ids = sorted(network.nodes)
        node_pts = np.array([network.nodes[n].coordinate for n in node_ids])
        node_cells = grid.assign(node_pts)
        degree_sum: dict[int, float] = {}
        degree_n: dict[int, int] = {}
        for nid, cid in zip(node_ids, node_cells):
            degree_sum[cid] = degree_sum.get(cid, 0.0) + network.degree(nid)
            degree_n[cid] = degree_n.get(cid, 0) + 1
        for cid, count in degree_n.items():
            series["avg_node_degree"][cid] = degree_sum[cid] / count

        all_coords = np.vstack([network.edges[e].coords for e in sorted(network.edges)])
        for cid in grid.assign(all_coords):
            series["coordinate_count"][cid] += 1.0

        lines = [network.edge_line(e) for e in sorted(network.edges)]
        for cell in grid.cells:
            poly = cell.polygon
            for line in lines:
                if line.intersects(poly):
                    series["edge_count"][cell.id] += 1.0
                    series["total_length"][cell.id] += line.intersection(poly).length

    if strokes:
        stroke_lines = [LineString(s.coords) for s in strokes]
        for cell in grid.cells:
            lengths = [
                s.length
                for s, line in zip(strokes, stroke_lines)
                if line.intersects(cell.polygon)
            ]
            if lengths:
                series["stroke_count"][cell.id] = float(len(lengths))
                series["max_stroke_length"][cell.id] = max(lengths)
                series["total_stroke_length"][cell.id] = sum(lengths)

    return {
        m: MetricSeries(metric=m, values=series[m], grid_token=grid.token)
        for m in METRICS
    }


def _aligned(p: MetricSeries, q: MetricSeries) -> tuple[list, np.ndarray, np.ndarray]:
    if p.grid_token and q.grid_token and p.grid_token != q.grid_token:
        raise GridMismatchError(f"{p.grid_token} vs {q.grid_token}")
    cell_ids = sorted(set(p.values) | set(q.values))
    return cell_ids, p.vector(cell_ids), q.vector(cell_ids)


def euclidean_distance(p: MetricSeries, q: MetricSeries) -> float:
    _, pv, qv = _aligned(p, q)
    return float(np.sqrt(np.sum((qv - pv) ** 2)))


def chatterjee_xi(p: MetricSeries, q: MetricSeries) -> float:
    """Chatterjee's rank coefficient (see module docstring); pairs are
    ordered by ascending ``p`` and the ranks are taken over ``q``."""
    cell_ids, pv, qv = _aligned(p, q)
    n = len(cell_ids)
    if n < 2:
        raise ValueError("need at least two cells")
    order = np.argsort(pv, kind="stable")
    ranks = rankdata(qv[order], method="ordinal")
    return float(1.0 - 3.0 * np.abs(np.diff(ranks)).sum() / (n**2 - 1))


def rank_correlations(p: MetricSeries, q: MetricSeries) -> tuple[float, float]:
    _, pv, qv = _aligned(p, q)
    if np.ptp(pv) == 0 or np.ptp(qv) == 0:
        return float("nan"), float("nan")
    return float(pearsonr(pv, qv)[0]), float(spearmanr(pv, qv)[0])


@dataclass
class ComparisonResult:
    grid: HexGrid
    rows: dict[str, dict[str, float]] = field(default_factory=dict)
    reference_series: dict[str, MetricSeries] = field(default_factory=dict)
    candidate_series: dict[str, MetricSeries] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"grid_cells": len(self.grid.cells), "metrics": self.rows}


def compare_networks(
    reference: Network,
    candidate: Network,
    grid_edge: float = DEFAULT_GRID_EDGE,
    stats: tuple[str, ...] = (),
    continuity: ContinuityParams | None = None,
) -> ComparisonResult:
    """Seven-metric grid comparison of two networks over their joint extent."""
    from .model import _looks_geographic

    ref_arrays = [e.coords for e in reference.edges.values()]
    cand_arrays = [e.coords for e in candidate.edges.values()]
    if ref_arrays and cand_arrays:
        if _looks_geographic(ref_arrays) != _looks_geographic(cand_arrays):
            raise CrsMismatchError(
                "one network looks geographic, the other projected; reproject first"
            )

    bounds = [net.bounds for net in (reference, candidate) if net.edges]
    if not bounds:
        raise ValueError("both networks are empty")
    minx = min(b[0] for b in bounds)
    miny = min(b[1] for b in bounds)
    maxx = max(b[2] for b in bounds)
    maxy = max(b[3] for b in bounds)
    if maxx <= minx:
        maxx = minx + grid_edge
    if maxy <= miny:
        maxy = miny + grid_edge
    grid = tile_extent((minx, miny, maxx, maxy), grid_edge)

    continuity = continuity or ContinuityParams()
    result = ComparisonResult(grid=grid)
    result.reference_series = cell_metrics(reference, detect_strokes(reference, continuity), grid)
    result.candidate_series = cell_metrics(candidate, detect_strokes(candidate, continuity), grid)
    for m in METRICS:
        p = result.reference_series[m]
        q = result.candidate_series[m]
        row = {
            "d": euclidean_distance(p, q),
            "xi": chatterjee_xi(p, q),
        }
        if stats:
            pear, spear = rank_correlations(p, q)
            if "pearson" in stats:
                row["pearson"] = pear
            if "spearman" in stats:
                row["spearman"] = spear
        result.rows[m] = row
    return result


def write_series_csv(path, series_by_network: dict[str, dict[str, MetricSeries]]) -> None:
    """Per-cell CSV: network, cell_id, metric, value."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["network", "cell_id", "metric", "value"])
        for network_name in sorted(series_by_network):
            per_metric = series_by_network[network_name]
            for metric in METRICS:
                s = per_metric[metric]
                for cid in sorted(s.values):
                    writer.writerow([network_name, cid, metric, repr(s.values[cid])])
