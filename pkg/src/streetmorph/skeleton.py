"""Centerline skeletons from Voronoi diagrams.

To replace an elongated artifact polygon with a centerline, its boundary
is split into arcs at the connection nodes and each arc (plus any
retained internal line) is densified into sample points.  Voronoi ridges
that separate samples of *different* source arcs and lie fully inside the
polygon approximate the medial axis between them.  The ridge graph is
pruned to a shortest-path subtree spanning the connection nodes, chains
are flattened, and vertices closer than a metre to the straight line are
collapsed.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np
import shapely
from networkx.algorithms.approximation import steiner_tree
from scipy.spatial import Voronoi, cKDTree
from shapely.geometry import LineString, Point, Polygon
from shapely.ops import substring

from .geometry import densify

SIMPLIFY_TOLERANCE = 1.0
CONTAINMENT_BUFFER = 1e-6


class SkeletonError(RuntimeError):
    """The polygon could not be skeletonized (degenerate or too concave)."""


@dataclass
class SkeletonParams:
    segmentation_density: float = 1.0

    def __post_init__(self):
        if self.segmentation_density <= 0:
            raise ValueError("segmentation_density must be positive")


def _boundary_sources(polygon: Polygon, connection_nodes: list[np.ndarray]):
    """Split the polygon boundary into arcs between connection nodes."""
    sources = []
    for ring in [polygon.exterior, *polygon.interiors]:
        line = LineString(ring.coords)
        positions = sorted(
            line.project(Point(c))
            for c in connection_nodes
            if line.distance(Point(c)) < 1e-6
        )
        if len(positions) < 2:
            sources.append(np.asarray(line.coords, dtype=float))
            continue
        for a, b in zip(positions, positions[1:]):
            if b - a > 1e-9:
                sources.append(np.asarray(substring(line, a, b).coords, dtype=float))
        # wrap-around arc from the last position back to the first
        tail = substring(line, positions[-1], line.length)
        head = substring(line, 0.0, positions[0])
        coords = list(tail.coords) + list(head.coords)[1:]
        if len(coords) >= 2 and LineString(coords).length > 1e-9:
            sources.append(np.asarray(coords, dtype=float))
    return sources


def voronoi_skeleton(
    polygon: Polygon,
    connection_nodes: list[np.ndarray],
    params: SkeletonParams | None = None,
    internal_lines: list[np.ndarray] | None = None,
    internal_groups: list[int] | None = None,
) -> list[np.ndarray]:
    """Centerline polylines spanning ``connection_nodes`` inside ``polygon``.

    ``internal_lines`` are retained geometries (through-going strokes)
    that act as additional Voronoi sources; the resulting subtree is
    connected onto each of them.  Lines that already touch each other can
    share an entry in ``internal_groups`` so they count as one source and
    receive a single connector.  Raises :class:`SkeletonError` when the
    input is degenerate or no contained skeleton exists.
    """
    params = params or SkeletonParams()
    connection_nodes = [np.asarray(c, dtype=float) for c in connection_nodes]
    if len(connection_nodes) < 2:
        raise SkeletonError("need at least two connection nodes")
    for i, a in enumerate(connection_nodes):
        for b in connection_nodes[i + 1 :]:
            if np.hypot(*(a - b)) < 1e-9:
                raise SkeletonError("coincident connection nodes")

    internal_lines = [np.asarray(l, dtype=float) for l in internal_lines or []]
    if internal_groups is None:
        internal_groups = list(range(len(internal_lines)))
    if len(internal_groups) != len(internal_lines):
        raise ValueError("internal_groups must parallel internal_lines")

    sources = _boundary_sources(polygon, connection_nodes)
    base = len(sources)
    sources.extend(internal_lines)
    group_of_source = list(range(base)) + [base + g for g in internal_groups]

    samples = []
    source_ids = []
    for sid, line in enumerate(sources):
        dense = densify(line, params.segmentation_density)
        samples.append(dense)
        source_ids.append(np.full(len(dense), group_of_source[sid]))
    points = np.vstack(samples)
    sids = np.concatenate(source_ids)
    points, keep = np.unique(points.round(9), axis=0, return_index=True)
    sids = sids[keep]
    if len(points) < 4:
        raise SkeletonError("not enough boundary samples")

    try:
        vor = Voronoi(points)
    except Exception as exc:  # qhull failures on degenerate input
        raise SkeletonError(f"voronoi construction failed: {exc}") from exc

    candidates = []
    pairs = []
    for (p, q), (v0, v1) in zip(vor.ridge_points, vor.ridge_vertices):
        if v0 < 0 or v1 < 0 or sids[p] == sids[q]:
            continue
        candidates.append(LineString([vor.vertices[v0], vor.vertices[v1]]))
        pairs.append((v0, v1))
    if not candidates:
        raise SkeletonError("no separating voronoi ridges")
    inside = shapely.covers(polygon, np.array(candidates, dtype=object))

    graph = nx.Graph()
    for (v0, v1), ok in zip(pairs, inside):
        if not ok:
            continue
        weight = float(np.hypot(*(vor.vertices[v0] - vor.vertices[v1])))
        graph.add_edge(("v", v0), ("v", v1), weight=weight)
    if graph.number_of_edges() == 0:
        raise SkeletonError("no contained voronoi ridges")

    vertex_keys = [k for k in graph.nodes if k[0] == "v"]
    vertex_coords = np.array([vor.vertices[k[1]] for k in vertex_keys])
    lookup = cKDTree(vertex_coords)
    terminals = []
    for i, c in enumerate(connection_nodes):
        _, nearest = lookup.query(c)
        key = ("c", i)
        graph.add_edge(key, vertex_keys[nearest], weight=float(np.hypot(*(c - vertex_coords[nearest]))))
        terminals.append(key)

    try:
        tree = steiner_tree(graph, terminals, weight="weight")
    except Exception as exc:
        raise SkeletonError(f"connection nodes not linkable: {exc}") from exc
    if tree.number_of_edges() == 0:
        raise SkeletonError("empty skeleton subtree")

    def coord_of(key):
        return connection_nodes[key[1]] if key[0] == "c" else vor.vertices[key[1]]

    branches = _collapse_chains(tree, coord_of)

    # hook the subtree onto each retained internal group so through-routes
    # regain a junction with the new geometry; one connector per group
    if internal_lines:
        tree_coords = np.array([coord_of(k) for k in tree.nodes])
        for gid in sorted(set(internal_groups)):
            geoms = [
                LineString(line)
                for line, g in zip(internal_lines, internal_groups)
                if g == gid
            ]
            best = None
            for geom in geoms:
                for c in tree_coords:
                    d = geom.distance(Point(c))
                    if best is None or d < best[0]:
                        best = (d, c, geom)
            d, origin, geom = best
            if d > 1e-9:
                target = geom.interpolate(geom.project(Point(origin)))
                branches.append(np.array([origin, [target.x, target.y]]))

    out = []
    for coords in branches:
        line = LineString(coords)
        simplified = line.simplify(SIMPLIFY_TOLERANCE)
        shell = polygon.buffer(CONTAINMENT_BUFFER)
        if shapely.covers(shell, simplified):
            out.append(np.asarray(simplified.coords, dtype=float))
        elif shapely.covers(shell, line):
            out.append(np.asarray(line.coords, dtype=float))
        else:
            raise SkeletonError("skeleton branch leaves the artifact polygon")
    return out



def _collapse_chains(tree: nx.Graph, coord_of) -> list[np.ndarray]:
    """Flatten the subtree into maximal polylines between branch points."""
    branches = []
    junctions = [n for n in tree.nodes if tree.degree(n) != 2]
    if not junctions:  # a pure cycle cannot happen in a tree; degenerate chain
        junctions = [next(iter(tree.nodes))]
    visited_edges = set()
    for start in junctions:
        for neighbor in tree.neighbors(start):
            if frozenset((start, neighbor)) in visited_edges:
                continue
            chain = [start, neighbor]
            visited_edges.add(frozenset((start, neighbor)))
            while tree.degree(chain[-1]) == 2:
                nxt = next(
                    n for n in tree.neighbors(chain[-1]) if n != chain[-2]
                )
                visited_edges.add(frozenset((chain[-1], nxt)))
                chain.append(nxt)
            branches.append(np.array([coord_of(n) for n in chain]))
    return branches
