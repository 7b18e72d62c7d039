"""Planar face extraction for noded line networks.

Faces are traced from the edge rotation system (half-edge walk), so every
face knows exactly which network edges form its boundary ring.  Dangling
edges and bridges never end up in a ring, matching the usual behaviour of
line-work polygonizers.  Edges that cross without sharing a node (bridges
and tunnels) simply do not interact, which preserves non-planar crossings.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from shapely.geometry import Point, Polygon
from shapely.validation import make_valid

from .geometry import Coords, point_segment_distance, ring_signed_area
from .model import Network


class UnnodedTouchError(ValueError):
    """An edge endpoint lies on another edge's interior without a shared node."""

    def __init__(self, edge_a: int, edge_b: int):
        self.edge_a = edge_a
        self.edge_b = edge_b
        super().__init__(
            f"endpoint of edge {edge_a} touches the interior of edge {edge_b} "
            "without a node; run the topology fix first"
        )


@dataclass
class FacePolygon:
    """One bounded face of the network's planar arrangement."""

    id: int
    ring: Coords  # closed ring, last vertex not repeated
    area: float
    perimeter: float
    boundary_edges: list[int]
    neighbors: set[int] = field(default_factory=set)
    _polygon: Polygon | None = None

    @property
    def polygon(self) -> Polygon:
        if self._polygon is None:
            poly = Polygon(np.vstack([self.ring, self.ring[:1]]))
            if not poly.is_valid:
                fixed = make_valid(poly)
                polys = [g for g in getattr(fixed, "geoms", [fixed]) if g.geom_type == "Polygon"]
                if polys:
                    poly = max(polys, key=lambda g: g.area)
            self._polygon = poly
        return self._polygon

    @property
    def centroid(self) -> tuple[float, float]:
        from .geometry import ring_centroid

        return ring_centroid(self.ring)


def find_unnoded_touches(network: Network, epsilon: float | None = None) -> list[tuple[int, int]]:
    """Pairs (touching_edge, touched_edge) where an endpoint sits on an interior."""
    eps = network.snap_epsilon if epsilon is None else epsilon
    eps = max(eps, 1e-12)
    touches = []
    if not network.edges:
        return touches
    node_items = sorted(network.nodes.items())
    points = [Point(n.coordinate) for _, n in node_items]
    tree = network.spatial_index
    ids = network.tree_edge_ids
    hit_pts, hit_edges = tree.query(points, predicate="dwithin", distance=eps * 2)
    for pi, ti in zip(hit_pts.tolist(), hit_edges.tolist()):
        nid, node = node_items[pi]
        eid = ids[ti]
        edge = network.edges[eid]
        if edge.start_node == nid or edge.end_node == nid:
            continue
        p = np.array(node.coordinate)
        best = min(
            point_segment_distance(p, a, b)[0]
            for a, b in zip(edge.coords[:-1], edge.coords[1:])
        )
        if best <= eps:
            incident = network.incidence[nid][0][0]
            touches.append((incident, eid))
    return sorted(set(touches))


def _pseudoangle(dx: float, dy: float) -> float:
    # Monotonic in atan2 without the trig; range [0, 4).
    denom = abs(dx) + abs(dy)
    if denom == 0.0:
        return 0.0
    p = dx / denom
    return 1.0 - p if dy >= 0 else 3.0 + p


def _prune_dangles(network: Network) -> set[int]:
    """Edge ids that can take part in a cycle (iteratively strip degree-1 ends)."""
    deg = {nid: len(inc) for nid, inc in network.incidence.items()}
    alive = set(network.edges)
    stack = [nid for nid, d in deg.items() if d == 1]
    while stack:
        nid = stack.pop()
        if deg[nid] != 1:
            continue
        eid = next(
            (e for e, _ in network.incidence[nid] if e in alive),
            None,
        )
        if eid is None:
            continue
        alive.discard(eid)
        edge = network.edges[eid]
        for other in (edge.start_node, edge.end_node):
            deg[other] -= 1
            if deg[other] == 1:
                stack.append(other)
    return alive


def polygonize(network: Network, validate: bool = True) -> list[FacePolygon]:
    """All bounded faces of the network, with boundary edges and neighbors.

    Requires a network where every endpoint-on-interior touch is noded
    (the first topology requirement); with ``validate`` the precondition is
    checked and a violation raises :class:`UnnodedTouchError` naming both
    edges.  Pure interior-interior crossings are allowed and ignored.
    """
    if validate:
        touches = find_unnoded_touches(network)
        if touches:
            raise UnnodedTouchError(*touches[0])

    alive = _prune_dangles(network)
    if not alive:
        return []

    # outgoing half-edges per node, CCW-sorted: (edge id, forward?)
    outgoing: dict[int, list[tuple[int, bool]]] = {}
    for eid in sorted(alive):
        edge = network.edges[eid]
        outgoing.setdefault(edge.start_node, []).append((eid, True))
        outgoing.setdefault(edge.end_node, []).append((eid, False))

    def away_vector(eid: int, forward: bool) -> tuple[float, float]:
        c = network.edges[eid].coords
        if forward:
            return c[1][0] - c[0][0], c[1][1] - c[0][1]
        return c[-2][0] - c[-1][0], c[-2][1] - c[-1][1]

    order: dict[tuple[int, bool], int] = {}
    for nid, hes in outgoing.items():
        hes.sort(key=lambda h: (_pseudoangle(*away_vector(*h)), h[0], h[1]))
        for pos, h in enumerate(hes):
            order[h] = pos

    def half_edges_of(eid):
        return (eid, True), (eid, False)

    def tail(h):
        eid, fwd = h
        e = network.edges[eid]
        return e.start_node if fwd else e.end_node

    def head(h):
        eid, fwd = h
        e = network.edges[eid]
        return e.end_node if fwd else e.start_node

    def next_half_edge(h):
        twin = (h[0], not h[1])
        at = head(h)
        ring = outgoing[at]
        pos = order[twin]
        return ring[(pos - 1) % len(ring)]

    visited: set[tuple[int, bool]] = set()
    faces: list[FacePolygon] = []
    for eid in sorted(alive):
        for h0 in half_edges_of(eid):
            if h0 in visited:
                continue
            walk = []
            h = h0
            while h not in visited:
                visited.add(h)
                walk.append(h)
                h = next_half_edge(h)
            faces.extend(_faces_from_walk(network, walk, len(faces)))

    edge_faces: dict[int, list[int]] = {}
    for face in faces:
        for beid in face.boundary_edges:
            edge_faces.setdefault(beid, []).append(face.id)
    by_id = {f.id: f for f in faces}
    for beid, fids in edge_faces.items():
        if len(fids) > 1:
            for fid in fids:
                by_id[fid].neighbors.update(x for x in fids if x != fid)
    return faces


def _faces_from_walk(network: Network, walk, next_id: int) -> list[FacePolygon]:
    # Bridges show up in a walk once per direction; strip them and stitch
    # the leftover runs back into closed sub-cycles.  Positive (CCW) area
    # sub-cycles are the bounded faces.
    seen_dirs: dict[int, set[bool]] = {}
    for eid, fwd in walk:
        seen_dirs.setdefault(eid, set()).add(fwd)
    kept = [h for h in walk if len(seen_dirs[h[0]]) == 1]
    if not kept:
        return []

    def tail(h):
        e = network.edges[h[0]]
        return e.start_node if h[1] else e.end_node

    def head(h):
        e = network.edges[h[0]]
        return e.end_node if h[1] else e.start_node

    # split the cyclic sequence at discontinuities
    n = len(kept)
    breaks = [i for i in range(n) if head(kept[i - 1]) != tail(kept[i])]
    if not breaks:
        runs = [kept]
    else:
        runs = []
        for bi, start in enumerate(breaks):
            stop = breaks[(bi + 1) % len(breaks)]
            if stop > start:
                runs.append(kept[start:stop])
            else:
                runs.append(kept[start:] + kept[:stop])

    faces = []
    for run in runs:
        if not run or head(run[-1]) != tail(run[0]):
            continue
        pieces = []
        perimeter = 0.0
        for eid, fwd in run:
            e = network.edges[eid]
            coords = e.coords if fwd else e.coords[::-1]
            perimeter += e.length
            pieces.append(coords[:-1])
        ring = np.vstack(pieces)
        area = ring_signed_area(ring)
        if area <= 1e-9:
            continue
        faces.append(
            FacePolygon(
                id=next_id + len(faces),
                ring=ring,
                area=float(area),
                perimeter=float(perimeter),
                boundary_edges=[eid for eid, _ in run],
            )
        )
    return faces
