"""Core network model: edges, derived nodes, spatial index.

A :class:`Network` is an immutable snapshot of a noded line network in a
projected, meter-unit coordinate system.  Pipeline stages never mutate a
network in place; they build a new one via :meth:`Network.from_records`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from shapely.geometry import LineString
from shapely.strtree import STRtree

from .geometry import (
    Coords,
    as_coords,
    dedupe_consecutive,
    polyline_length,
    quantize,
    segment_lengths,
)

STATUS_ORIGINAL = "original"
STATUS_EXTENDED = "extended"
STATUS_NEW = "new"

DEFAULT_SNAP_EPSILON = 1e-6


class InvalidInputError(ValueError):
    """Input geometry that cannot form a valid network (non-finite, degenerate)."""


class GeographicInputError(ValueError):
    """Input that looks like lon/lat degrees instead of projected meters."""


@dataclass
class Edge:
    """A street segment: a polyline between two network nodes."""

    id: int
    coords: Coords
    attributes: dict = field(default_factory=dict)
    status: str = STATUS_ORIGINAL
    start_node: int = -1
    end_node: int = -1

    @property
    def length(self) -> float:
        return polyline_length(self.coords)

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.start_node, self.end_node

    def reversed_coords(self) -> Coords:
        return self.coords[::-1]


@dataclass(frozen=True)
class Node:
    id: int
    coordinate: tuple[float, float]
    degree: int


class Network:
    """Noded planar line network with derived nodes and a spatial index."""

    def __init__(self, edges: dict[int, Edge], snap_epsilon: float):
        self.snap_epsilon = snap_epsilon
        self.edges: dict[int, Edge] = edges
        self._node_of_coord: dict[tuple[float, float], int] = {}
        self.nodes: dict[int, Node] = {}
        self.incidence: dict[int, list[tuple[int, int]]] = {}
        self._derive_nodes()
        self._edge_lines: dict[int, LineString] | None = None
        self._tree: STRtree | None = None
        self._tree_ids: list[int] | None = None

    # -- construction -------------------------------------------------

    def _derive_nodes(self) -> None:
        node_of = self._node_of_coord
        incidence: dict[int, list[tuple[int, int]]] = {}
        for eid in sorted(self.edges):
            edge = self.edges[eid]
            for end, vertex in ((0, edge.coords[0]), (1, edge.coords[-1])):
                key = (float(vertex[0]), float(vertex[1]))
                nid = node_of.get(key)
                if nid is None:
                    nid = len(node_of)
                    node_of[key] = nid
                    incidence[nid] = []
                incidence[nid].append((eid, end))
                if end == 0:
                    edge.start_node = nid
                else:
                    edge.end_node = nid
        self.incidence = incidence
        self.nodes = {
            nid: Node(nid, coord, len(incidence[nid]))
            for coord, nid in node_of.items()
        }

    @classmethod
    def from_records(
        cls,
        records: Iterable[tuple[int, Coords, dict, str]],
        snap_epsilon: float = DEFAULT_SNAP_EPSILON,
    ) -> "Network":
        """Build from (id, coords, attributes, status) tuples.

        Coordinates are taken as already snapped; used for rebuilds inside
        the pipeline where ids must survive.
        """
        edges = {}
        for eid, coords, attrs, status in records:
            coords = dedupe_consecutive(as_coords(coords))
            if len(coords) < 2:
                continue
            edges[eid] = Edge(eid, coords, dict(attrs), status)
        return cls(edges, snap_epsilon)

    # -- queries -------------------------------------------------------

    def node_at(self, coord: tuple[float, float]) -> int | None:
        return self._node_of_coord.get((float(coord[0]), float(coord[1])))

    def node_coord(self, nid: int) -> tuple[float, float]:
        return self.nodes[nid].coordinate

    def degree(self, nid: int) -> int:
        return len(self.incidence[nid])

    def edge_line(self, eid: int) -> LineString:
        if self._edge_lines is None:
            self._edge_lines = {}
        line = self._edge_lines.get(eid)
        if line is None:
            line = LineString(self.edges[eid].coords)
            self._edge_lines[eid] = line
        return line

    @property
    def spatial_index(self) -> STRtree:
        """STRtree over edge geometries; ``tree_edge_ids`` maps result indices."""
        if self._tree is None:
            self._tree_ids = sorted(self.edges)
            self._tree = STRtree([self.edge_line(eid) for eid in self._tree_ids])
        return self._tree

    @property
    def tree_edge_ids(self) -> list[int]:
        self.spatial_index
        return self._tree_ids

    def query_edges(self, geom, predicate: str | None = None) -> list[int]:
        """Edge ids whose envelope (and optionally geometry) hits ``geom``."""
        idx = self.spatial_index.query(geom, predicate=predicate)
        ids = self._tree_ids
        return sorted(ids[i] for i in np.atleast_1d(idx))

    @property
    def total_length(self) -> float:
        return float(sum(e.length for e in self.edges.values()))

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        if not self.edges:
            raise ValueError("empty network has no bounds")
        pts = np.vstack([e.coords for e in self.edges.values()])
        return (
            float(pts[:, 0].min()),
            float(pts[:, 1].min()),
            float(pts[:, 0].max()),
            float(pts[:, 1].max()),
        )

    def edge_records(self) -> list[tuple[int, Coords, dict, str]]:
        return [
            (e.id, e.coords, e.attributes, e.status)
            for e in (self.edges[eid] for eid in sorted(self.edges))
        ]

    def next_edge_id(self) -> int:
        return max(self.edges, default=-1) + 1

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:  # pragma: no cover
        return f"<Network {len(self.edges)} edges, {len(self.nodes)} nodes>"


def _looks_geographic(arrays: Sequence[Coords]) -> bool:
    # Degree-unit data fits in the lon/lat range *and* has tiny segments
    # (street segments are ~1e-3 deg but tens of meters).  Small synthetic
    # meter-unit fixtures near the origin keep segment lengths >= ~1 m and
    # pass.
    pts = np.vstack(arrays)
    if pts[:, 0].min() < -180 or pts[:, 0].max() > 180:
        return False
    if pts[:, 1].min() < -90 or pts[:, 1].max() > 90:
        return False
    seglens = np.concatenate([segment_lengths(a) for a in arrays if len(a) > 1])
    if len(seglens) == 0:
        return False
    return float(np.median(seglens)) < 0.01


def build_network(
    lines: Iterable,
    snap_epsilon: float = DEFAULT_SNAP_EPSILON,
    attributes: Sequence[dict] | None = None,
) -> Network:
    """Build a network from raw polylines.

    Parameters
    ----------
    lines : iterable of coordinate sequences
        Each item is an (n, 2) array-like of projected meter coordinates.
    snap_epsilon : float
        Coordinates are snapped to this grid; endpoints closer than the
        epsilon become one node.  The default keeps exact-coincidence
        semantics.
    attributes : optional sequence of dicts
        Opaque per-line attribute bags, carried through untouched.

    Raises
    ------
    InvalidInputError
        Non-finite coordinates or fully degenerate lines (the message names
        the offending feature index).
    GeographicInputError
        Coordinates that look like lon/lat degrees.
    """
    arrays: list[Coords] = []
    bags: list[dict] = []
    for i, item in enumerate(lines):
        coords = as_coords(item)
        if not np.all(np.isfinite(coords)):
            raise InvalidInputError(f"feature {i}: non-finite coordinate")
        coords = dedupe_consecutive(quantize(coords, snap_epsilon))
        if len(coords) < 2:
            raise InvalidInputError(f"feature {i}: degenerate (zero-length) geometry")
        arrays.append(coords)
        bags.append(dict(attributes[i]) if attributes is not None else {})
    if arrays and _looks_geographic(arrays):
        raise GeographicInputError(
            "coordinates look geographic (degrees); reproject to a metric CRS"
        )
    records = [
        (i, coords, bag, STATUS_ORIGINAL)
        for i, (coords, bag) in enumerate(zip(arrays, bags))
    ]
    return Network.from_records(records, snap_epsilon)
