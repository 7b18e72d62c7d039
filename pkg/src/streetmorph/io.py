"""GeoJSON input/output.

The interchange format is a GeoJSON FeatureCollection of LineString
features; attribute bags travel in ``properties``.  Edge status is
stored under the ``status`` property and separated out again on read,
so write-then-read round-trips are lossless (and, because floats are
serialized via ``repr``, geometry round-trips bit-exactly).  A legacy
``crs`` member is preserved verbatim when present, but geometry is never
reprojected: meter units are the caller's responsibility.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np
from shapely.geometry import MultiPolygon, Polygon, shape

from .model import (
    DEFAULT_SNAP_EPSILON,
    STATUS_EXTENDED,
    STATUS_NEW,
    STATUS_ORIGINAL,
    InvalidInputError,
    Network,
    build_network,
)

_STATUSES = {STATUS_ORIGINAL, STATUS_EXTENDED, STATUS_NEW}


def _load_feature_collection(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"no such file: {path}")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise InvalidInputError(f"{path}: not readable GeoJSON ({err})") from err
    if not isinstance(data, dict) or data.get("type") != "FeatureCollection":
        raise InvalidInputError(f"{path}: expected a GeoJSON FeatureCollection")
    return data


def read_lines(path) -> tuple[list[np.ndarray], list[dict], list[str], str | None]:
    """Read LineString features: (coords, attribute bags, statuses, crs name)."""
    data = _load_feature_collection(path)
    crs = _crs_name(data)
    lines: list[np.ndarray] = []
    bags: list[dict] = []
    statuses: list[str] = []
    for i, feature in enumerate(data.get("features", [])):
        geom = feature.get("geometry") or {}
        gtype = geom.get("type")
        props = dict(feature.get("properties") or {})
        status = props.get("status")
        if status in _STATUSES:
            props.pop("status")
        else:
            status = STATUS_ORIGINAL
        if gtype == "LineString":
            parts = [geom.get("coordinates", [])]
        elif gtype == "MultiLineString":
            parts = geom.get("coordinates", [])
        else:
            raise InvalidInputError(
                f"{path}: feature {i} has geometry type {gtype!r}, expected LineString"
            )
        for part in parts:
            arr = np.asarray(part, dtype=float)
            if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] < 2:
                raise InvalidInputError(f"{path}: feature {i} has malformed coordinates")
            lines.append(arr[:, :2])
            bags.append(dict(props))
            statuses.append(status)
    return lines, bags, statuses, crs


def load_network(path, snap_epsilon: float = DEFAULT_SNAP_EPSILON) -> Network:
    """Read and validate a network file (exceptions double as CLI exit codes)."""
    lines, bags, statuses, _ = read_lines(path)
    network = build_network(lines, snap_epsilon=snap_epsilon, attributes=bags)
    if any(s != STATUS_ORIGINAL for s in statuses):
        records = [
            (eid, e.coords, e.attributes, statuses[eid])
            for eid, e in sorted(network.edges.items())
        ]
        network = Network.from_records(records, snap_epsilon)
    return network


def read_crs(path) -> str | None:
    return _crs_name(_load_feature_collection(path))


def _crs_name(data: dict) -> str | None:
    crs = data.get("crs")
    if isinstance(crs, dict):
        return crs.get("properties", {}).get("name")
    if isinstance(crs, str):
        return crs
    return None


def read_polygons(path) -> list[Polygon]:
    """Read Polygon/MultiPolygon features (e.g. an exclusion mask)."""
    data = _load_feature_collection(path)
    polygons: list[Polygon] = []
    for i, feature in enumerate(data.get("features", [])):
        geom = feature.get("geometry") or {}
        gtype = geom.get("type")
        if gtype not in ("Polygon", "MultiPolygon"):
            raise InvalidInputError(
                f"{path}: feature {i} has geometry type {gtype!r}, expected Polygon"
            )
        g = shape(geom)
        if isinstance(g, MultiPolygon):
            polygons.extend(g.geoms)
        else:
            polygons.append(g)
    return polygons


def network_to_feature_collection(network: Network, crs: str | None = None) -> dict:
    features = []
    for eid in sorted(network.edges):
        edge = network.edges[eid]
        properties = {"status": edge.status, **edge.attributes}
        features.append(
            {
                "type": "Feature",
                "id": eid,
                "properties": properties,
                "geometry": {
                    "type": "LineString",
                    "coordinates": [[float(x), float(y)] for x, y in edge.coords],
                },
            }
        )
    collection = {"type": "FeatureCollection", "features": features}
    if crs:
        collection["crs"] = {"type": "name", "properties": {"name": crs}}
    return collection


def write_network(path, network: Network, crs: str | None = None) -> None:
    collection = network_to_feature_collection(network, crs)
    with open(path, "w") as fh:
        json.dump(collection, fh, indent=2)
        fh.write("\n")
