"""Small numeric helpers shared across the package.

Everything here works on plain ``(n, 2)`` float64 coordinate arrays; shapely
objects are only built where a real geometric predicate is needed.
"""
from __future__ import annotations

import math

import numpy as np

Coords = np.ndarray  # (n, 2) float64


def as_coords(points) -> Coords:
    """Coerce a coordinate sequence to a contiguous (n, 2) float64 array.

    Negative zeros are normalized to +0.0 so byte-level comparisons of
    coordinates agree with float equality.
    """
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected (n, 2) coordinates, got shape {arr.shape}")
    return np.ascontiguousarray(arr + 0.0)


def dedupe_consecutive(coords: Coords) -> Coords:
    """Drop repeated consecutive vertices (exact equality)."""
    if len(coords) < 2:
        return coords
    keep = np.ones(len(coords), dtype=bool)
    same = np.all(coords[1:] == coords[:-1], axis=1)
    keep[1:] = ~same
    return coords[keep]


def polyline_length(coords: Coords) -> float:
    if len(coords) < 2:
        return 0.0
    return float(np.sum(np.hypot(*np.diff(coords, axis=0).T)))


def segment_lengths(coords: Coords) -> np.ndarray:
    return np.hypot(*np.diff(coords, axis=0).T)


def ring_signed_area(coords: Coords) -> float:
    """Shoelace area of a closed ring (first point need not repeat).

    Positive for counter-clockwise orientation.
    """
    x = coords[:, 0]
    y = coords[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def ring_centroid(coords: Coords) -> tuple[float, float]:
    """Area centroid of a closed ring (falls back to vertex mean if degenerate)."""
    x = coords[:, 0]
    y = coords[:, 1]
    xn = np.roll(x, -1)
    yn = np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * np.sum(cross)
    if abs(area) < 1e-12:
        return float(np.mean(x)), float(np.mean(y))
    cx = np.sum((x + xn) * cross) / (6.0 * area)
    cy = np.sum((y + yn) * cross) / (6.0 * area)
    return float(cx), float(cy)


def point_segment_distance(p, a, b) -> tuple[float, float]:
    """Distance from point ``p`` to segment ``a``-``b``.

    Returns ``(distance, t)`` where ``t`` in [0, 1] is the projection
    parameter of the closest point along the segment.
    """
    p = np.asarray(p, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    d = b - a
    denom = float(d @ d)
    if denom == 0.0:
        return float(np.hypot(*(p - a))), 0.0
    t = float(np.clip((p - a) @ d / denom, 0.0, 1.0))
    closest = a + t * d
    return float(np.hypot(*(p - closest))), t


def interior_angle_deg(u, v) -> float:
    """Unsigned angle in degrees between two direction vectors.

    Both vectors are taken pointing *away* from a shared point, so two
    segments forming a straight line give 180 and a right angle gives 90.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    nu = math.hypot(u[0], u[1])
    nv = math.hypot(v[0], v[1])
    if nu == 0.0 or nv == 0.0:
        return 0.0
    c = (u @ v) / (nu * nv)
    return math.degrees(math.acos(max(-1.0, min(1.0, c))))


def densify(coords: Coords, max_spacing: float) -> Coords:
    """Insert vertices so no segment is longer than ``max_spacing``.

    Original vertices are always retained.
    """
    if len(coords) < 2:
        return coords
    pieces = [coords[:1]]
    for a, b in zip(coords[:-1], coords[1:]):
        seg = b - a
        dist = math.hypot(seg[0], seg[1])
        n = max(1, int(math.ceil(dist / max_spacing)))
        ts = np.linspace(0.0, 1.0, n + 1)[1:]
        pieces.append(a + ts[:, None] * seg)
    return np.vstack(pieces)


def quantize(coords: Coords, epsilon: float) -> Coords:
    """Snap coordinates onto a regular grid with spacing ``epsilon``.

    The result carries no negative zeros (see :func:`as_coords`).
    """
    if epsilon <= 0:
        return np.asarray(coords, dtype=np.float64)
    return np.round(np.asarray(coords, dtype=np.float64) / epsilon) * epsilon + 0.0
