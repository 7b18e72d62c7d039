"""Shared helpers for the test suite."""
from __future__ import annotations

import numpy as np

from streetmorph import build_network


def net(*lines, eps: float = 1e-6, attributes=None):
    """Build a Network from plain coordinate lists."""
    return build_network(
        [np.asarray(line, dtype=float) for line in lines],
        snap_epsilon=eps,
        attributes=attributes,
    )


def node_coords(network) -> set[tuple[float, float]]:
    return {tuple(n.coordinate) for n in network.nodes.values()}


def average_linkage_oracle(points: np.ndarray, tolerance: float) -> list[list[int]]:
    """Reference agglomerative clustering, written for clarity over speed.

    Greedily merges the closest pair of clusters (by mean pairwise distance)
    until no pair is within the tolerance; returns sorted groups of size >= 2.
    """
    points = np.asarray(points, dtype=float)
    clusters = [[i] for i in range(len(points))]
    while len(clusters) > 1:
        best_d = None
        best_pair = None
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = float(
                    np.mean(
                        [
                            np.hypot(*(points[i] - points[j]))
                            for i in clusters[a]
                            for j in clusters[b]
                        ]
                    )
                )
                if best_d is None or d < best_d:
                    best_d = d
                    best_pair = (a, b)
        if best_d is None or best_d > tolerance:
            break
        a, b = best_pair
        clusters[a] = sorted(clusters[a] + clusters[b])
        del clusters[b]
    return sorted(sorted(c) for c in clusters if len(c) >= 2)


def grid_network(nx: int, ny: int, spacing: float = 100.0, rng=None, jitter: float = 0.0):
    """Rectangular grid of streets, optionally jittered at the nodes."""
    pts = {}
    for i in range(nx):
        for j in range(ny):
            x = i * spacing
            y = j * spacing
            if rng is not None and jitter > 0:
                x += rng.uniform(-jitter, jitter)
                y += rng.uniform(-jitter, jitter)
            pts[i, j] = (x, y)
    lines = []
    for i in range(nx):
        for j in range(ny):
            if i + 1 < nx:
                lines.append([pts[i, j], pts[i + 1, j]])
            if j + 1 < ny:
                lines.append([pts[i, j], pts[i, j + 1]])
    return net(*lines)
