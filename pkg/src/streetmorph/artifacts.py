"""Face artifact detection.

Every bounded face of the network gets a shape index combining its size
and compactness::

    index = log10(area * isoperimetric_quotient)
        isoperimetric_quotient = 4 * pi * area / perimeter ** 2

Small and/or elongated faces (slivers between carriageways, roundabout
islands) score low; genuine urban blocks score high.  The split between
the two populations is found automatically as the valley between the two
highest modes of a Gaussian kernel density estimate over the observed
index values.  Faces below the threshold are flagged, then the flag is
grown into adjacent faces with nearly-sub-threshold scores.  Faces that
intersect an exclusion mask are never flagged, regardless of score.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks
from scipy.stats import gaussian_kde
from shapely.geometry.base import BaseGeometry
from shapely.strtree import STRtree

from .faces import FacePolygon

MIN_FACES_FOR_THRESHOLD = 30


class ThresholdError(ValueError):
    """The artifact threshold could not be derived from the data."""


@dataclass
class DetectionParams:
    threshold: float | None = None
    neighbor_similarity: float = 0.3
    exclusion_mask: list[BaseGeometry] | None = None

    def __post_init__(self):
        if self.neighbor_similarity < 0:
            raise ValueError("neighbor_similarity must be non-negative")


@dataclass
class DetectionResult:
    faces: list[FacePolygon]
    index: dict[int, float]
    threshold: float
    threshold_derived: bool
    flagged: set[int] = field(default_factory=set)
    excluded: set[int] = field(default_factory=set)

    @property
    def artifacts(self) -> list[FacePolygon]:
        return [f for f in self.faces if f.id in self.flagged]


def face_artifact_index(area: float, perimeter: float) -> float:
    """log10 of area times isoperimetric quotient; -inf for degenerate input."""
    if area <= 0 or perimeter <= 0:
        return float("-inf")
    quotient = 4.0 * math.pi * area / perimeter**2
    return math.log10(area * quotient)


def derive_threshold(values, min_count: int = MIN_FACES_FOR_THRESHOLD) -> float:
    """Valley of the index density between its two highest modes.

    Raises :class:`ThresholdError` when there are too few values to
    estimate a density or the density has fewer than two local maxima.
    """
    values = np.asarray(list(values), dtype=float)
    values = values[np.isfinite(values)]
    if len(values) < min_count:
        raise ThresholdError(
            f"need at least {min_count} faces to derive a threshold, got {len(values)}"
        )
    if np.ptp(values) == 0:
        raise ThresholdError("all face index values identical")
    kde = gaussian_kde(values, bw_method="silverman")
    # pad past the kernel support so the density decays at the grid ends;
    # otherwise edge peaks get spuriously tiny prominences
    pad = max(0.05 * np.ptp(values), 3.0 * float(np.sqrt(kde.covariance[0, 0])))
    grid = np.linspace(values.min() - pad, values.max() + pad, 1024)
    density = kde(grid)
    # negligible tail wiggles must not count as modes, so demand some
    # prominence relative to the dominant peak
    peaks, _ = find_peaks(density, prominence=0.05 * density.max())
    if len(peaks) < 2:
        raise ThresholdError(
            "face index distribution is unimodal; pass an explicit threshold"
        )
    top_two = peaks[np.argsort(density[peaks])[-2:]]
    lo, hi = sorted(int(p) for p in top_two)
    valley = lo + int(np.argmin(density[lo : hi + 1]))
    return float(grid[valley])


def detect_artifacts(
    faces: list[FacePolygon], params: DetectionParams | None = None
) -> DetectionResult:
    """Flag artifact faces among ``faces``.

    The threshold is taken from ``params`` or derived from the data.  The
    neighbour step then extends flags to adjacent faces whose index is at
    most ``threshold + neighbor_similarity * |threshold|``, repeated until
    stable.  Masked faces are removed from the flag set last, so the mask
    always wins.
    """
    params = params or DetectionParams()
    index = {f.id: face_artifact_index(f.area, f.perimeter) for f in faces}
    if params.threshold is not None:
        threshold = float(params.threshold)
        derived = False
    else:
        threshold = derive_threshold(index.values())
        derived = True

    flagged = {fid for fid, v in index.items() if v < threshold}
    margin = threshold + params.neighbor_similarity * abs(threshold)
    by_id = {f.id: f for f in faces}
    frontier = set(flagged)
    while frontier:
        grown = set()
        for fid in frontier:
            for nid in by_id[fid].neighbors:
                if nid not in flagged and index[nid] <= margin:
                    grown.add(nid)
        flagged |= grown
        frontier = grown

    excluded: set[int] = set()
    if params.exclusion_mask:
        mask_tree = STRtree(list(params.exclusion_mask))
        for face in faces:
            if face.id in flagged and len(mask_tree.query(face.polygon, predicate="intersects")):
                excluded.add(face.id)
        flagged -= excluded

    return DetectionResult(
        faces=faces,
        index=index,
        threshold=threshold,
        threshold_derived=derived,
        flagged=flagged,
        excluded=excluded,
    )
