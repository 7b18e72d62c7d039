"""Street network simplification: collapse transportation-grade geometry
(dual carriageways, roundabouts, interchange ramps) into a morphological
network with one node per intersection and one edge per street segment.
"""
from .artifacts import (
    DetectionParams,
    DetectionResult,
    ThresholdError,
    derive_threshold,
    detect_artifacts,
    face_artifact_index,
)
from .classify import classify_ces, group_artifacts
from .continuity import ContinuityParams, Stroke, detect_strokes, stroke_of_edge
from .evaluate import (
    HexGrid,
    chatterjee_xi,
    compare_networks,
    euclidean_distance,
    tile_extent,
)
from .faces import FacePolygon, UnnodedTouchError, polygonize
from .io import load_network, write_network
from .model import (
    GeographicInputError,
    InvalidInputError,
    Network,
    build_network,
)
from .pipeline import RunReport, SimplifyParams, simplify
from .skeleton import SkeletonError, SkeletonParams, voronoi_skeleton
from .topology import ConsolidationParams, fix_topology, topology_violations

__all__ = [
    "ConsolidationParams",
    "ContinuityParams",
    "DetectionParams",
    "DetectionResult",
    "FacePolygon",
    "GeographicInputError",
    "HexGrid",
    "InvalidInputError",
    "Network",
    "RunReport",
    "SimplifyParams",
    "SkeletonError",
    "SkeletonParams",
    "Stroke",
    "ThresholdError",
    "UnnodedTouchError",
    "build_network",
    "chatterjee_xi",
    "classify_ces",
    "compare_networks",
    "derive_threshold",
    "detect_artifacts",
    "detect_strokes",
    "euclidean_distance",
    "face_artifact_index",
    "fix_topology",
    "group_artifacts",
    "load_network",
    "polygonize",
    "simplify",
    "stroke_of_edge",
    "tile_extent",
    "topology_violations",
    "voronoi_skeleton",
    "write_network",
]

__version__ = "0.1.0"
