"""End-to-end simplification.

Order of battle: topological repair; two detect-classify-replace loops
(the artifact threshold is derived once, in the first loop, and reused);
a final topological pass to normalize whatever the edits introduced.
Artifacts that survive are reported as structured warnings — the run
never hard-fails on them.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .artifacts import DetectionParams, DetectionResult, ThresholdError, detect_artifacts
from .classify import classify_ces, group_artifacts, type_histogram
from .continuity import ContinuityParams, detect_strokes, stroke_of_edge
from .faces import polygonize
from .model import Network
from .replace import apply_edit, plan_edits
from .skeleton import SkeletonParams
from .topology import ConsolidationParams, fix_topology

# used when a threshold cannot be derived (too few faces / unimodal data):
# below typical urban-block scores, above sliver/roundabout scores
FALLBACK_THRESHOLD = 3.5


@dataclass
class SimplifyParams:
    consolidation: ConsolidationParams = field(default_factory=ConsolidationParams)
    continuity: ContinuityParams = field(default_factory=ContinuityParams)
    detection: DetectionParams = field(default_factory=DetectionParams)
    skeleton: SkeletonParams = field(default_factory=SkeletonParams)
    loops: int = 2

    def __post_init__(self):
        if self.loops < 1:
            raise ValueError("loops must be >= 1")


@dataclass
class LoopStats:
    faces: int = 0
    artifacts: int = 0
    threshold: float | None = None
    threshold_derived: bool = False
    by_kind: dict = field(default_factory=dict)
    by_type: dict = field(default_factory=dict)
    removed_edges: int = 0
    added_edges: int = 0
    moved_nodes: int = 0
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class RunReport:
    loops: list[LoopStats] = field(default_factory=list)
    threshold: float | None = None
    threshold_derived: bool = False
    edges_before: int = 0
    edges_after: int = 0
    timings: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    unresolved: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "loops": [s.to_dict() for s in self.loops],
            "threshold": self.threshold,
            "threshold_derived": self.threshold_derived,
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "timings": self.timings,
            "warnings": self.warnings,
            "unresolved": self.unresolved,
        }


def _detect(network: Network, params: SimplifyParams, threshold: float | None):
    """Detect artifacts, falling back to a fixed threshold when derivation fails."""
    faces = polygonize(network, validate=False)
    warnings: list[str] = []
    if not faces:
        return None, [], warnings
    detection = DetectionParams(
        threshold=threshold,
        neighbor_similarity=params.detection.neighbor_similarity,
        exclusion_mask=params.detection.exclusion_mask,
    )
    try:
        result = detect_artifacts(faces, detection)
    except ThresholdError as err:
        warnings.append(f"threshold derivation failed ({err}); using fallback {FALLBACK_THRESHOLD}")
        detection.threshold = FALLBACK_THRESHOLD
        result = detect_artifacts(faces, detection)
    return result, faces, warnings


def loop_once(
    network: Network,
    params: SimplifyParams | None = None,
    threshold: float | None = None,
) -> tuple[Network, LoopStats]:
    """One detect-classify-replace pass.

    With an explicit ``threshold`` the derivation step is skipped; the
    stats carry the threshold actually used so callers can reuse it.
    """
    params = params or SimplifyParams()
    stats = LoopStats()
    result, faces, warnings = _detect(network, params, threshold)
    stats.warnings.extend(warnings)
    if result is None:
        return network, stats
    stats.faces = len(faces)
    stats.threshold = result.threshold
    stats.threshold_derived = result.threshold_derived
    stats.artifacts = len(result.flagged)
    if not result.flagged:
        return network, stats

    strokes = detect_strokes(network, params.continuity)
    lookup = stroke_of_edge(strokes)
    by_id = {f.id: f for f in faces}
    ces_by_face = {
        fid: classify_ces(by_id[fid], network, strokes, lookup)
        for fid in sorted(result.flagged)
    }
    groups = group_artifacts(result)
    stats.by_kind = {
        kind: sum(1 for g in groups if g.kind == kind)
        for kind in ("isolate", "pair", "cluster")
        if any(g.kind == kind for g in groups)
    }
    stats.by_type = type_histogram(list(ces_by_face.values()))

    edit = plan_edits(network, groups, ces_by_face, strokes, lookup, params.skeleton)
    stats.removed_edges = len(edit.removed_edge_ids)
    stats.added_edges = len(edit.added_edges)
    stats.moved_nodes = len(edit.moved_nodes)
    stats.warnings.extend(edit.warnings)
    return apply_edit(network, edit), stats


def simplify(network: Network, params: SimplifyParams | None = None) -> tuple[Network, RunReport]:
    """Full simplification of a street network."""
    params = params or SimplifyParams()
    report = RunReport(edges_before=len(network.edges))

    t0 = time.perf_counter()
    current = fix_topology(network, params.consolidation)
    report.timings["fix_topology"] = time.perf_counter() - t0

    threshold = params.detection.threshold
    for i in range(params.loops):
        t0 = time.perf_counter()
        current, stats = loop_once(current, params, threshold)
        report.timings[f"loop_{i + 1}"] = time.perf_counter() - t0
        report.loops.append(stats)
        if stats.threshold is not None and threshold is None:
            threshold = stats.threshold
            report.threshold_derived = stats.threshold_derived
        report.warnings.extend(stats.warnings)
    report.threshold = threshold

    t0 = time.perf_counter()
    current = fix_topology(current, params.consolidation)
    report.timings["post_topology"] = time.perf_counter() - t0

    result, _, _ = _detect(current, params, threshold)
    if result is not None and result.flagged:
        for face in result.artifacts:
            cx, cy = face.centroid
            report.unresolved.append(
                {
                    "face_id": face.id,
                    "centroid": [float(cx), float(cy)],
                    "index": result.index[face.id],
                }
            )
        report.warnings.append(
            f"{len(result.flagged)} artifact(s) remain unresolved after final loop"
        )

    report.edges_after = len(current.edges)
    return current, report
