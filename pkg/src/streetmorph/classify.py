"""Artifact classification.

Each artifact face is described by how continuity strokes interact with
its boundary edges:

* ``C`` -- the stroke passes through: it continues beyond the artifact on
  both sides,
* ``E`` -- the stroke ends here: it continues on exactly one side,
* ``S`` -- the stroke is fully contained in the artifact's boundary.

A face with three boundary nodes whose edges carry all three labels is a
``3CES``; a five-node face with only contained strokes is a ``5S``, and
so on.  Adjacent artifacts are additionally grouped into isolates, pairs
and clusters, which are simplified by different procedures.
"""
from __future__ import annotations

from dataclasses import dataclass
from collections import Counter

from .artifacts import DetectionResult
from .continuity import Stroke
from .faces import FacePolygon
from .model import Network

LABEL_CONTINUING = "C"
LABEL_ENDING = "E"
LABEL_CONTAINED = "S"


@dataclass
class CesType:
    face_id: int
    node_count: int
    labels: dict[int, str]  # boundary edge id -> label

    @property
    def type_string(self) -> str:
        return f"{self.node_count}{''.join(sorted(set(self.labels.values())))}"

    def edges_with(self, label: str) -> list[int]:
        return sorted(e for e, lab in self.labels.items() if lab == label)


def _label_edge(eid: int, boundary: set[int], stroke: Stroke) -> str:
    sequence = stroke.edge_ids
    pos = sequence.index(eid)
    if all(e in boundary for e in sequence):
        return LABEL_CONTAINED
    lo = pos
    while lo > 0 and sequence[lo - 1] in boundary:
        lo -= 1
    hi = pos
    while hi < len(sequence) - 1 and sequence[hi + 1] in boundary:
        hi += 1
    if stroke.is_closed:
        # the run can wrap around the cycle, but since some edge is outside
        # the boundary the stroke must exit on both sides
        return LABEL_CONTINUING
    before = lo > 0
    after = hi < len(sequence) - 1
    if before and after:
        return LABEL_CONTINUING
    if before or after:
        return LABEL_ENDING
    return LABEL_CONTAINED


def classify_ces(
    face: FacePolygon,
    network: Network,
    strokes: list[Stroke],
    stroke_lookup: dict[int, int],
) -> CesType:
    """Label every boundary edge of ``face`` and count its nodes."""
    boundary = set(face.boundary_edges)
    labels: dict[int, str] = {}
    nodes: set[int] = set()
    for eid in sorted(boundary):
        edge = network.edges[eid]
        nodes.add(edge.start_node)
        nodes.add(edge.end_node)
        labels[eid] = _label_edge(eid, boundary, strokes[stroke_lookup[eid]])
    return CesType(face_id=face.id, node_count=len(nodes), labels=labels)


@dataclass
class ArtifactGroup:
    faces: list[FacePolygon]

    @property
    def kind(self) -> str:
        n = len(self.faces)
        return "isolate" if n == 1 else "pair" if n == 2 else "cluster"


def group_artifacts(result: DetectionResult) -> list[ArtifactGroup]:
    """Partition flagged faces into adjacency-connected groups."""
    flagged = result.flagged
    by_id = {f.id: f for f in result.faces}
    seen: set[int] = set()
    groups: list[ArtifactGroup] = []
    for fid in sorted(flagged):
        if fid in seen:
            continue
        component = []
        stack = [fid]
        seen.add(fid)
        while stack:
            cur = stack.pop()
            component.append(cur)
            for nid in by_id[cur].neighbors:
                if nid in flagged and nid not in seen:
                    seen.add(nid)
                    stack.append(nid)
        groups.append(ArtifactGroup(faces=[by_id[i] for i in sorted(component)]))
    return groups


def type_histogram(types: list[CesType]) -> dict[str, int]:
    """Count occurrences of each type string, sorted by node count then name."""

    def sort_key(name: str):
        digits = "".join(ch for ch in name if ch.isdigit())
        return (int(digits) if digits else 0, name)

    counts = Counter(t.type_string for t in types)
    return {name: counts[name] for name in sorted(counts, key=sort_key)}
