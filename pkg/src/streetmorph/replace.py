"""Artifact geometry replacement.

The replacement rules form a priority ledger applied per artifact group:

R1  contained (S) edges, then ending (E) edges, are dropped when the rest
    of the network keeps their endpoints connected (an endpoint incident
    to nothing afterwards simply vanishes and is fine);
R2  junctions that would be stranded by the drops get a straight
    connector onto the nearest retained edge (status ``extended``), after
    which the fragments that kept them attached are dropped too;
R3  continuing (C) strokes are kept untouched wherever possible;
R4  faces with no continuing stroke collapse to a single node at the
    area centroid, and all external edges re-terminate there;
R5  when non-C geometry survives R1 and three or more connection points
    lose their junction with no single dominant stroke to attach to, a
    Voronoi centerline skeleton joins them (status ``new``);
R6  a pure dead-end loop is replaced by snapping its street onto the
    most distant loop vertex.

Pairs whose shared wall carries a continuing stroke are treated as two
isolates; otherwise the wall is dropped and the merged region processed
once.  Clusters are unioned, stripped down to through-going strokes and
re-spanned by a skeleton.  Failed skeletons leave the artifact unchanged
and produce a warning instead of an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from shapely.geometry import MultiPolygon, Point
from shapely.ops import unary_union

from .classify import ArtifactGroup, CesType, classify_ces, _label_edge
from .continuity import Stroke
from .faces import FacePolygon
from .geometry import dedupe_consecutive
from .model import STATUS_EXTENDED, STATUS_NEW, STATUS_ORIGINAL, Network
from .skeleton import SkeletonError, SkeletonParams, voronoi_skeleton


@dataclass
class AddedEdge:
    coords: np.ndarray
    status: str
    attributes: dict = field(default_factory=dict)


@dataclass
class Edit:
    """A planned change set; applying it must preserve connectivity."""

    removed_edge_ids: set[int] = field(default_factory=set)
    added_edges: list[AddedEdge] = field(default_factory=list)
    moved_nodes: dict[int, tuple[float, float]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def merge_in(self, other: "Edit") -> None:
        self.removed_edge_ids |= other.removed_edge_ids
        self.added_edges.extend(other.added_edges)
        for nid, coord in other.moved_nodes.items():
            if nid in self.moved_nodes and self.moved_nodes[nid] != coord:
                self.warnings.append(
                    f"node {nid} moved by two artifact groups; keeping first target"
                )
                continue
            self.moved_nodes[nid] = coord
        self.warnings.extend(other.warnings)

    @property
    def is_noop(self) -> bool:
        return not (self.removed_edge_ids or self.added_edges or self.moved_nodes)


def connectivity_graph(network: Network) -> nx.MultiGraph:
    graph = nx.MultiGraph()
    graph.add_nodes_from(network.nodes)
    for eid, edge in network.edges.items():
        graph.add_edge(edge.start_node, edge.end_node, key=eid)
    return graph


def _drop_if_preservable(eids, network, graph, edit) -> None:
    """R1: drop edges one at a time unless the loss would disconnect.

    An endpoint left with no edges at all does not count as a
    disconnection: the node simply ceases to exist.
    """
    for eid in sorted(eids):
        if eid in edit.removed_edge_ids:
            continue
        edge = network.edges[eid]
        u, v = edge.start_node, edge.end_node
        graph.remove_edge(u, v, key=eid)
        if (
            u == v
            or graph.degree(u) == 0
            or graph.degree(v) == 0
            or nx.has_path(graph, u, v)
        ):
            edit.removed_edge_ids.add(eid)
        else:
            graph.add_edge(u, v, key=eid)


def _ring_nodes(face: FacePolygon, network: Network) -> set[int]:
    nodes: set[int] = set()
    for eid in face.boundary_edges:
        edge = network.edges[eid]
        nodes.add(edge.start_node)
        nodes.add(edge.end_node)
    return nodes


def _external_edges(face: FacePolygon, network: Network) -> dict[int, list[int]]:
    """Non-boundary edges incident to each boundary node."""
    boundary = set(face.boundary_edges)
    out: dict[int, list[int]] = {}
    for nid in sorted(_ring_nodes(face, network)):
        ext = sorted({e for e, _ in network.incidence[nid] if e not in boundary})
        if ext:
            out[nid] = ext
    return out


def _orphaned_connection_nodes(
    node_ids, network, member_edges: set[int], kept: set[int], edit: Edit, planned: set[int]
) -> list[int]:
    """Nodes that keep an outside edge but lose every artifact-side edge.

    These are the junctions a skeleton has to re-create; nodes that still
    touch a retained (kept) edge keep their junction and need nothing.
    """
    gone = edit.removed_edge_ids | planned
    out = []
    for nid in sorted(set(node_ids)):
        alive = [e for e, _ in network.incidence[nid] if e not in gone]
        has_external = any(e not in member_edges for e in alive)
        has_retained = any(e in kept for e in alive)
        if has_external and not has_retained:
            out.append(nid)
    return out


def simplify_isolate(
    face: FacePolygon,
    ces: CesType,
    network: Network,
    strokes: list[Stroke],
    stroke_lookup: dict[int, int],
    skeleton_params: SkeletonParams | None = None,
    graph: nx.MultiGraph | None = None,
) -> Edit:
    """Plan the replacement of a single artifact face."""
    skeleton_params = skeleton_params or SkeletonParams()
    graph = graph if graph is not None else connectivity_graph(network)
    edit = Edit()
    boundary = set(face.boundary_edges)
    c_edges = set(ces.edges_with("C"))
    e_edges = ces.edges_with("E")
    s_edges = ces.edges_with("S")
    c_strokes = sorted({stroke_lookup[e] for e in c_edges})
    external = _external_edges(face, network)

    if not c_strokes:
        if _is_dead_end_loop(face, network, external):
            _snap_dead_end_loop(face, network, graph, edit)
        else:
            _collapse_to_centroid(face, network, graph, edit, external)
        return edit

    _drop_if_preservable(s_edges, network, graph, edit)
    _drop_if_preservable(e_edges, network, graph, edit)
    leftover = {e for e in boundary - c_edges if e not in edit.removed_edge_ids}
    if not leftover:
        return edit
    orphans = _orphaned_connection_nodes(
        _ring_nodes(face, network), network, boundary, c_edges, edit, leftover
    )
    if len(c_strokes) >= 2 and len(orphans) >= 3:
        _skeletonize(
            face.polygon,
            leftover,
            sorted(c_edges),
            orphans,
            network,
            graph,
            edit,
            skeleton_params,
            label=f"face {face.id}",
        )
    else:
        _reconnect_orphans(
            orphans, sorted(c_edges), leftover, network, graph, edit,
            label=f"face {face.id}",
        )
    return edit


def _is_dead_end_loop(face, network, external) -> bool:
    ring_nodes = _ring_nodes(face, network)
    ext_edges = {e for edges in external.values() for e in edges}
    return len(ring_nodes) == 1 and len(ext_edges) == 1


def _snap_dead_end_loop(face, network, graph, edit) -> None:
    """R6: drop the loop, snap the street to the most distant loop vertex."""
    (node,) = _ring_nodes(face, network)
    origin = np.asarray(network.nodes[node].coordinate)
    distances = np.hypot(*(face.ring - origin).T)
    far = face.ring[int(np.argmax(distances))]
    for eid in sorted(face.boundary_edges):
        edit.removed_edge_ids.add(eid)
        _graph_drop(graph, network, eid)
    edit.moved_nodes[node] = (float(far[0]), float(far[1]))


def _graph_drop(graph, network, eid) -> None:
    edge = network.edges[eid]
    if graph.has_edge(edge.start_node, edge.end_node, key=eid):
        graph.remove_edge(edge.start_node, edge.end_node, key=eid)


def _collapse_to_centroid(face, network, graph, edit, external) -> None:
    """R4: no continuing stroke; the face becomes a node at its centroid."""
    ext_edges = {e for edges in external.values() for e in edges}
    if not ext_edges:
        edit.warnings.append(
            f"face {face.id}: isolated ring with no connections left unchanged"
        )
        return
    cx, cy = face.centroid
    ring_nodes = sorted(_ring_nodes(face, network))
    for eid in sorted(face.boundary_edges):
        edit.removed_edge_ids.add(eid)
        _graph_drop(graph, network, eid)
    for nid in ring_nodes:
        edit.moved_nodes[nid] = (float(cx), float(cy))
    # the collapse fuses all ring nodes; reflect that for later guards
    for nid in ring_nodes[1:]:
        graph.add_edge(ring_nodes[0], nid, key=("collapse", face.id, nid))


def _reconnect_orphans(
    orphans, targets, leftover, network, graph, edit, label
) -> None:
    """R2: give each stranded junction a straight connector onto retained
    geometry, then retry the drops that were refused on its account.

    The connector runs from the junction to its orthogonal projection on
    the nearest target edge; the touch point becomes a real node in the
    next topology pass.
    """
    for nid in orphans:
        origin = Point(network.nodes[nid].coordinate)
        best = None
        for cid in targets:
            if cid in edit.removed_edge_ids:
                continue
            line = network.edge_line(cid)
            d = line.distance(origin)
            if best is None or d < best[0]:
                best = (d, cid, line)
        if best is None:
            edit.warnings.append(
                f"{label}: no retained geometry to reconnect node {nid}"
            )
            continue
        d, cid, line = best
        if d <= network.snap_epsilon:
            continue  # already touching the retained edge
        target = line.interpolate(line.project(origin))
        coords = np.array([[origin.x, origin.y], [target.x, target.y]])
        edit.added_edges.append(AddedEdge(coords=coords, status=STATUS_EXTENDED))
        other = network.edges[cid]
        graph.add_edge(nid, other.start_node, key=("extend", nid, cid))
        graph.add_edge(nid, other.end_node, key=("extend2", nid, cid))
    _drop_if_preservable(sorted(leftover), network, graph, edit)


def _skeletonize(
    polygon,
    drops,
    keep_internal,
    connection_nodes,
    network,
    graph,
    edit,
    params,
    label,
) -> None:
    """R5 / cluster core: replace dropped geometry by a centerline subtree."""
    if len(connection_nodes) < 2:
        edit.warnings.append(f"{label}: fewer than two connection points, skipped")
        return
    coords = [np.asarray(network.nodes[n].coordinate) for n in connection_nodes]
    internal_lines = [network.edges[e].coords for e in keep_internal]
    groups = _touching_groups(keep_internal, network)
    try:
        branches = voronoi_skeleton(polygon, coords, params, internal_lines, groups)
    except SkeletonError as err:
        edit.warnings.append(f"{label} insufficiently simplified: {err}")
        return
    for eid in sorted(drops):
        if eid in edit.removed_edge_ids:
            continue
        edit.removed_edge_ids.add(eid)
        _graph_drop(graph, network, eid)
    for branch in branches:
        edit.added_edges.append(AddedEdge(coords=branch, status=STATUS_NEW))
    anchor = connection_nodes[0]
    for nid in connection_nodes[1:]:
        graph.add_edge(anchor, nid, key=("skeleton", label, nid))


def _touching_groups(eids: list[int], network: Network) -> list[int]:
    """Group indices for edges that share endpoints (connected components)."""
    parent = {i: i for i in range(len(eids))}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_node: dict[int, int] = {}
    for i, eid in enumerate(eids):
        edge = network.edges[eid]
        for nid in (edge.start_node, edge.end_node):
            if nid in by_node:
                parent[find(i)] = find(by_node[nid])
            else:
                by_node[nid] = i
    roots = sorted({find(i) for i in range(len(eids))})
    index = {r: k for k, r in enumerate(roots)}
    return [index[find(i)] for i in range(len(eids))]


def simplify_pair(
    faces: list[FacePolygon],
    ces_by_face: dict[int, CesType],
    network: Network,
    strokes: list[Stroke],
    stroke_lookup: dict[int, int],
    skeleton_params: SkeletonParams | None = None,
    graph: nx.MultiGraph | None = None,
) -> Edit:
    """Process two adjacent artifact faces."""
    graph = graph if graph is not None else connectivity_graph(network)
    f1, f2 = faces
    shared = set(f1.boundary_edges) & set(f2.boundary_edges)
    shared_is_continuing = any(
        ces_by_face[f.id].labels.get(e) == "C" for f in faces for e in shared
    )
    if shared_is_continuing:
        edit = Edit()
        for face in faces:
            edit.merge_in(
                simplify_isolate(
                    face,
                    ces_by_face[face.id],
                    network,
                    strokes,
                    stroke_lookup,
                    skeleton_params,
                    graph,
                )
            )
        return edit

    edit = Edit()
    _drop_if_preservable(shared, network, graph, edit)
    merged = _merge_faces(faces, edit.removed_edge_ids)
    merged_ces = classify_ces(merged, network, strokes, stroke_lookup)
    sub = simplify_isolate(
        merged, merged_ces, network, strokes, stroke_lookup, skeleton_params, graph
    )
    edit.merge_in(sub)
    return edit


def _merge_faces(faces: list[FacePolygon], dropped: set[int]) -> FacePolygon:
    union = unary_union([f.polygon for f in faces])
    if isinstance(union, MultiPolygon):
        union = max(union.geoms, key=lambda g: g.area)
    boundary: set[int] = set()
    for f in faces:
        boundary ^= set(f.boundary_edges)
    boundary -= dropped
    neighbors = set()
    member_ids = {f.id for f in faces}
    for f in faces:
        neighbors |= f.neighbors
    neighbors -= member_ids
    ring = np.asarray(union.exterior.coords, dtype=float)[:-1]
    return FacePolygon(
        id=min(member_ids),
        ring=ring,
        area=float(union.area),
        perimeter=float(union.exterior.length),
        boundary_edges=sorted(boundary),
        neighbors=neighbors,
        _polygon=union,
    )


def simplify_cluster(
    faces: list[FacePolygon],
    network: Network,
    strokes: list[Stroke],
    stroke_lookup: dict[int, int],
    skeleton_params: SkeletonParams | None = None,
    graph: nx.MultiGraph | None = None,
) -> Edit:
    """Union the cluster and re-span it with a skeleton.

    Only strokes passing fully through the cluster survive inside; all
    other member geometry (including the outer rim) is collapsed into
    the centerline subtree.
    """
    graph = graph if graph is not None else connectivity_graph(network)
    edit = Edit()
    member_edges: set[int] = set()
    shared: set[int] = set()
    for f in faces:
        for e in f.boundary_edges:
            if e in member_edges:
                shared.add(e)
            member_edges.add(e)

    union = unary_union([f.polygon for f in faces])
    if isinstance(union, MultiPolygon):
        union = max(union.geoms, key=lambda g: g.area)

    keep: set[int] = set()
    for e in sorted(member_edges):
        if _label_edge(e, member_edges, strokes[stroke_lookup[e]]) == "C":
            keep.add(e)
    drops = member_edges - keep

    all_nodes = {
        n
        for e in member_edges
        for n in (network.edges[e].start_node, network.edges[e].end_node)
    }
    orphans = _orphaned_connection_nodes(
        all_nodes, network, member_edges, keep, edit, drops
    )

    if len(orphans) >= 2:
        _skeletonize(
            union,
            drops,
            sorted(keep),
            orphans,
            network,
            graph,
            edit,
            skeleton_params or SkeletonParams(),
            label=f"cluster {sorted(f.id for f in faces)}",
        )
    else:
        # every junction keeps a through-going stroke; the rim and the
        # dead internal walls are redundant and can simply be dropped
        _drop_if_preservable(sorted(drops), network, graph, edit)
        leftover = {e for e in drops if e not in edit.removed_edge_ids}
        if leftover and keep:
            stranded = _orphaned_connection_nodes(
                all_nodes, network, member_edges, keep, edit, leftover
            )
            _reconnect_orphans(
                stranded,
                sorted(keep),
                leftover,
                network,
                graph,
                edit,
                label=f"cluster {sorted(f.id for f in faces)}",
            )
    return edit


def plan_edits(
    network: Network,
    groups: list[ArtifactGroup],
    ces_by_face: dict[int, CesType],
    strokes: list[Stroke],
    stroke_lookup: dict[int, int],
    skeleton_params: SkeletonParams | None = None,
) -> Edit:
    """Plan all group edits against one shared connectivity guard."""
    graph = connectivity_graph(network)
    total = Edit()
    for group in groups:
        if group.kind == "isolate":
            face = group.faces[0]
            edit = simplify_isolate(
                face,
                ces_by_face[face.id],
                network,
                strokes,
                stroke_lookup,
                skeleton_params,
                graph,
            )
        elif group.kind == "pair":
            edit = simplify_pair(
                group.faces,
                ces_by_face,
                network,
                strokes,
                stroke_lookup,
                skeleton_params,
                graph,
            )
        else:
            edit = simplify_cluster(
                group.faces, network, strokes, stroke_lookup, skeleton_params, graph
            )
        total.merge_in(edit)
    return total


def apply_edit(network: Network, edit: Edit) -> Network:
    """Materialize an edit into a new network."""
    if edit.is_noop:
        return network
    records = []
    for eid in sorted(network.edges):
        if eid in edit.removed_edge_ids:
            continue
        edge = network.edges[eid]
        coords = edge.coords
        status = edge.status
        changed = False
        if edge.start_node in edit.moved_nodes:
            coords = coords.copy()
            coords[0] = edit.moved_nodes[edge.start_node]
            changed = True
        if edge.end_node in edit.moved_nodes:
            if not changed:
                coords = coords.copy()
            coords[-1] = edit.moved_nodes[edge.end_node]
            changed = True
        if changed:
            coords = dedupe_consecutive(coords)
            if len(coords) < 2:
                continue
            if status == STATUS_ORIGINAL:
                status = STATUS_EXTENDED
        records.append((eid, coords, edge.attributes, status))
    next_id = network.next_edge_id()
    for added in edit.added_edges:
        coords = dedupe_consecutive(np.asarray(added.coords, dtype=float))
        if len(coords) < 2:
            continue
        records.append((next_id, coords, dict(added.attributes), added.status))
        next_id += 1
    return Network.from_records(records, network.snap_epsilon)
