"""Topological verification and adaptation.

Four requirements are enforced before (and after) simplification:

1. every endpoint-on-interior touch carries a shared node,
2. no degree-2 (interstitial) nodes,
3. no duplicated geometries,
4. no two nodes within a small tolerance of each other.

Requirement 4 is solved by average-linkage agglomerative clustering of the
node set, which avoids the cluster chaining a naive radius merge would
produce.  Interior-interior crossings (bridges, tunnels) are deliberately
left unnoded.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial import cKDTree
from shapely.geometry import Point

from .geometry import dedupe_consecutive, point_segment_distance
from .model import (
    STATUS_EXTENDED,
    Edge,
    Network,
)


@dataclass
class ConsolidationParams:
    """Node consolidation settings; linkage is fixed as average linkage."""

    tolerance: float = 2.0

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def induce_intersection_nodes(network: Network) -> Network:
    """Split edges wherever another edge's endpoint lies on their interior.

    Crossings where neither geometry ends are left untouched; they may be
    genuine non-planar intersections.
    """
    eps = max(network.snap_epsilon, 1e-12)
    if not network.edges:
        return network
    node_items = sorted(network.nodes.items())
    points = [Point(n.coordinate) for _, n in node_items]
    tree = network.spatial_index
    ids = network.tree_edge_ids
    hit_pts, hit_edges = tree.query(points, predicate="dwithin", distance=eps * 2)

    splits: dict[int, list[tuple[int, float, np.ndarray]]] = {}
    for pi, ti in zip(hit_pts.tolist(), hit_edges.tolist()):
        nid, node = node_items[pi]
        eid = ids[ti]
        edge = network.edges[eid]
        if edge.start_node == nid or edge.end_node == nid:
            continue
        p = np.asarray(node.coordinate)
        if (
            np.hypot(*(p - edge.coords[0])) <= eps
            or np.hypot(*(p - edge.coords[-1])) <= eps
        ):
            continue
        best = None
        for si, (a, b) in enumerate(zip(edge.coords[:-1], edge.coords[1:])):
            dist, t = point_segment_distance(p, a, b)
            if best is None or dist < best[0]:
                best = (dist, si, t)
        if best is not None and best[0] <= eps:
            splits.setdefault(eid, []).append((best[1], best[2], p))

    if not splits:
        return network

    records = []
    next_id = network.next_edge_id()
    for eid in sorted(network.edges):
        edge = network.edges[eid]
        if eid not in splits:
            records.append((eid, edge.coords, edge.attributes, edge.status))
            continue
        cuts = sorted(splits[eid], key=lambda s: (s[0], s[1]))
        parts = _split_polyline(edge.coords, cuts, eps)
        for k, part in enumerate(parts):
            pid = eid if k == 0 else next_id
            if k > 0:
                next_id += 1
            records.append((pid, part, dict(edge.attributes), edge.status))
    return Network.from_records(records, network.snap_epsilon)


def _split_polyline(coords, cuts, eps):
    parts = []
    current = [coords[0]]
    ci = 0
    for si in range(len(coords) - 1):
        seg_cuts = []
        while ci < len(cuts) and cuts[ci][0] == si:
            seg_cuts.append(cuts[ci])
            ci += 1
        for _, _, p in seg_cuts:
            if np.hypot(*(p - current[-1])) <= eps:
                current[-1] = p
            else:
                current.append(p)
            if len(current) >= 2:
                parts.append(np.array(current))
            current = [p]
        nxt = coords[si + 1]
        if np.hypot(*(nxt - current[-1])) > 0:
            current.append(nxt)
    if len(current) >= 2:
        parts.append(np.array(current))
    return [dedupe_consecutive(p) for p in parts if len(dedupe_consecutive(p)) >= 2]


def drop_duplicate_edges(network: Network) -> Network:
    """Keep one edge per identical geometry (up to vertex-order reversal)."""
    seen: dict[bytes, int] = {}
    drops = set()
    for eid in sorted(network.edges):
        coords = network.edges[eid].coords
        fwd = coords.tobytes()
        rev = coords[::-1].copy().tobytes()
        key = min(fwd, rev)
        if key in seen:
            drops.add(eid)
        else:
            seen[key] = eid
    if not drops:
        return network
    records = [
        (eid, e.coords, e.attributes, e.status)
        for eid, e in sorted(network.edges.items())
        if eid not in drops
    ]
    return Network.from_records(records, network.snap_epsilon)


def _merge_attribute_bags(bags: list[dict]) -> dict:
    merged: dict = {}
    for bag in bags:
        for key, value in bag.items():
            slot = merged.setdefault(key, [])
            if isinstance(value, list):
                slot.extend(value)
            else:
                slot.append(value)
    return merged


def _merge_status(statuses: list[str]) -> str:
    uniq = set(statuses)
    if len(uniq) == 1:
        return statuses[0]
    return STATUS_EXTENDED


def remove_interstitial_nodes(network: Network) -> Network:
    """Merge edges across degree-2 nodes.

    Closed loops keep a single (arbitrary but deterministic) start node;
    attribute bags of merged edges are concatenated into list values.
    """
    deg2 = {
        nid
        for nid, inc in network.incidence.items()
        if len(inc) == 2 and inc[0][0] != inc[1][0]
    }
    if not deg2:
        return network

    used: set[int] = set()
    records = []

    def continuation(nid: int, current: int) -> tuple[int, bool] | None:
        entries = [(e, end) for e, end in network.incidence[nid] if e != current]
        if len(entries) != 1:
            return None
        eid, end = entries[0]
        # end == 0 means the next edge starts at nid (walk it forward)
        return eid, end == 0

    for start_eid in sorted(network.edges):
        if start_eid in used:
            continue
        edge = network.edges[start_eid]
        if edge.start_node not in deg2 and edge.end_node not in deg2:
            used.add(start_eid)
            records.append((start_eid, edge.coords, edge.attributes, edge.status))
            continue

        chain: list[tuple[int, bool]] = [(start_eid, True)]
        members = {start_eid}
        is_ring = False
        # extend past the end node
        back = edge.end_node
        while back in deg2:
            nxt = continuation(back, chain[-1][0])
            if nxt is None:
                break
            nxt_eid, fwd = nxt
            if nxt_eid in members:
                is_ring = True
                break
            chain.append((nxt_eid, fwd))
            members.add(nxt_eid)
            e = network.edges[nxt_eid]
            back = e.end_node if fwd else e.start_node
        if not is_ring:
            front = edge.start_node
            while front in deg2:
                prv = continuation(front, chain[0][0])
                if prv is None:
                    break
                prv_eid, starts_here = prv
                if prv_eid in members:
                    is_ring = True
                    break
                # walking backwards: if the previous edge *ends* at front we
                # keep it forward, otherwise flip it
                chain.insert(0, (prv_eid, not starts_here))
                members.add(prv_eid)
                e = network.edges[prv_eid]
                front = e.start_node if not starts_here else e.end_node

        used.update(members)
        if len(chain) == 1:
            records.append((start_eid, edge.coords, edge.attributes, edge.status))
            continue
        if not is_ring and chain[0][0] > chain[-1][0]:
            chain = [(eid, not fwd) for eid, fwd in reversed(chain)]
        pieces = []
        for i, (eid, fwd) in enumerate(chain):
            coords = network.edges[eid].coords
            if not fwd:
                coords = coords[::-1]
            pieces.append(coords if i == 0 else coords[1:])
        merged_coords = np.vstack(pieces)
        bags = [network.edges[eid].attributes for eid, _ in chain]
        statuses = [network.edges[eid].status for eid, _ in chain]
        new_id = min(eid for eid, _ in chain)
        records.append(
            (new_id, merged_coords, _merge_attribute_bags(bags), _merge_status(statuses))
        )

    records.sort(key=lambda r: r[0])
    return Network.from_records(records, network.snap_epsilon)


def cluster_nodes_average_linkage(
    coords: np.ndarray, tolerance: float
) -> list[list[int]]:
    """Group point indices by average-linkage clustering cut at ``tolerance``.

    Only groups of size >= 2 are returned.  Points are pre-partitioned by
    single-linkage connectivity (a superset of any average-linkage cluster),
    so city-scale inputs never see a quadratic distance matrix.
    """
    n = len(coords)
    if n < 2:
        return []
    tree = cKDTree(coords)
    pairs = tree.query_pairs(r=tolerance, output_type="ndarray")
    if len(pairs) == 0:
        return []
    parent = np.arange(n)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    components: dict[int, list[int]] = {}
    for i in range(n):
        components.setdefault(find(i), []).append(i)

    groups: list[list[int]] = []
    for comp in components.values():
        if len(comp) < 2:
            continue
        comp = sorted(comp)
        if len(comp) == 2:
            groups.append(comp)
            continue
        z = linkage(coords[comp], method="average")
        labels = fcluster(z, t=tolerance, criterion="distance")
        sub: dict[int, list[int]] = {}
        for idx, lab in zip(comp, labels):
            sub.setdefault(int(lab), []).append(idx)
        groups.extend(sorted(g) for g in sub.values() if len(g) >= 2)
    groups.sort()
    return groups


def consolidate_nodes(network: Network, params: ConsolidationParams | None = None) -> Network:
    """Merge node clusters found by average linkage cut at the tolerance.

    Each multi-node cluster becomes one node at the arithmetic mean of the
    member coordinates; incident edges are re-terminated there.  Degree-2
    nodes and zero-length edges produced by the merge are cleaned up.
    """
    params = params or ConsolidationParams()
    if len(network.nodes) < 2:
        return network
    node_ids = sorted(network.nodes)
    coords = np.array([network.nodes[nid].coordinate for nid in node_ids])
    groups = cluster_nodes_average_linkage(coords, params.tolerance)
    if not groups:
        return network

    target: dict[int, np.ndarray] = {}
    for group in groups:
        centroid = coords[group].mean(axis=0)
        for idx in group:
            target[node_ids[idx]] = centroid

    records = []
    for eid in sorted(network.edges):
        edge = network.edges[eid]
        new_coords = edge.coords
        changed = False
        if edge.start_node in target:
            new_coords = new_coords.copy()
            new_coords[0] = target[edge.start_node]
            changed = True
        if edge.end_node in target:
            if not changed:
                new_coords = new_coords.copy()
            new_coords[-1] = target[edge.end_node]
            changed = True
        new_coords = dedupe_consecutive(new_coords)
        if len(new_coords) < 2:
            continue  # collapsed to zero length
        records.append((eid, new_coords, edge.attributes, edge.status))
    merged = Network.from_records(records, network.snap_epsilon)
    return remove_interstitial_nodes(merged)


def topology_violations(
    network: Network, params: ConsolidationParams | None = None
) -> list[str]:
    """Human-readable list of violated topology requirements (empty = clean)."""
    params = params or ConsolidationParams()
    problems = []
    from .faces import find_unnoded_touches

    touches = find_unnoded_touches(network)
    if touches:
        problems.append(f"unnoded endpoint touches: {touches[:5]}")
    deg2 = [
        nid
        for nid, inc in network.incidence.items()
        if len(inc) == 2 and inc[0][0] != inc[1][0]
    ]
    if deg2:
        problems.append(f"degree-2 nodes: {len(deg2)}")
    seen = set()
    dups = 0
    for eid in sorted(network.edges):
        coords = network.edges[eid].coords
        key = min(coords.tobytes(), coords[::-1].copy().tobytes())
        if key in seen:
            dups += 1
        seen.add(key)
    if dups:
        problems.append(f"duplicate geometries: {dups}")
    if len(network.nodes) >= 2:
        pts = np.array([n.coordinate for n in network.nodes.values()])
        tree = cKDTree(pts)
        close = tree.query_pairs(r=params.tolerance)
        if close:
            problems.append(f"node pairs within tolerance: {len(close)}")
    return problems


def fix_topology(
    network: Network,
    params: ConsolidationParams | None = None,
    max_rounds: int = 10,
) -> Network:
    """Run the four topology fixes until every requirement holds.

    Idempotent: a network that already satisfies the requirements comes
    back unchanged (same object).
    """
    params = params or ConsolidationParams()
    current = network
    for _ in range(max_rounds):
        if not topology_violations(current, params):
            return current
        current = induce_intersection_nodes(current)
        current = drop_duplicate_edges(current)
        current = remove_interstitial_nodes(current)
        current = consolidate_nodes(current, params)
    if topology_violations(current, params):  # pragma: no cover
        raise RuntimeError("topology fix did not converge")
    return current
