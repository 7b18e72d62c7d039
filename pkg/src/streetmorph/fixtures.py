"""Synthetic street-network test corpus.

Each case reproduces a configuration that a cartographer would clean up
by hand — dual carriageways, roundabouts, interchange ramps, junk
geometry — together with the manually drawn target network and a list
of machine-checkable goal predicates.  The predicates are structural
(junction counts, connectivity, face counts, length budgets) rather
than coordinate-exact, and every predicate holds on the hand-drawn
target, so they double as a self-check of the corpus itself.

Three cases are exempt from strict goal checking because the input
encodes grade-separated geometry that carries no level information:
crossings drawn on different levels share no node, and the only honest
requirement is that they stay unmerged and connectivity survives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx
import numpy as np
from shapely.geometry import Polygon

from .faces import polygonize
from .model import Network, build_network

Predicate = tuple[str, Callable[[Network], bool]]


@dataclass
class FixtureCase:
    name: str
    network: Network
    goal: Network
    predicates: list[Predicate]
    mask: list[Polygon] | None = None
    gated: bool = True
    description: str = ""


# ---------------------------------------------------------------------------
# geometry helpers

def _arc(center, r, a0, a1, steps) -> np.ndarray:
    """Circular arc from a0 to a1 degrees, endpoints included."""
    cx, cy = center
    angles = np.radians(np.linspace(a0, a1, steps + 1))
    return np.column_stack([cx + r * np.cos(angles), cy + r * np.sin(angles)])


def _ring(center, r, n, start=0.0) -> np.ndarray:
    """Closed regular n-gon (first point repeated at the end)."""
    pts = _arc(center, r, start, start + 360.0, n)
    pts[-1] = pts[0]
    return pts


def _ellipse(center, a, b, n, start=0.0) -> np.ndarray:
    cx, cy = center
    angles = np.radians(np.linspace(start, start + 360.0, n + 1))
    pts = np.column_stack([cx + a * np.cos(angles), cy + b * np.sin(angles)])
    pts[-1] = pts[0]
    return pts


def _net(lines) -> Network:
    return build_network([np.asarray(line, dtype=float) for line in lines])


# ---------------------------------------------------------------------------
# predicate helpers

def _graph(net: Network) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(net.nodes)
    for eid, edge in net.edges.items():
        g.add_edge(edge.start_node, edge.end_node, key=eid)
    return g


def _nearest_node(net: Network, xy, tol) -> int | None:
    best = None
    for nid, node in net.nodes.items():
        d = math.hypot(node.coordinate[0] - xy[0], node.coordinate[1] - xy[1])
        if d <= tol and (best is None or d < best[0]):
            best = (d, nid)
    return None if best is None else best[1]


def _face_count(net: Network) -> int:
    return len(polygonize(net, validate=False))


def _edge_count(count: int) -> Predicate:
    return (f"network reduced to {count} edge(s)", lambda net: len(net.edges) == count)


def _no_faces() -> Predicate:
    return ("no enclosed faces remain", lambda net: _face_count(net) == 0)


def _face_count_is(count: int) -> Predicate:
    return (f"{count} enclosed face(s)", lambda net: _face_count(net) == count)


def _max_degree(limit: int) -> Predicate:
    return (
        f"no node exceeds degree {limit}",
        lambda net: all(n.degree <= limit for n in net.nodes.values()),
    )


def _single_junction(degree: int, xy, radius: float) -> Predicate:
    def check(net: Network) -> bool:
        junctions = [n for n in net.nodes.values() if n.degree >= 3]
        if len(junctions) != 1:
            return False
        node = junctions[0]
        if node.degree != degree:
            return False
        return math.hypot(node.coordinate[0] - xy[0], node.coordinate[1] - xy[1]) <= radius

    return (
        f"exactly one junction, degree {degree}, within {radius:g} m of {tuple(xy)}",
        check,
    )


def _junction_near(xy, radius: float) -> Predicate:
    def check(net: Network) -> bool:
        return any(
            n.degree >= 3
            and math.hypot(n.coordinate[0] - xy[0], n.coordinate[1] - xy[1]) <= radius
            for n in net.nodes.values()
        )

    return (f"a junction lies within {radius:g} m of {tuple(xy)}", check)


def _tips_connected(coords, tol=1e-6) -> Predicate:
    coords = [tuple(map(float, c)) for c in coords]

    def check(net: Network) -> bool:
        nids = [_nearest_node(net, c, tol) for c in coords]
        if any(n is None for n in nids):
            return False
        g = _graph(net)
        first = nids[0]
        return all(nx.has_path(g, first, n) for n in nids[1:])

    return (f"endpoints {coords} all present and interconnected", check)


def _length_between(lo: float, hi: float) -> Predicate:
    return (
        f"total length within [{lo:g}, {hi:g}] m",
        lambda net: lo <= net.total_length <= hi,
    )


def _component_count(count: int) -> Predicate:
    return (
        f"{count} connected component(s)",
        lambda net: nx.number_connected_components(_graph(net)) == count,
    )


def _has_exact_line(coords) -> Predicate:
    target = np.asarray(coords, dtype=float)

    def check(net: Network) -> bool:
        for edge in net.edges.values():
            if edge.coords.shape == target.shape and (
                np.array_equal(edge.coords, target)
                or np.array_equal(edge.coords[::-1], target)
            ):
                return True
        return False

    return (f"line {coords[0]}..{coords[-1]} survives bit-identical", check)


def _no_duplicate_geometries() -> Predicate:
    def check(net: Network) -> bool:
        seen = set()
        for edge in net.edges.values():
            key = min(edge.coords.tobytes(), edge.coords[::-1].copy().tobytes())
            if key in seen:
                return False
            seen.add(key)
        return True

    return ("no duplicate edge geometries", check)


def _same_edge_geometries(reference: Network) -> Predicate:
    ref = sorted(
        min(e.coords.tobytes(), e.coords[::-1].copy().tobytes())
        for e in reference.edges.values()
    )

    def check(net: Network) -> bool:
        got = sorted(
            min(e.coords.tobytes(), e.coords[::-1].copy().tobytes())
            for e in net.edges.values()
        )
        return got == ref

    return ("edge geometries unchanged from the input", check)


# ---------------------------------------------------------------------------
# case builders

def _case_parallel_edges() -> FixtureCase:
    lines = [
        [(-50, 0), (0, 0)],
        [(0, 0), (20, 5), (480, 5), (500, 0)],
        [(0, 0), (20, -5), (480, -5), (500, 0)],
        [(500, 0), (550, 0)],
    ]
    goal = _net([[(-50, 0), (0, 0), (500, 0), (550, 0)]])
    preds = [
        _edge_count(1),
        _max_degree(2),
        _tips_connected([(-50, 0), (550, 0)]),
        _length_between(595, 605),
        _no_faces(),
    ]
    return FixtureCase(
        name="Parallel edges",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Dual carriageway between two single-street approaches; "
        "the two rails collapse onto one centerline.",
    )


def _case_roundabouts() -> FixtureCase:
    lines = [
        _ring((0, 0), 15.0, 32),
        [(45, 0), (15, 0)],
        [(0, 45), (0, 15)],
        [(-45, 0), (-15, 0)],
        [(0, -45), (0, -15)],
    ]
    goal = _net(
        [
            [(45, 0), (0, 0)],
            [(0, 45), (0, 0)],
            [(-45, 0), (0, 0)],
            [(0, -45), (0, 0)],
        ]
    )
    preds = [
        _single_junction(4, (0, 0), 5.0),
        _edge_count(4),
        _tips_connected([(45, 0), (0, 45), (-45, 0), (0, -45)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Roundabouts",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Ring with four radial approaches; the ring becomes a "
        "single intersection at its centre.",
    )


def _case_diverging_streets() -> FixtureCase:
    lines = [
        [(-100, 0), (0, 0)],
        [(0, 0), (100, 0)],
        [(0, -100), (0, 0)],
        [(0, 0), (0, 100)],
        [(15, 0), (0, 15)],
    ]
    goal = _net(
        [
            [(-100, 0), (0, 0)],
            [(0, 0), (100, 0)],
            [(0, -100), (0, 0)],
            [(0, 0), (0, 100)],
        ]
    )
    preds = [
        _single_junction(4, (0, 0), 1.0),
        _edge_count(4),
        _tips_connected([(-100, 0), (100, 0), (0, -100), (0, 100)]),
        _length_between(399, 401),
        _no_faces(),
    ]
    return FixtureCase(
        name="Diverging streets",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Two crossing main streets with a short cut-corner link; "
        "the link is deleted, the crossing stays.",
    )


def _case_t_junction() -> FixtureCase:
    lines = [
        [(0, -100), (0, 100)],
        [(-100, 0), (-30, 0)],
        [(-30, 0), (0, 8)],
        [(-30, 0), (0, -8)],
    ]
    goal = _net(
        [
            [(0, -100), (0, 0)],
            [(0, 0), (0, 100)],
            [(-100, 0), (-30, 0), (0, 0)],
        ]
    )
    preds = [
        _single_junction(3, (0, 0), 10.0),
        _edge_count(3),
        _tips_connected([(-100, 0), (0, -100), (0, 100)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="T-junction",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A street that splits into two slip lanes just before a "
        "T-junction; both lanes are deleted and the street reconnects "
        "straight onto the crossing street.",
    )


def _case_simple_intersection() -> FixtureCase:
    lines = [
        [(-220, 0), (-140, 0)],
        [(-140, 0), (-80, 6)],
        [(-140, 0), (-80, -6)],
        [(-80, 6), (0, 6)],
        [(-80, -6), (0, -6)],
        [(0, 6), (80, 6)],
        [(0, -6), (80, -6)],
        [(80, 6), (140, 0)],
        [(80, -6), (140, 0)],
        [(140, 0), (220, 0)],
        [(0, -80), (0, -6)],
        [(0, -6), (0, 6)],
        [(0, 6), (0, 80)],
    ]
    goal = _net(
        [
            [(-220, 0), (-140, 0), (-80, 6), (0, 6)],
            [(0, 6), (80, 6), (140, 0), (220, 0)],
            [(0, -80), (0, 6)],
            [(0, 6), (0, 80)],
        ]
    )
    preds = [
        _single_junction(4, (0, 0), 10.0),
        _edge_count(4),
        _tips_connected([(-220, 0), (220, 0), (0, -80), (0, 80)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Simple intersection",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A dual carriageway crossed mid-way by a single street; "
        "the redundant rail disappears, leaving one four-way crossing.",
    )


def _case_cross_shaped_intersection() -> FixtureCase:
    lines = [
        [(-220, 0), (-140, 0)],
        [(140, 0), (220, 0)],
        [(0, 140), (0, 220)],
        [(0, -140), (0, -220)],
        [(-140, 0), (-80, 6)],
        [(-140, 0), (-80, -6)],
        [(80, 6), (140, 0)],
        [(80, -6), (140, 0)],
        [(-6, 80), (0, 140)],
        [(6, 80), (0, 140)],
        [(-6, -80), (0, -140)],
        [(6, -80), (0, -140)],
        [(-80, 6), (-6, 6)],
        [(-6, 6), (6, 6)],
        [(6, 6), (80, 6)],
        [(-80, -6), (-6, -6)],
        [(-6, -6), (6, -6)],
        [(6, -6), (80, -6)],
        [(-6, -80), (-6, -6)],
        [(-6, -6), (-6, 6)],
        [(-6, 6), (-6, 80)],
        [(6, -80), (6, -6)],
        [(6, -6), (6, 6)],
        [(6, 6), (6, 80)],
    ]
    goal = _net(
        [
            [(-220, 0), (0, 0)],
            [(0, 0), (220, 0)],
            [(0, -220), (0, 0)],
            [(0, 0), (0, 220)],
        ]
    )
    preds = [
        _tips_connected([(-220, 0), (220, 0), (0, 220), (0, -220)]),
        _junction_near((0, 0), 20.0),
        _no_faces(),
        _length_between(700, 1150),
    ]
    return FixtureCase(
        name="A cross-shaped intersection",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Both streets run dual through the crossing, enclosing a "
        "block of five faces; everything collapses onto crossing "
        "centerlines.",
    )


def _case_intersection() -> FixtureCase:
    angles = [0.0, 72.0, 144.0, 216.0, 288.0]
    lines = [_ring((0, 0), 6.0, 10)]
    for a in angles:
        rad = math.radians(a)
        outer = (60 * math.cos(rad), 60 * math.sin(rad))
        inner = (6 * math.cos(rad), 6 * math.sin(rad))
        lines.append([outer, inner])
    goal_lines = []
    for a in angles:
        rad = math.radians(a)
        outer = (60 * math.cos(rad), 60 * math.sin(rad))
        goal_lines.append([outer, (0, 0)])
    tips = [line[0] for line in goal_lines]
    preds = [
        _single_junction(5, (0, 0), 3.0),
        _edge_count(5),
        _tips_connected(tips),
        _no_faces(),
    ]
    return FixtureCase(
        name="Intersection",
        network=_net(lines),
        goal=_net(goal_lines),
        predicates=preds,
        description="Five streets end on a small ring instead of meeting in "
        "a point; the ring collapses to its centroid and all five connect "
        "there.",
    )


def _case_side_edges() -> FixtureCase:
    lines = [
        [(0, 0), (400, 0)],
        [(100, 0), (150, 25), (250, 25), (300, 0)],
    ]
    goal = _net([[(0, 0), (400, 0)]])
    preds = [
        _edge_count(1),
        _max_degree(2),
        _tips_connected([(0, 0), (400, 0)]),
        _length_between(399, 401),
        _no_faces(),
    ]
    return FixtureCase(
        name="Side edges",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A service loop that leaves a street and rejoins it "
        "further on; the loop is deleted.",
    )


def _case_cul_de_sac() -> FixtureCase:
    lines = [
        [(0, 0), (100, 0)],
        _ring((112, 0), 12.0, 16, start=180.0),
    ]
    goal = _net([[(0, 0), (124, 0)]])
    preds = [
        _edge_count(1),
        _max_degree(1),
        _tips_connected([(0, 0), (124, 0)]),
        _length_between(123, 125),
        _no_faces(),
    ]
    return FixtureCase(
        name="Cul-de-sac",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Dead-end street with a turning circle; the circle is "
        "deleted and the street snaps to its most distant point.",
    )


def _case_ovalabout() -> FixtureCase:
    lines = [
        _ellipse((0, 0), 30.0, 12.0, 24),
        [(70, 0), (30, 0)],
        [(0, 40), (0, 12)],
        [(-70, 0), (-30, 0)],
        [(0, -40), (0, -12)],
    ]
    goal = _net(
        [
            [(70, 0), (0, 0)],
            [(0, 40), (0, 0)],
            [(-70, 0), (0, 0)],
            [(0, -40), (0, 0)],
        ]
    )
    preds = [
        _single_junction(4, (0, 0), 5.0),
        _edge_count(4),
        _tips_connected([(70, 0), (0, 40), (-70, 0), (0, -40)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Ovalabout",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Elongated roundabout; same treatment as the circular "
        "one, the streets meet at the centre.",
    )


def _case_cloverleaf() -> FixtureCase:
    lines = [
        [(-100, 0), (0, 0)],
        [(0, 0), (100, 0)],
        [(0, -100), (0, 0)],
        [(0, 0), (0, 100)],
        _arc((0, 0), 40.0, 0.0, 90.0, 6),
        _arc((0, 0), 40.0, 90.0, 180.0, 6),
        _arc((0, 0), 40.0, 180.0, 270.0, 6),
        _arc((0, 0), 40.0, 270.0, 360.0, 6),
    ]
    goal = _net(
        [
            [(-100, 0), (0, 0)],
            [(0, 0), (100, 0)],
            [(0, -100), (0, 0)],
            [(0, 0), (0, 100)],
        ]
    )
    preds = [
        _single_junction(4, (0, 0), 1.0),
        _edge_count(4),
        _tips_connected([(-100, 0), (100, 0), (0, -100), (0, 100)]),
        _length_between(399, 401),
        _no_faces(),
    ]
    return FixtureCase(
        name="Cloverleaf interchange",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Two crossing roads with four loop ramps; every "
        "direction is reachable through the crossing alone, so the ramps "
        "are deleted.",
    )


def _case_multi_level_carriageway() -> FixtureCase:
    crossing = [(250, -80), (250, 80)]
    lines = [
        [(-50, 0), (0, 0)],
        [(0, 0), (20, 5), (480, 5), (500, 0)],
        [(0, 0), (20, -5), (480, -5), (500, 0)],
        [(500, 0), (550, 0)],
        crossing,
    ]
    goal = _net([[(-50, 0), (0, 0), (500, 0), (550, 0)], crossing])
    preds = [
        _component_count(2),
        _has_exact_line(crossing),
        _tips_connected([(-50, 0), (550, 0)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Multi-level carriageway",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        gated=False,
        description="A street passes under the carriageway without a "
        "junction; the crossing carries no level data, so it must stay "
        "unmerged while the carriageway itself still collapses.",
    )


def _case_special_case_roundabouts() -> FixtureCase:
    lines = [
        _arc((0, 0), 15.0, 0.0, 90.0, 8),
        _arc((0, 0), 15.0, 90.0, 180.0, 8),
        _arc((0, 0), 15.0, 180.0, 270.0, 8),
        _arc((0, 0), 15.0, 270.0, 360.0, 8),
        [(45, 0), (15, 0)],
        [(0, 45), (0, 15)],
        [(-45, 0), (-15, 0)],
        [(0, -45), (0, -15)],
    ]
    net = _net(lines)
    mask = [Polygon([(8, 8), (-8, 8), (-8, -8), (8, -8)])]
    preds = [
        _same_edge_geometries(net),
        _face_count_is(1),
        _tips_connected([(45, 0), (0, 45), (-45, 0), (0, -45)]),
    ]
    return FixtureCase(
        name="Special case roundabouts",
        network=net,
        goal=_net(lines),
        predicates=preds,
        mask=mask,
        description="A roundabout enclosing a building footprint supplied "
        "as an exclusion mask; nothing may change.",
    )


def _case_linking_edge() -> FixtureCase:
    lines = [
        [(-50, 0), (0, 0)],
        [(0, 0), (20, 5), (480, 5), (500, 0)],
        [(0, 0), (20, -5), (480, -5), (500, 0)],
        [(500, 0), (550, 0)],
        [(200, 5), (200, -5)],
        [(300, 5), (300, -5)],
    ]
    goal = _net([[(-50, 0), (0, 0), (500, 0), (550, 0)]])
    preds = [
        _edge_count(1),
        _max_degree(2),
        _tips_connected([(-50, 0), (550, 0)]),
        _length_between(595, 615),
        _no_faces(),
    ]
    return FixtureCase(
        name="Parallel edges connected with a linking edge",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="Dual carriageway with two cross-links; links and rails "
        "are all replaced by a single skeleton centerline.",
    )


def _case_outliers() -> FixtureCase:
    street = [(0, 0), (200, 0)]
    lines = [
        street,
        [(100, 0), (101.5, 2), (98, 2.2), (100, 0)],
        street,
    ]
    goal = _net([street])
    preds = [
        _edge_count(1),
        _no_duplicate_geometries(),
        _max_degree(2),
        _tips_connected([(0, 0), (200, 0)]),
        _length_between(199, 206),
        _no_faces(),
    ]
    return FixtureCase(
        name="Outliers",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A duplicated street and a metre-scale junk loop "
        "digitised onto it; both incorrect inputs are removed.",
    )


def _case_parallel_edges_different_levels() -> FixtureCase:
    elevated = [(-60, 20), (560, 20)]
    lines = [
        [(-50, 0), (0, 0)],
        [(0, 0), (20, 5), (480, 5), (500, 0)],
        [(0, 0), (20, -5), (480, -5), (500, 0)],
        [(500, 0), (550, 0)],
        elevated,
    ]
    goal = _net([[(-50, 0), (0, 0), (500, 0), (550, 0)], elevated])
    preds = [
        _edge_count(2),
        _component_count(2),
        _has_exact_line(elevated),
        _tips_connected([(-50, 0), (550, 0)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Parallel edges leading to different levels",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A same-level dual pair plus one grade-separated "
        "parallel that shares no junction; the pair collapses, the "
        "separated road is untouched.",
    )


def _case_roundabout_different_levels() -> FixtureCase:
    elevated = [(-60, 8), (60, 8)]
    lines = [
        _ring((0, 0), 15.0, 32),
        [(45, 0), (15, 0)],
        [(0, 45), (0, 15)],
        [(-45, 0), (-15, 0)],
        [(0, -45), (0, -15)],
        elevated,
    ]
    goal = _net(
        [
            [(45, 0), (0, 0)],
            [(0, 45), (0, 0)],
            [(-45, 0), (0, 0)],
            [(0, -45), (0, 0)],
            elevated,
        ]
    )
    preds = [
        _component_count(2),
        _has_exact_line(elevated),
        _tips_connected([(45, 0), (0, 45), (-45, 0), (0, -45)]),
    ]
    return FixtureCase(
        name="Roundabout with edges on different levels",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        gated=False,
        description="A road crosses the roundabout on a viaduct without "
        "touching it; levels must stay apart while connectivity survives.",
    )


def _case_partial_cloverleaf() -> FixtureCase:
    lines = [
        [(-100, 0), (0, 0)],
        [(0, 0), (100, 0)],
        [(0, -100), (0, 0)],
        _arc((0, 0), 40.0, 180.0, 270.0, 6),
    ]
    goal = _net(
        [
            [(-100, 0), (0, 0)],
            [(0, 0), (100, 0)],
            [(0, -100), (0, 0)],
        ]
    )
    preds = [
        _single_junction(3, (0, 0), 1.0),
        _edge_count(3),
        _tips_connected([(-100, 0), (100, 0), (0, -100)]),
        _no_faces(),
    ]
    return FixtureCase(
        name="Partial cloverleaf interchange",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        description="A T-junction with one loop ramp; the ramp duplicates "
        "the direct turn and is deleted.",
    )


def _case_complicated_freeway() -> FixtureCase:
    lines = [
        [(-320, 0), (-260, 0)],
        [(260, 0), (320, 0)],
        [(0, -320), (0, -260)],
        [(0, 260), (0, 320)],
        [(-260, 0), (-200, 5)],
        [(-260, 0), (-200, -5)],
        [(200, 5), (260, 0)],
        [(200, -5), (260, 0)],
        [(0, -260), (-5, -200)],
        [(0, -260), (5, -200)],
        [(-5, 200), (0, 260)],
        [(5, 200), (0, 260)],
        [(-200, 5), (200, 5)],
        [(-200, -5), (200, -5)],
        [(-5, -200), (-5, 200)],
        [(5, -200), (5, 200)],
        [(150, 5), (5, 150)],
        [(-150, 5), (-5, 150)],
        [(-150, -5), (-5, -150)],
        [(150, -5), (5, -150)],
    ]
    goal = _net(
        [
            [(-320, 0), (0, 0)],
            [(0, 0), (320, 0)],
            [(0, -320), (0, 0)],
            [(0, 0), (0, 320)],
        ]
    )
    preds = [
        _component_count(1),
        _tips_connected([(-320, 0), (320, 0), (0, -320), (0, 320)]),
    ]
    return FixtureCase(
        name="Complicated freeway intersection",
        network=_net(lines),
        goal=goal,
        predicates=preds,
        gated=False,
        description="Two crossing dual freeways whose rails cross without "
        "junctions, linked only by diagonal ramps; there is no single "
        "correct drawing, connectivity just has to survive.",
    )


_BUILDERS: dict[str, Callable[[], FixtureCase]] = {
    "Parallel edges": _case_parallel_edges,
    "Roundabouts": _case_roundabouts,
    "Diverging streets": _case_diverging_streets,
    "T-junction": _case_t_junction,
    "Simple intersection": _case_simple_intersection,
    "A cross-shaped intersection": _case_cross_shaped_intersection,
    "Intersection": _case_intersection,
    "Side edges": _case_side_edges,
    "Cul-de-sac": _case_cul_de_sac,
    "Ovalabout": _case_ovalabout,
    "Cloverleaf interchange": _case_cloverleaf,
    "Multi-level carriageway": _case_multi_level_carriageway,
    "Special case roundabouts": _case_special_case_roundabouts,
    "Parallel edges connected with a linking edge": _case_linking_edge,
    "Outliers": _case_outliers,
    "Parallel edges leading to different levels": _case_parallel_edges_different_levels,
    "Roundabout with edges on different levels": _case_roundabout_different_levels,
    "Partial cloverleaf interchange": _case_partial_cloverleaf,
    "Complicated freeway intersection": _case_complicated_freeway,
}

CASE_NAMES: list[str] = list(_BUILDERS)


def generate(name: str) -> FixtureCase:
    """Build one named case from scratch; unknown names are an error."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown fixture case: {name!r}") from None
    return builder()


def all_cases() -> list[FixtureCase]:
    return [generate(name) for name in CASE_NAMES]


def gated_names() -> list[str]:
    return [name for name in CASE_NAMES if generate(name).gated]
