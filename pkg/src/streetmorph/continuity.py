"""Continuity strokes.

Edges are chained into *strokes* wherever they meet at a node with a
sufficiently straight interior angle (180 degrees = perfectly straight).
Joins are strictly mutual-best: two edge ends are chained only if each is
the other's best continuation at that node.  Ties are broken by the longer
partner and then the lower id, so results are deterministic.

``flow_mode`` (the default) treats whole edges as the unit of continuity,
so a stroke never splits an edge mid-geometry.  The legacy mode works on
individual segments instead, which reproduces the classic behaviour of
angular continuity analysis but can break an edge across strokes at a
sharp interior vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import interior_angle_deg, polyline_length
from .model import Network

UnitId = int | tuple[int, int]


@dataclass
class ContinuityParams:
    angle_threshold: float = 120.0
    flow_mode: bool = True

    def __post_init__(self):
        if not 0.0 <= self.angle_threshold <= 180.0:
            raise ValueError("angle_threshold must lie in [0, 180] degrees")


@dataclass
class Stroke:
    """A maximal chain of continuity units."""

    id: int
    units: list[tuple[UnitId, bool]]  # (unit id, traversed forward?)
    coords: np.ndarray
    is_closed: bool = False
    length: float = field(init=False)

    def __post_init__(self):
        self.length = polyline_length(self.coords)

    @property
    def edge_ids(self) -> list[int]:
        """Parent edge ids in traversal order, consecutive repeats removed."""
        out: list[int] = []
        for uid, _ in self.units:
            eid = uid if isinstance(uid, int) else uid[0]
            if not out or out[-1] != eid:
                out.append(eid)
        return out


def _units_for(network: Network, flow_mode: bool):
    """Yield (unit_id, coords) continuity units."""
    for eid in sorted(network.edges):
        coords = network.edges[eid].coords
        if flow_mode:
            yield eid, coords
        else:
            for si in range(len(coords) - 1):
                yield (eid, si), coords[si : si + 2]


def detect_strokes(network: Network, params: ContinuityParams | None = None) -> list[Stroke]:
    """Partition the network into strokes.

    Every unit (edge in flow mode, segment otherwise) belongs to exactly
    one stroke; the summed stroke length equals the network length.
    """
    params = params or ContinuityParams()
    units: dict[UnitId, np.ndarray] = dict(_units_for(network, params.flow_mode))
    if not units:
        return []

    ends_at: dict[bytes, list[tuple[UnitId, int]]] = {}
    for uid, coords in units.items():
        ends_at.setdefault(coords[0].tobytes(), []).append((uid, 0))
        ends_at.setdefault(coords[-1].tobytes(), []).append((uid, 1))

    def away_vector(uid: UnitId, end: int) -> np.ndarray:
        coords = units[uid]
        return coords[1] - coords[0] if end == 0 else coords[-2] - coords[-1]

    join: dict[tuple[UnitId, int], tuple[UnitId, int]] = {}
    for key in sorted(ends_at):
        incident = ends_at[key]
        if len(incident) < 2:
            continue
        angles: dict[tuple, float] = {}
        for i, a in enumerate(incident):
            for b in incident[i + 1 :]:
                ang = interior_angle_deg(away_vector(*a), away_vector(*b))
                angles[(a, b)] = angles[(b, a)] = ang

        def best(x):
            candidates = [
                y
                for y in incident
                if y != x and angles[(x, y)] >= params.angle_threshold
            ]
            if not candidates:
                return None
            candidates.sort(
                key=lambda y: (-angles[(x, y)], -polyline_length(units[y[0]]), y[0], y[1])
            )
            return candidates[0]

        paired: set[tuple] = set()
        for x in incident:
            if x in paired:
                continue
            y = best(x)
            if y is not None and y not in paired and best(y) == x:
                join[x] = y
                join[y] = x
                paired.update((x, y))

    return _assemble_strokes(units, join)


def _assemble_strokes(units, join):
    strokes: list[Stroke] = []
    remaining = set(units)
    for seed in sorted(units):
        if seed not in remaining:
            continue
        # walk backwards from the seed's start end to find a terminal
        cur, end = seed, 0
        is_closed = False
        for _ in range(len(units) + 1):
            partner = join.get((cur, end))
            if partner is None:
                break
            cur, end = partner[0], 1 - partner[1]
            if (cur, end) == (seed, 0):
                is_closed = True
                break
        if is_closed:
            cur, end = seed, 0

        chain: list[tuple] = []
        u, entry = cur, end
        for _ in range(len(units) + 1):
            chain.append((u, entry == 0))
            partner = join.get((u, 1 - entry))
            if partner is None:
                break
            u, entry = partner
            if is_closed and u == cur and entry == end:
                break

        pieces = []
        for i, (uid, fwd) in enumerate(chain):
            coords = units[uid] if fwd else units[uid][::-1]
            pieces.append(coords if i == 0 else coords[1:])
            remaining.discard(uid)
        strokes.append(
            Stroke(
                id=len(strokes),
                units=chain,
                coords=np.vstack(pieces),
                is_closed=is_closed,
            )
        )
    return strokes


def stroke_of_edge(strokes: list[Stroke]) -> dict[int, int]:
    """Map each edge id to its stroke id (flow-mode strokes only)."""
    lookup: dict[int, int] = {}
    for stroke in strokes:
        for uid, _ in stroke.units:
            if not isinstance(uid, int):
                raise ValueError("edge lookup requires flow-mode strokes")
            lookup[uid] = stroke.id
    return lookup
