import numpy as np
import pytest
from shapely.geometry import LineString, MultiLineString, Polygon, box

from streetmorph import SkeletonError, SkeletonParams, voronoi_skeleton


def total_length(branches) -> float:
    return sum(LineString(b).length for b in branches)


def endpoints(branches):
    pts = set()
    for b in branches:
        pts.add(tuple(np.round(b[0], 6)))
        pts.add(tuple(np.round(b[-1], 6)))
    return pts


def test_rectangle_centerline_between_two_ends():
    poly = box(0, 0, 100, 10)
    ends = [np.array([0.0, 5.0]), np.array([100.0, 5.0])]
    branches = voronoi_skeleton(poly, ends)
    assert branches
    assert total_length(branches) == pytest.approx(100.0, rel=0.02)
    pts = endpoints(branches)
    assert (0.0, 5.0) in pts and (100.0, 5.0) in pts
    merged = MultiLineString([LineString(b) for b in branches])
    assert poly.buffer(1e-6).covers(merged)
    # the centerline hugs the long axis
    ys = np.vstack(branches)[:, 1]
    assert np.all(np.abs(ys - 5.0) < 2.0)


def test_three_way_junction_connects_all_nodes():
    # T-shaped polygon with connection nodes at the three tips
    poly = Polygon(
        [
            (0, 45),
            (100, 45),
            (100, 0),
            (110, 0),
            (110, 45),
            (210, 45),
            (210, 55),
            (110, 55),
            (110, 100),
            (100, 100),
            (100, 55),
            (0, 55),
        ]
    )
    nodes = [
        np.array([0.0, 50.0]),
        np.array([210.0, 50.0]),
        np.array([105.0, 0.0]),
        np.array([105.0, 100.0]),
    ]
    branches = voronoi_skeleton(poly, nodes)
    pts = endpoints(branches)
    for node in nodes:
        assert tuple(np.round(node, 6)) in pts
    # connectivity: walking the branch graph reaches every connection node
    import networkx as nx

    g = nx.Graph()
    for b in branches:
        for a, c in zip(b[:-1], b[1:]):
            g.add_edge(tuple(np.round(a, 6)), tuple(np.round(c, 6)))
    comp = nx.node_connected_component(g, (0.0, 50.0))
    for node in nodes:
        assert tuple(np.round(node, 6)) in comp


def test_skeleton_stays_inside_polygon():
    # bent sliver
    poly = Polygon([(0, 0), (100, 0), (100, 100), (92, 100), (92, 8), (0, 8)])
    nodes = [np.array([0.0, 4.0]), np.array([96.0, 100.0])]
    branches = voronoi_skeleton(poly, nodes)
    merged = MultiLineString([LineString(b) for b in branches])
    assert poly.buffer(1e-6).covers(merged)
    assert total_length(merged.geoms) > 150.0


def test_internal_line_becomes_a_source():
    # a kept street crosses the polygon; the skeleton must attach to it
    poly = box(0, 0, 100, 40)
    nodes = [np.array([0.0, 20.0]), np.array([100.0, 20.0])]
    internal = [np.array([(60.0, 0.0), (60.0, 40.0)])]
    branches = voronoi_skeleton(poly, nodes, internal_lines=internal)
    merged = MultiLineString([LineString(b) for b in branches])
    keep = LineString(internal[0])
    assert merged.distance(keep) < 1e-6
    pts = endpoints(branches)
    assert (0.0, 20.0) in pts and (100.0, 20.0) in pts


def test_internal_groups_share_one_connector():
    poly = box(0, 0, 100, 40)
    nodes = [np.array([0.0, 20.0]), np.array([100.0, 10.0])]
    # an L of two touching kept edges: one group, one backstop connector
    internal = [
        np.array([(60.0, 0.0), (60.0, 25.0)]),
        np.array([(60.0, 25.0), (100.0, 25.0)]),
    ]
    branches = voronoi_skeleton(poly, nodes, internal_lines=internal, internal_groups=[0, 0])
    merged = MultiLineString([LineString(b) for b in branches])
    assert merged.distance(MultiLineString([LineString(i) for i in internal])) < 1e-6
    with pytest.raises(ValueError):
        voronoi_skeleton(poly, nodes, internal_lines=internal, internal_groups=[0])


def test_degenerate_polygon_raises():
    tiny = Polygon([(0, 0), (1e-4, 0), (1e-4, 1e-4)])
    with pytest.raises(SkeletonError):
        voronoi_skeleton(tiny, [np.array([0.0, 0.0])], SkeletonParams(segmentation_density=1.0))


def test_params_validation():
    with pytest.raises(ValueError):
        SkeletonParams(segmentation_density=0.0)
    with pytest.raises(ValueError):
        SkeletonParams(segmentation_density=-1.0)
