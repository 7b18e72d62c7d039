import numpy as np

from conftest import net
from streetmorph import classify_ces, detect_strokes, polygonize, simplify
from streetmorph.continuity import stroke_of_edge
from streetmorph.pipeline import DetectionParams, SimplifyParams
from streetmorph.replace import AddedEdge, Edit, apply_edit, simplify_isolate, simplify_pair


def planned(network, face_index=0):
    """Plan the replacement of one face of the network."""
    faces = polygonize(network)
    strokes = detect_strokes(network)
    lookup = stroke_of_edge(strokes)
    face = faces[face_index]
    ces = classify_ces(face, network, strokes, lookup)
    return simplify_isolate(face, ces, network, strokes, lookup)


def test_redundant_carriageway_rail_is_dropped():
    # a through street splits into two rails around a sliver; the rail
    # that leaves the through stroke is deleted, nothing else is touched
    network = net(
        [(-200, 0), (0, 0)],
        [(0, 0), (200, 0)],
        [(0, 0), (0, 6), (200, 6), (200, 0)],
        [(200, 0), (400, 0)],
    )
    edit = planned(network)
    assert edit.removed_edge_ids == {2}
    assert edit.added_edges == []
    assert edit.moved_nodes == {}
    assert edit.warnings == []
    out = apply_edit(network, edit)
    assert sorted(out.edges) == [0, 1, 3]
    for eid in (0, 1, 3):
        assert np.array_equal(out.edges[eid].coords, network.edges[eid].coords)
        assert out.edges[eid].status == "original"


def test_face_without_through_stroke_collapses_to_centroid():
    # a block outline hanging off the network: no stroke crosses it, so
    # the whole ring fuses into one node and both streets re-terminate
    network = net(
        [(0, 0), (10, 0)],
        [(10, 0), (10, 10)],
        [(10, 10), (0, 10)],
        [(0, 10), (0, 0)],
        [(-100, 0), (0, 0)],
        [(10, 10), (60, 60)],
    )
    edit = planned(network)
    assert edit.removed_edge_ids == {0, 1, 2, 3}
    assert edit.added_edges == []
    assert set(edit.moved_nodes.values()) == {(5.0, 5.0)}
    assert len(edit.moved_nodes) == 4
    out = apply_edit(network, edit)
    assert len(out.edges) == 2
    coords = {tuple(map(tuple, e.coords)) for e in out.edges.values()}
    assert coords == {
        ((-100.0, 0.0), (5.0, 5.0)),
        ((5.0, 5.0), (60.0, 60.0)),
    }
    assert all(e.status == "extended" for e in out.edges.values())


def test_isolated_ring_is_left_alone_with_warning():
    network = net([(0, 0), (10, 0), (10, 10), (0, 10), (0, 0)])
    edit = planned(network)
    assert edit.is_noop
    assert len(edit.warnings) == 1
    assert "isolated ring" in edit.warnings[0]


def test_dead_end_loop_snaps_street_to_far_side():
    # cul-de-sac: the street keeps its bearing and lands on the loop
    # vertex farthest from where it used to stop
    theta = np.linspace(np.pi, 3 * np.pi, 17)
    loop = np.column_stack([112 + 12 * np.cos(theta), 12 * np.sin(theta)])
    network = net([(0, 0), (100, 0)], loop)
    edit = planned(network)
    assert edit.removed_edge_ids == {1}
    assert list(edit.moved_nodes.values()) == [(124.0, 0.0)]
    out = apply_edit(network, edit)
    assert len(out.edges) == 1
    (edge,) = out.edges.values()
    assert np.array_equal(edge.coords, [[0.0, 0.0], [124.0, 0.0]])
    assert edge.status == "extended"


def test_stranded_junction_gets_straight_connector():
    # a side street enters only the far rail of a dual carriageway; the
    # rail fragment holding it cannot be dropped until the junction is
    # reconnected straight onto the surviving rail
    network = net(
        [(-200, 0), (0, 0)],
        [(0, 0), (100, 0)],
        [(100, 0), (200, 0)],
        [(0, 0), (0, 6), (100, 6)],
        [(100, 6), (200, 6), (200, 0)],
        [(200, 0), (400, 0)],
        [(100, 6), (100, 100)],
    )
    edit = planned(network)
    assert edit.removed_edge_ids == {3, 4}
    assert edit.moved_nodes == {}
    assert edit.warnings == []
    assert len(edit.added_edges) == 1
    connector = edit.added_edges[0]
    assert connector.status == "extended"
    assert np.array_equal(connector.coords, [[100.0, 6.0], [100.0, 0.0]])


def test_service_loop_with_access_street_reconnects_through_pipeline():
    # both halves of the loop go; the access street is carried straight
    # down onto the main street, which gains a real junction node there
    network = net(
        [(0, 0), (100, 0), (300, 0), (400, 0)],
        [(100, 0), (150, 25), (200, 25)],
        [(200, 25), (250, 25), (300, 0)],
        [(200, 25), (200, 100)],
    )
    out, report = simplify(
        network, SimplifyParams(detection=DetectionParams(threshold=4.5))
    )
    assert len(out.edges) == 3
    statuses = sorted(e.status for e in out.edges.values())
    assert statuses == ["extended", "original", "original"]
    extended = next(e for e in out.edges.values() if e.status == "extended")
    tips = {tuple(extended.coords[0]), tuple(extended.coords[-1])}
    assert tips == {(200.0, 100.0), (200.0, 0.0)}
    junction = out.nodes[extended.end_node if tuple(extended.coords[-1]) == (200.0, 0.0) else extended.start_node]
    assert junction.degree == 3
    assert out.total_length == 500.0
    first = report.loops[0]
    assert first.removed_edges == 2 and first.added_edges == 1
    assert report.loops[-1].artifacts == 0


def test_adjacent_slivers_with_dead_shared_wall_merge():
    # three stacked rails: the middle wall is shared by both slivers and
    # carries no through stroke, so the pair merges and only the bottom
    # rail (on the through street) survives
    network = net(
        [(-200, 0), (0, 0)],
        [(200, 0), (400, 0)],
        [(0, 0), (200, 0)],
        [(0, 0), (20, 6), (180, 6), (200, 0)],
        [(0, 0), (20, 12), (180, 12), (200, 0)],
    )
    faces = polygonize(network)
    assert len(faces) == 2
    strokes = detect_strokes(network)
    lookup = stroke_of_edge(strokes)
    ces = {f.id: classify_ces(f, network, strokes, lookup) for f in faces}
    edit = simplify_pair(faces, ces, network, strokes, lookup)
    assert edit.removed_edge_ids == {3, 4}
    assert edit.added_edges == []
    out = apply_edit(network, edit)
    assert sorted(out.edges) == [0, 1, 2]


def test_merge_in_keeps_first_move_and_warns():
    first = Edit(moved_nodes={5: (0.0, 0.0)}, removed_edge_ids={1})
    second = Edit(moved_nodes={5: (1.0, 1.0), 6: (2.0, 2.0)}, removed_edge_ids={2})
    first.merge_in(second)
    assert first.moved_nodes == {5: (0.0, 0.0), 6: (2.0, 2.0)}
    assert first.removed_edge_ids == {1, 2}
    assert any("moved by two artifact groups" in w for w in first.warnings)


def test_apply_edit_mechanics():
    network = net(
        [(0, 0), (100, 0)],
        [(100, 0), (200, 0)],
        [(100, 0), (100, 50)],
    )
    node = network.edges[2].end_node  # the (100, 50) tip
    edit = Edit(
        removed_edge_ids={1},
        moved_nodes={node: (100.0, 80.0)},
        added_edges=[
            AddedEdge(
                coords=np.array([[100.0, 80.0], [100.0, 80.0], [300.0, 80.0]]),
                status="new",
            ),
            AddedEdge(coords=np.array([[7.0, 7.0], [7.0, 7.0]]), status="new"),
        ],
    )
    out = apply_edit(network, edit)
    assert sorted(out.edges) == [0, 2, 3]
    assert np.array_equal(out.edges[2].coords, [[100.0, 0.0], [100.0, 80.0]])
    assert out.edges[2].status == "extended"  # terminal rewritten
    assert np.array_equal(out.edges[3].coords, [[100.0, 80.0], [300.0, 80.0]])
    assert out.edges[3].status == "new"
    assert out.edges[0].status == "original"


def test_apply_noop_returns_same_network():
    network = net([(0, 0), (100, 0)])
    assert apply_edit(network, Edit()) is network
