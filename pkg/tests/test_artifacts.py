import math

import numpy as np
import pytest
from shapely.geometry import box

from streetmorph import (
    DetectionParams,
    ThresholdError,
    derive_threshold,
    detect_artifacts,
    face_artifact_index,
)
from streetmorph.faces import FacePolygon


def rect_face(fid: int, x0: float, y0: float, w: float, h: float) -> FacePolygon:
    ring = np.array([(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)])
    return FacePolygon(
        id=fid, ring=ring, area=w * h, perimeter=2 * (w + h), boundary_edges=[]
    )


def expected_index(area: float, perimeter: float) -> float:
    return math.log10(area * 4.0 * math.pi * area / perimeter**2)


@pytest.mark.parametrize(
    "area,perimeter",
    [
        (math.pi * 100.0, 20.0 * math.pi),  # circle, r = 10
        (1.0, 4.0),  # unit square
        (5000.0, 1020.0),  # 500 x 10 sliver
        (250000.0, 2000.0),  # 500 x 500 block
    ],
)
def test_face_index_formula(area, perimeter):
    assert face_artifact_index(area, perimeter) == pytest.approx(
        expected_index(area, perimeter)
    )


def test_face_index_reference_values():
    # a perfect circle has isoperimetric quotient 1
    assert face_artifact_index(math.pi * 100.0, 20.0 * math.pi) == pytest.approx(
        math.log10(math.pi * 100.0)
    )
    assert face_artifact_index(1.0, 4.0) == pytest.approx(-0.1049, abs=1e-3)
    assert face_artifact_index(5000.0, 1020.0) == pytest.approx(2.480, abs=1e-3)
    assert face_artifact_index(250000.0, 2000.0) == pytest.approx(5.293, abs=1e-3)
    # regular 32-gon with circumradius 15 (a roundabout-sized ring)
    n, r = 32, 15.0
    area = 0.5 * n * r * r * math.sin(2 * math.pi / n)
    perimeter = 2 * n * r * math.sin(math.pi / n)
    assert face_artifact_index(area, perimeter) == pytest.approx(2.845, abs=1e-3)
    # slivers score far below blocks of the same extent
    assert face_artifact_index(5000.0, 1020.0) < face_artifact_index(250000.0, 2000.0) - 2


def test_face_index_degenerate():
    assert face_artifact_index(0.0, 10.0) == float("-inf")
    assert face_artifact_index(10.0, 0.0) == float("-inf")
    assert face_artifact_index(-5.0, 10.0) == float("-inf")


def test_derive_threshold_separates_two_modes():
    rng = np.random.default_rng(3)
    lo = rng.normal(1.5, 0.25, size=200)
    hi = rng.normal(5.2, 0.35, size=400)
    threshold = derive_threshold(np.concatenate([lo, hi]))
    assert lo.max() < threshold < hi.min()


def test_derive_threshold_needs_enough_faces():
    with pytest.raises(ThresholdError, match="at least"):
        derive_threshold([1.0, 2.0, 3.0])


def test_derive_threshold_rejects_constant_values():
    with pytest.raises(ThresholdError, match="identical"):
        derive_threshold([2.0] * 50)


def test_derive_threshold_rejects_unimodal():
    rng = np.random.default_rng(11)
    with pytest.raises(ThresholdError, match="unimodal"):
        derive_threshold(rng.normal(3.0, 0.5, size=500))


def test_derive_threshold_ignores_non_finite():
    rng = np.random.default_rng(5)
    values = np.concatenate([rng.normal(1.0, 0.2, 50), rng.normal(4.0, 0.2, 50)])
    with_inf = np.concatenate([values, [float("-inf")]])
    assert derive_threshold(with_inf) == derive_threshold(values)


def make_detection_fixture():
    sliver = rect_face(0, 0, 0, 100, 2)
    block_a = rect_face(1, 0, 2, 100, 100)
    block_b = rect_face(2, 0, 102, 100, 100)
    far = rect_face(3, 500, 0, 100, 100)
    sliver.neighbors = {1}
    block_a.neighbors = {0, 2}
    block_b.neighbors = {1}
    return [sliver, block_a, block_b, far]


def test_detect_flags_strictly_below_threshold():
    faces = make_detection_fixture()
    result = detect_artifacts(faces, DetectionParams(threshold=2.0))
    assert result.flagged == {0}
    assert not result.threshold_derived
    assert result.threshold == 2.0
    assert [f.id for f in result.artifacts] == [0]
    # a face exactly at the threshold is not an artifact
    at = result.index[0]
    exact = detect_artifacts(faces, DetectionParams(threshold=at))
    assert 0 not in exact.flagged


def test_detect_grows_into_similar_neighbors_transitively():
    faces = make_detection_fixture()
    # blocks index ~3.895; margin 3.0 + 0.3*3.0 = 3.9 covers them
    result = detect_artifacts(faces, DetectionParams(threshold=3.0))
    assert result.flagged == {0, 1, 2}
    assert 3 not in result.flagged  # similar but not adjacent to any artifact
    # tighter margin stops the growth entirely
    tight = detect_artifacts(faces, DetectionParams(threshold=3.0, neighbor_similarity=0.0))
    assert tight.flagged == {0}


def test_exclusion_mask_wins_over_flagging():
    faces = make_detection_fixture()
    mask = [box(-10, -10, 110, 1.5)]  # covers the sliver only
    result = detect_artifacts(faces, DetectionParams(threshold=3.0, exclusion_mask=mask))
    assert 0 in result.excluded
    assert 0 not in result.flagged
    # neighbors flagged through the masked face stay flagged; only the
    # masked face itself is withdrawn
    assert result.flagged == {1, 2}


def test_detect_derives_threshold_when_not_given():
    faces = [rect_face(i, i * 200.0, 0, 100, 2) for i in range(20)]
    faces += [rect_face(20 + i, i * 200.0, 200, 100, 100) for i in range(20)]
    result = detect_artifacts(faces)
    assert result.threshold_derived
    assert result.flagged == set(range(20))
