import math

import numpy as np
import pytest

from streetmorph.geometry import (
    as_coords,
    dedupe_consecutive,
    densify,
    interior_angle_deg,
    point_segment_distance,
    polyline_length,
    quantize,
    ring_centroid,
    ring_signed_area,
    segment_lengths,
)


def test_as_coords_coerces_and_validates():
    arr = as_coords([(0, 0), (1, 2)])
    assert arr.dtype == np.float64
    assert arr.shape == (2, 2)
    with pytest.raises(ValueError):
        as_coords([1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        as_coords([[(0, 0, 0)], [(1, 1, 1)]])


def test_dedupe_consecutive_exact_only():
    coords = np.array([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (2.0, 0.0)])
    out = dedupe_consecutive(coords)
    assert out.tolist() == [[0, 0], [1, 0], [2, 0]]
    # nearly equal vertices are kept
    near = np.array([(0.0, 0.0), (1e-12, 0.0)])
    assert len(dedupe_consecutive(near)) == 2


def test_polyline_and_segment_lengths():
    coords = np.array([(0.0, 0.0), (3.0, 0.0), (3.0, 4.0)])
    assert polyline_length(coords) == 7.0
    assert segment_lengths(coords).tolist() == [3.0, 4.0]
    assert polyline_length(coords[:1]) == 0.0


def test_ring_signed_area_orientation():
    square = np.array([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    assert ring_signed_area(square) == 1.0
    assert ring_signed_area(square[::-1]) == -1.0


def test_ring_centroid():
    square = np.array([(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])
    assert ring_centroid(square) == (1.0, 1.0)
    # degenerate ring falls back to the vertex mean
    line = np.array([(0.0, 0.0), (4.0, 0.0)])
    assert ring_centroid(line) == (2.0, 0.0)


def test_point_segment_distance():
    d, t = point_segment_distance((1.0, 1.0), (0.0, 0.0), (2.0, 0.0))
    assert d == 1.0 and t == 0.5
    d, t = point_segment_distance((5.0, 0.0), (0.0, 0.0), (2.0, 0.0))
    assert d == 3.0 and t == 1.0
    # zero-length segment
    d, t = point_segment_distance((3.0, 4.0), (0.0, 0.0), (0.0, 0.0))
    assert d == 5.0 and t == 0.0


def test_interior_angle_deg():
    assert interior_angle_deg((1.0, 0.0), (-1.0, 0.0)) == 180.0
    assert interior_angle_deg((1.0, 0.0), (0.0, 1.0)) == 90.0
    assert interior_angle_deg((1.0, 0.0), (1.0, 0.0)) == 0.0
    assert interior_angle_deg((0.0, 0.0), (1.0, 0.0)) == 0.0
    assert math.isclose(interior_angle_deg((1.0, 0.0), (-1.0, 1.0)), 135.0)


def test_densify_keeps_originals_and_spacing():
    coords = np.array([(0.0, 0.0), (10.0, 0.0), (10.0, 5.0)])
    out = densify(coords, 3.0)
    for p in coords:
        assert any(np.array_equal(p, q) for q in out)
    gaps = segment_lengths(out)
    assert np.all(gaps <= 3.0 + 1e-12)
    assert math.isclose(polyline_length(out), 15.0)


def test_densify_short_input_passthrough():
    one = np.array([(1.0, 2.0)])
    assert densify(one, 1.0) is one


def test_quantize_is_idempotent():
    rng = np.random.default_rng(7)
    coords = rng.uniform(-1000, 1000, size=(50, 2))
    q1 = quantize(coords, 1e-6)
    q2 = quantize(q1, 1e-6)
    assert np.array_equal(q1, q2)
    # non-positive epsilon is a no-op
    assert np.array_equal(quantize(coords, 0.0), coords)
