import numpy as np

from ethica_ar.vision import find_quads
from ethica_ar.vision.geometry import (
    canonicalize_quad,
    is_strictly_convex,
    polygon_area,
    simplify_closed_contour,
)


def blank(w=100, h=100):
    return np.full((h, w), 255, dtype=np.uint8)


def test_all_white_yields_nothing():
    assert find_quads(blank(), 400.0) == []


def test_axis_aligned_square():
    img = blank()
    img[10:50, 10:50] = 0
    quads = find_quads(img, 400.0)
    assert len(quads) == 1
    expected = ((10.0, 10.0), (49.0, 10.0), (49.0, 49.0), (10.0, 49.0))
    got = quads[0].corners
    for (gx, gy), (ex, ey) in zip(got, expected):
        assert abs(gx - ex) <= 2.0 and abs(gy - ey) <= 2.0


def test_two_disjoint_squares():
    img = blank(160, 100)
    img[10:50, 10:50] = 0
    img[40:90, 100:150] = 0
    quads = find_quads(img, 400.0)
    assert len(quads) == 2
    # discovery order is scan order: topmost first
    assert quads[0].corners[0][1] < quads[1].corners[0][1]


def test_rotated_square_found():
    img = blank(120, 120)
    yy, xx = np.mgrid[0:120, 0:120]
    # diamond |x-60| + |y-60| <= 30
    img[np.abs(xx - 60) + np.abs(yy - 60) <= 30] = 0
    quads = find_quads(img, 400.0)
    assert len(quads) == 1
    corners = np.array(quads[0].corners)
    expected = np.array([[60, 30], [90, 60], [60, 90], [30, 60]], dtype=float)
    # same four corners in some cyclic rotation
    for exp in expected:
        assert (np.abs(corners - exp).sum(axis=1) < 3.0).any()


def test_min_area_filters_small_square():
    img = blank()
    img[10:25, 10:25] = 0  # area ~196 of polygon through centers
    assert find_quads(img, 400.0) == []
    assert len(find_quads(img, 100.0)) == 1


def test_l_shape_is_not_a_quad():
    img = blank(140, 140)
    img[20:120, 20:60] = 0
    img[80:120, 20:120] = 0
    assert find_quads(img, 400.0) == []


def test_triangle_is_not_a_quad():
    img = blank(140, 140)
    yy, xx = np.mgrid[0:140, 0:140]
    img[(yy >= 20) & (yy <= 110) & (xx >= 20) & (xx - 20 <= yy - 20)] = 0
    assert find_quads(img, 400.0) == []


def test_speckle_noise_yields_no_quads():
    rng = np.random.default_rng(5)
    img = np.where(rng.random((200, 200)) < 0.15, 0, 255).astype(np.uint8)
    for quad in find_quads(img, 400.0):
        # anything that slips through must at least be a genuine convex quad
        assert is_strictly_convex(quad.as_array())
        assert quad.area() >= 400.0


def test_canonicalize_orders_clockwise_from_top_left():
    pts = np.array([[50.0, 10.0], [10.0, 10.0], [10.0, 50.0], [50.0, 50.0]])
    quad = canonicalize_quad(pts)
    assert quad.corners == ((10.0, 10.0), (50.0, 10.0), (50.0, 50.0), (10.0, 50.0))


def test_simplify_keeps_square_corners():
    # a dense square outline collapses to its 4 corners
    t = np.linspace(0, 1, 25)[:-1]
    top = np.stack([t * 40, np.zeros_like(t)], axis=1)
    right = np.stack([np.full_like(t, 40), t * 40], axis=1)
    bottom = np.stack([40 - t * 40, np.full_like(t, 40)], axis=1)
    left = np.stack([np.zeros_like(t), 40 - t * 40], axis=1)
    contour = np.vstack([top, right, bottom, left])
    out = simplify_closed_contour(contour, 2.0)
    assert len(out) == 4
    assert polygon_area(out) == 1600.0
