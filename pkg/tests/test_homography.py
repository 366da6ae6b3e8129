import numpy as np
import pytest

from ethica_ar.errors import DegenerateConfiguration
from ethica_ar.vision import apply_homography, estimate_homography

UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def test_identity():
    h = estimate_homography(UNIT_SQUARE, UNIT_SQUARE)
    assert np.allclose(h, np.eye(3), atol=1e-12)


def test_pure_translation():
    shifted = [(x + 5.0, y + 7.0) for x, y in UNIT_SQUARE]
    h = estimate_homography(UNIT_SQUARE, shifted)
    expected = np.array([[1.0, 0.0, 5.0], [0.0, 1.0, 7.0], [0.0, 0.0, 1.0]])
    assert np.allclose(h, expected, atol=1e-9)


def test_normalized_and_invertible():
    rng = np.random.default_rng(0)
    src = rng.uniform(0, 100, (4, 2))
    dst = rng.uniform(0, 100, (4, 2))
    h = estimate_homography(src, dst)
    assert h[2, 2] == 1.0
    assert abs(np.linalg.det(h)) > 0


def _random_general_position(rng, scale=640.0):
    while True:
        pts = rng.uniform(0, scale, (4, 2))
        # enforce general position: every triple spans real area
        ok = True
        for i in range(4):
            others = [j for j in range(4) if j != i]
            a, b, c = pts[others[0]], pts[others[1]], pts[others[2]]
            v1, v2 = b - a, c - a
            area = abs(v1[0] * v2[1] - v1[1] * v2[0])
            if area < scale * scale * 1e-3:
                ok = False
                break
        if ok:
            return pts


def test_random_correspondences_reproject_exactly():
    rng = np.random.default_rng(42)
    for _ in range(200):
        src = _random_general_position(rng)
        dst = _random_general_position(rng)
        h = estimate_homography(src, dst)
        back = apply_homography(h, src)
        assert np.abs(back - dst).max() < 1e-9 * 640.0


def test_collinear_src_raises():
    src = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (5.0, 0.0)]
    with pytest.raises(DegenerateConfiguration):
        estimate_homography(src, UNIT_SQUARE)


def test_collinear_dst_raises():
    dst = [(0.0, 0.0), (3.0, 0.0), (7.0, 0.0), (1.0, 4.0)]
    with pytest.raises(DegenerateConfiguration):
        estimate_homography(UNIT_SQUARE, dst)


def test_coincident_points_raise():
    src = [(0.0, 0.0), (0.0, 0.0), (1.0, 1.0), (1.0, 0.0)]
    with pytest.raises(DegenerateConfiguration):
        estimate_homography(src, UNIT_SQUARE)
