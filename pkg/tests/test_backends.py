"""Cross-backend equivalence.

The compiled kernels must be bit-identical to the NumPy fallback; these
tests compare both on random inputs. They are skipped entirely when the
extension is not built.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ethica_ar.cards import CardId
from ethica_ar.vision import (
    available_backends,
    detect,
    placement_homography,
    render_synthetic_frame,
    use_backend,
)
from ethica_ar.vision import _kernels_py as kpy

pytestmark = pytest.mark.skipif(
    "compiled" not in available_backends(), reason="compiled kernels not built"
)


def _compiled():
    from ethica_ar.vision import _kernels_cy

    return _kernels_cy


@st.composite
def small_images(draw):
    w = draw(st.integers(5, 40))
    h = draw(st.integers(5, 40))
    data = draw(
        st.lists(st.integers(0, 255), min_size=w * h, max_size=w * h)
    )
    return np.array(data, dtype=np.uint8).reshape(h, w)


@given(small_images(), st.integers(1, 7), st.floats(-20, 20))
@settings(max_examples=60, deadline=None)
def test_adaptive_threshold_equivalent(img, half, offset):
    window = 2 * half + 1
    if window > min(img.shape):
        window = min(img.shape) | 1
        if window > min(img.shape):
            window -= 2
    if window < 3:
        return
    a = _compiled().adaptive_threshold(img, window, float(offset))
    b = kpy.adaptive_threshold(img, window, float(offset))
    assert np.array_equal(a, b)


@given(small_images(), st.integers(0, 255))
@settings(max_examples=80, deadline=None)
def test_trace_boundaries_equivalent(img, cut):
    binary = np.where(img < cut, 0, 255).astype(np.uint8)
    a = _compiled().trace_boundaries(binary)
    b = kpy.trace_boundaries(binary)
    assert len(a) == len(b)
    for ca, cb in zip(a, b):
        assert np.array_equal(ca, cb)


@given(
    small_images(),
    st.lists(st.floats(-5, 45), min_size=1, max_size=20),
    st.lists(st.floats(-5, 45), min_size=1, max_size=20),
)
@settings(max_examples=50, deadline=None)
def test_bilinear_sample_equivalent(img, xs, ys):
    n = min(len(xs), len(ys))
    xa = np.array(xs[:n], dtype=np.float64)
    ya = np.array(ys[:n], dtype=np.float64)
    a = _compiled().bilinear_sample(img, xa, ya)
    b = kpy.bilinear_sample(img, xa, ya)
    assert np.array_equal(a, b)


def test_warp_equivalent(spec):
    rng = np.random.default_rng(0)
    for i in range(6):
        h = placement_homography(
            (rng.uniform(120, 200), rng.uniform(120, 200)),
            rng.uniform(60, 120),
            roll_deg=rng.uniform(0, 360),
            tilt_deg=rng.uniform(0, 45),
            tilt_axis_deg=rng.uniform(0, 360),
        )
        card = CardId(i % 4)
        with use_backend("compiled"):
            a = render_synthetic_frame(spec, card, h, background=np.full((320, 320), 230, np.uint8))
        with use_backend("python"):
            b = render_synthetic_frame(spec, card, h, background=np.full((320, 320), 230, np.uint8))
        assert np.array_equal(a.image, b.image)
        assert a.quad == b.quad


def test_full_detect_equivalent(spec):
    from ethica_ar.vision import random_admissible_pose

    rng = np.random.default_rng(9)
    for i in range(4):
        h = random_admissible_pose(rng, spec, frame_size=(640, 480), max_width_frac=0.5)
        sf = render_synthetic_frame(spec, CardId(i), h, noise_sigma=6.0, seed=i)
        with use_backend("compiled"):
            a = detect(sf.image, spec)
        with use_backend("python"):
            b = detect(sf.image, spec)
        assert a == b
