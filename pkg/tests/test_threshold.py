import numpy as np
import pytest

from ethica_ar.cards import CardId
from ethica_ar.errors import BadWindow
from ethica_ar.vision import render_marker, threshold_adaptive


def test_uniform_image_stays_white():
    img = np.full((20, 20), 128, dtype=np.uint8)
    for window in (3, 9, 19):
        out = threshold_adaptive(img, window, 10.0)
        assert (out == 255).all()


def test_uniform_image_zero_offset_stays_white():
    img = np.full((9, 9), 77, dtype=np.uint8)
    # v < mean - 0 is strict, so a perfectly uniform image never darkens
    assert (threshold_adaptive(img, 3, 0.0) == 255).all()


def test_single_dark_pixel_hand_computed():
    """3x3 all 255 with one 0 at the corner, window 3, offset 0.

    Hand evaluation: the corner pixel's clamped window holds {0, 255, 255,
    255}, mean 191.25, and 0 < 191.25 so it stays dark. Every other pixel is
    255, never strictly below its window mean, so it stays white - including
    the three pixels whose windows exclude the corner entirely.
    """
    img = np.full((3, 3), 255, dtype=np.uint8)
    img[0, 0] = 0
    out = threshold_adaptive(img, 3, 0.0)
    expected = np.full((3, 3), 255, dtype=np.uint8)
    expected[0, 0] = 0
    assert np.array_equal(out, expected)


def test_marker_payload_modules_survive(spec):
    """Dark payload modules remain connected dark regions after thresholding."""
    img = render_marker(spec, CardId.SURPRISED)
    out = threshold_adaptive(img, 31, 7.0)
    m = spec.module_size_px
    qz = spec.quiet_zone
    code = spec.codeword(CardId.SURPRISED)
    for r in range(4):
        for c in range(4):
            y = (qz + 1 + r) * m + m // 2
            x = (qz + 1 + c) * m + m // 2
            if (code >> (r * 4 + c)) & 1:
                # module center and its 4-neighbourhood all dark: connected
                assert out[y, x] == 0
                assert out[y - 1, x] == 0 and out[y + 1, x] == 0
                assert out[y, x - 1] == 0 and out[y, x + 1] == 0
            else:
                assert out[y, x] == 255


def test_output_is_strictly_binary(spec):
    img = render_marker(spec, CardId.HAPPY)
    out = threshold_adaptive(img, 15, 7.0)
    assert set(np.unique(out)) <= {0, 255}


@pytest.mark.parametrize("window", [2, 1, 0, -3, 4, 100])
def test_bad_window_rejected(window):
    img = np.full((40, 40), 200, dtype=np.uint8)
    if window == 100:  # larger than the image
        with pytest.raises(BadWindow):
            threshold_adaptive(img, window, 5.0)
    elif window % 2 == 0 or window < 3:
        with pytest.raises(BadWindow):
            threshold_adaptive(img, window, 5.0)


def test_gradient_background_splits_on_local_mean():
    # a dark stripe on a bright ramp survives even though a global
    # threshold could not separate both ends of the ramp
    ramp = np.tile(np.linspace(60, 250, 64).astype(np.uint8), (64, 1))
    ramp[30:34, :] = (ramp[30:34, :] * 0.3).astype(np.uint8)
    out = threshold_adaptive(ramp, 15, 7.0)
    assert (out[31:33, 5:-5] == 0).all()
    assert (out[:25, 5:-5] == 255).all()
