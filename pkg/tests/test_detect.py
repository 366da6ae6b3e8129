import numpy as np

from ethica_ar.cards import ALL_CARDS, CardId
from ethica_ar.vision import (
    CANONICAL_CORNERS,
    DetectionParams,
    apply_homography,
    detect,
    estimate_homography,
    placement_homography,
    render_synthetic_frame,
    white_background,
)


def test_blank_frame_detects_nothing(spec):
    assert detect(white_background(320, 240), spec) == []


def test_mild_tilt_high_confidence(spec):
    h = placement_homography((320, 240), 280.0, roll_deg=8.0, tilt_deg=12.0)
    sf = render_synthetic_frame(spec, CardId.SAD, h)
    dets = detect(sf.image, spec)
    assert len(dets) == 1
    assert dets[0].card is CardId.SAD
    assert dets[0].confidence >= 0.99


def test_two_cards_side_by_side(spec):
    bg = white_background(900, 480)
    first = render_synthetic_frame(
        spec, CardId.HAPPY, placement_homography((230, 240), 200.0), background=bg
    )
    both = render_synthetic_frame(
        spec, CardId.ANGRY, placement_homography((660, 240), 200.0), background=first.image
    )
    dets = detect(both.image, spec)
    assert sorted(d.card for d in dets) == [CardId.HAPPY, CardId.ANGRY]


def test_detect_is_deterministic(spec):
    h = placement_homography((300, 260), 240.0, roll_deg=33.0, tilt_deg=28.0, tilt_axis_deg=45.0)
    sf = render_synthetic_frame(spec, CardId.SURPRISED, h, noise_sigma=6.0, seed=11)
    first = detect(sf.image, spec)
    second = detect(sf.image.copy(), spec)
    assert first == second
    assert len(first) == 1


def test_every_card_roundtrips(spec):
    for card in ALL_CARDS:
        h = placement_homography((320, 240), 260.0, roll_deg=5.0 * card)
        sf = render_synthetic_frame(spec, card, h)
        dets = detect(sf.image, spec)
        assert [d.card for d in dets] == [card]


def test_physical_rotation_reported(spec):
    h = placement_homography((320, 240), 260.0)
    sf = render_synthetic_frame(spec, CardId.HAPPY, h)
    rotated = np.ascontiguousarray(np.rot90(sf.image, k=-1))
    dets = detect(rotated, spec)
    assert len(dets) == 1
    assert dets[0].card is CardId.HAPPY
    assert dets[0].rotation == 1


def test_homography_residual_small_for_detections(spec):
    h = placement_homography((320, 250), 220.0, roll_deg=20.0, tilt_deg=30.0)
    sf = render_synthetic_frame(spec, CardId.ANGRY, h)
    (det,) = detect(sf.image, spec)
    fitted = estimate_homography(CANONICAL_CORNERS, det.quad.corners)
    reproj = apply_homography(fitted, np.asarray(CANONICAL_CORNERS))
    assert np.abs(reproj - det.quad.as_array()).max() < 1.5


def test_confidence_drops_with_payload_damage(spec):
    h = placement_homography((320, 240), 300.0)
    sf = render_synthetic_frame(spec, CardId.SAD, h)
    clean = detect(sf.image, spec)[0]
    assert clean.confidence == 1.0

    # paint one payload module the wrong colour (grid row 3, col 1)
    damaged = sf.image.copy()
    corners = apply_homography(h, np.array([[1 / 6, 3 / 6], [2 / 6, 3 / 6],
                                            [2 / 6, 4 / 6], [1 / 6, 4 / 6]]))
    x0, y0 = corners.min(axis=0).astype(int) + 2
    x1, y1 = corners.max(axis=0).astype(int) - 2
    block = damaged[y0:y1, x0:x1]
    damaged[y0:y1, x0:x1] = 0 if block.mean() > 127 else 255
    dets = detect(damaged, spec)
    assert len(dets) == 1
    assert dets[0].card is CardId.SAD
    assert dets[0].confidence < clean.confidence


def test_higher_hamming_radius_param_accepted(spec):
    h = placement_homography((320, 240), 280.0)
    sf = render_synthetic_frame(spec, CardId.HAPPY, h)
    params = DetectionParams(hamming_radius=0)
    dets = detect(sf.image, spec, params)
    assert [d.card for d in dets] == [CardId.HAPPY]
