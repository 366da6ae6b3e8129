"""Synthetic camera frames with known ground truth.

Markers are warped into a background through an arbitrary homography and
optionally degraded with seeded Gaussian noise, so detection quality can be
measured against exact corner positions without any captured footage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..cards import CardId
from ..errors import OutOfFrame
from .backend import kernels
from .dictionary import GRID_MODULES, MarkerSpec
from .geometry import Quad, apply_homography, canonicalize_quad, estimate_homography
from .render import render_marker

DEFAULT_FRAME_SIZE = (640, 480)


@dataclass(frozen=True)
class SyntheticFrame:
    """A generated frame plus the ground truth available to tests."""

    image: np.ndarray
    quad: Quad  # true corners of the black marker square
    card: CardId
    homography: np.ndarray


def white_background(width: int = 640, height: int = 480, value: int = 255) -> np.ndarray:
    return np.full((height, width), value, dtype=np.uint8)


def _marker_footprint_corners(spec: MarkerSpec) -> np.ndarray:
    """Quiet-zone outer corners in canonical-square coordinates."""
    e = spec.quiet_zone / GRID_MODULES
    return np.array(
        [[-e, -e], [1.0 + e, -e], [1.0 + e, 1.0 + e], [-e, 1.0 + e]], dtype=np.float64
    )


def render_synthetic_frame(
    spec: MarkerSpec,
    card: CardId,
    h: np.ndarray,
    noise_sigma: float = 0.0,
    background: np.ndarray | None = None,
    seed: int = 0,
) -> SyntheticFrame:
    """Warp a rendered marker into a background through homography `h`.

    `h` maps the canonical marker square (the black border outline as the
    unit square) to frame coordinates. The whole marker, quiet zone
    included, must land inside the frame, else OutOfFrame. Gaussian noise of
    the given sigma (seeded, clamped to [0, 255]) is added to the final
    frame when sigma > 0.
    """
    frame = background.copy() if background is not None else white_background(*DEFAULT_FRAME_SIZE)
    if frame.ndim != 2 or frame.dtype != np.uint8:
        raise ValueError("background must be a 2-D uint8 image")
    frame = np.ascontiguousarray(frame)
    height, width = frame.shape
    h = np.asarray(h, dtype=np.float64)

    footprint = apply_homography(h, _marker_footprint_corners(spec))
    if (
        (footprint[:, 0] < 0).any()
        or (footprint[:, 0] > width - 1).any()
        or (footprint[:, 1] < 0).any()
        or (footprint[:, 1] > height - 1).any()
    ):
        raise OutOfFrame("marker placement exceeds the frame bounds")

    marker = render_marker(spec, card)
    # frame coords -> marker image coords: canonical [0,1] spans the black
    # square, whose continuous edges sit half a pixel outside the first/last
    # border pixel centers
    m = float(spec.module_size_px)
    scale = GRID_MODULES * m
    shift = spec.quiet_zone * m - 0.5
    canon_to_marker = np.array(
        [[scale, 0.0, shift], [0.0, scale, shift], [0.0, 0.0, 1.0]]
    )
    frame_to_marker = canon_to_marker @ np.linalg.inv(h)

    x_lo = max(int(math.floor(footprint[:, 0].min())), 0)
    x_hi = min(int(math.ceil(footprint[:, 0].max())), width - 1)
    y_lo = max(int(math.floor(footprint[:, 1].min())), 0)
    y_hi = min(int(math.ceil(footprint[:, 1].max())), height - 1)
    kernels().warp_into(
        frame, marker, np.ascontiguousarray(frame_to_marker), x_lo, y_lo, x_hi, y_hi
    )

    if noise_sigma > 0:
        rng = np.random.default_rng(seed)
        noisy = frame.astype(np.float64) + rng.normal(0.0, noise_sigma, frame.shape)
        frame = np.clip(np.rint(noisy), 0, 255).astype(np.uint8)

    corners = apply_homography(h, np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))
    return SyntheticFrame(
        image=frame, quad=canonicalize_quad(corners), card=card, homography=h
    )


def placement_homography(
    center: tuple[float, float],
    width_px: float,
    roll_deg: float = 0.0,
    tilt_deg: float = 0.0,
    tilt_axis_deg: float = 0.0,
    focal_px: float = 800.0,
) -> np.ndarray:
    """Homography placing the marker square in a simulated pinhole view.

    The square is spun in-plane by `roll_deg`, tilted out of plane by
    `tilt_deg` about an in-plane axis at `tilt_axis_deg`, pushed back so its
    frontal width is `width_px`, and centred at `center`.
    """
    roll = math.radians(roll_deg)
    tilt = math.radians(tilt_deg)
    axis = math.radians(tilt_axis_deg)

    rz = np.array(
        [
            [math.cos(roll), -math.sin(roll), 0.0],
            [math.sin(roll), math.cos(roll), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    ra = np.array(
        [
            [math.cos(axis), -math.sin(axis), 0.0],
            [math.sin(axis), math.cos(axis), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    rx = np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, math.cos(tilt), -math.sin(tilt)],
            [0.0, math.sin(tilt), math.cos(tilt)],
        ]
    )
    rotation = ra @ rx @ ra.T @ rz

    distance = focal_px / width_px  # unit square at this depth spans width_px
    k = np.array([[focal_px, 0.0, center[0]], [0.0, focal_px, center[1]], [0.0, 0.0, 1.0]])
    # plane point (u, v) -> camera ray; subtract 0.5 to rotate about the square center
    r1 = rotation[:, 0]
    r2 = rotation[:, 1]
    t = np.array([0.0, 0.0, distance]) - 0.5 * r1 - 0.5 * r2
    h = k @ np.column_stack([r1, r2, t])
    return h / h[2, 2]


def random_admissible_pose(
    rng: np.random.Generator,
    spec: MarkerSpec,
    frame_size: tuple[int, int] = DEFAULT_FRAME_SIZE,
    min_width_frac: float = 0.2,
    max_width_frac: float = 0.8,
    max_tilt_deg: float = 45.0,
    max_attempts: int = 200,
) -> np.ndarray:
    """Sample a homography with the marker fully in frame, tilt at most
    `max_tilt_deg`, and frontal width within the given fraction band."""
    width, height = frame_size
    for _ in range(max_attempts):
        width_frac = rng.uniform(min_width_frac, max_width_frac)
        width_px = width_frac * width
        roll = rng.uniform(0.0, 360.0)
        tilt = rng.uniform(0.0, max_tilt_deg)
        axis = rng.uniform(0.0, 360.0)
        margin = width_px * 0.75
        if 2 * margin >= width or 2 * margin >= height:
            cx, cy = width / 2.0, height / 2.0
        else:
            cx = rng.uniform(margin, width - margin)
            cy = rng.uniform(margin, height - margin)
        h = placement_homography((cx, cy), width_px, roll, tilt, axis)
        footprint = apply_homography(h, _marker_footprint_corners(spec))
        if (
            (footprint[:, 0] >= 0).all()
            and (footprint[:, 0] <= width - 1).all()
            and (footprint[:, 1] >= 0).all()
            and (footprint[:, 1] <= height - 1).all()
        ):
            return h
    raise RuntimeError("could not sample an admissible marker pose")
