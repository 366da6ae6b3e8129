"""Fiducial flashcard vision: marker generation and frame detection."""

from .backend import available_backends, backend_name, use_backend
from .dictionary import (
    MarkerSpec,
    best_match,
    build_dictionary,
    decode_payload,
    default_marker_spec,
    hamming,
    rotate_payload_cw,
    rotations,
)
from .geometry import (
    CANONICAL_CORNERS,
    Quad,
    apply_homography,
    canonicalize_quad,
    estimate_homography,
)
from .imageio import decode_image_bytes, load_png, save_png
from .params import DetectionParams
from .pipeline import (
    Detection,
    detect,
    find_quads,
    otsu_threshold,
    sample_grid,
    threshold_adaptive,
)
from .render import module_grid, render_marker
from .synthetic import (
    SyntheticFrame,
    placement_homography,
    random_admissible_pose,
    render_synthetic_frame,
    white_background,
)

__all__ = [
    "CANONICAL_CORNERS",
    "Detection",
    "DetectionParams",
    "MarkerSpec",
    "Quad",
    "SyntheticFrame",
    "apply_homography",
    "available_backends",
    "backend_name",
    "best_match",
    "build_dictionary",
    "canonicalize_quad",
    "decode_image_bytes",
    "decode_payload",
    "default_marker_spec",
    "detect",
    "estimate_homography",
    "find_quads",
    "hamming",
    "load_png",
    "module_grid",
    "otsu_threshold",
    "placement_homography",
    "random_admissible_pose",
    "render_marker",
    "render_synthetic_frame",
    "rotate_payload_cw",
    "rotations",
    "sample_grid",
    "save_png",
    "threshold_adaptive",
    "use_backend",
    "white_background",
]
